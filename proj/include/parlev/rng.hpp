#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace parlev {

/// Engine used for every draw. Its output sequence is fixed by the standard.
using Engine = std::mt19937_64;

/// Human-readable description recorded in run metadata.
inline constexpr const char* rng_description =
    "mt19937_64 per task, seeded by SplitMix64(seed, stream, index); "
    "N(0,1) via Boost.Random ziggurat normal_distribution";

/// Independent streams carved out of one run seed.
enum class Stream : std::uint64_t {
    first_matrix = 1,
    second_matrix = 2,
    bootstrap = 3,
    surrogate = 4,
};

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for task `index` of `stream`. Distinct (stream, index) pairs give
/// statistically independent engines; the map is a pure function.
inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) noexcept {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64(state);
    state = a ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL);
    std::uint64_t b = splitmix64(state);
    state = b ^ (index * 0x8cb92ba72f3d8dd7ULL);
    return splitmix64(state);
}

inline Engine make_engine(std::uint64_t seed) {
    return Engine(seed);
}

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index) {
    return Engine(derive_seed(seed, stream, index));
}

/// Standard normal deviates with a platform-independent algorithm.
class StandardNormal {
public:
    double operator()(Engine& engine) { return dist_(engine); }

private:
    boost::random::normal_distribution<double> dist_{0.0, 1.0};
};

} // namespace parlev
