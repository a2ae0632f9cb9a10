#pragma once

// Result files. Every CSV starts with a schema comment line
// ("# parlev-<kind> v<N>") followed by the column header; readers reject
// anything else. Each CSV has a JSON sidecar with the same stem.

#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "parlev/comparison.hpp"
#include "parlev/correlator.hpp"
#include "parlev/errors.hpp"
#include "parlev/rng.hpp"
#include "parlev/version.hpp"

namespace parlev::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline constexpr const char* correlator_schema = "# parlev-correlator v1";
inline constexpr const char* correlator_columns = "epsilon_over_d,gamma_over_d,re_k,im_k,std_err,samples";
inline constexpr const char* analytic_schema = "# parlev-analytic v1";
inline constexpr const char* analytic_columns = "r,gamma,re_k,im_k,quad_error";
inline constexpr const char* spectra_schema = "# parlev-spectra v1";

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never observe a partial file.
inline void atomic_write(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

inline std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline fs::path sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".json");
    return p;
}

inline std::string hostname() {
    char buf[256] = {0};
    if (::gethostname(buf, sizeof(buf) - 1) != 0) return "unknown";
    return buf;
}

inline std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    ::gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

/// {config, seed, version, timestamp, host, rng}.
inline json metadata(const json& config, std::uint64_t seed) {
    return json{{"config", config},
                {"seed", seed},
                {"version", parlev::version},
                {"timestamp", utc_timestamp()},
                {"host", hostname()},
                {"rng", rng_description}};
}

inline std::string format_double(double x) {
    std::ostringstream ss;
    ss << std::setprecision(17) << x;
    return ss.str();
}

inline json to_json(const EnsembleSpec& s) {
    return {{"class", std::string(to_string(s.symmetry_class))}, {"n", s.n}, {"lambda", s.lambda}};
}

inline json to_json(const CorrelatorConfig& c) {
    json j{{"ensemble", to_json(c.ensemble)},
           {"epsilon_grid", c.epsilon_over_d},
           {"gamma_grid", c.gamma_over_d},
           {"eta_over_d", c.eta_over_d},
           {"window_fraction", c.window_fraction},
           {"energy_points", c.resolved_energy_points()},
           {"samples", c.samples},
           {"seed", c.seed},
           {"mode", std::string(to_string(c.mode))},
           {"midpoint", c.midpoint},
           {"offset_sign", c.offset_sign},
           {"bootstrap_resamples", c.bootstrap_resamples}};
    if (c.window) j["window"] = {c.window->first, c.window->second};
    return j;
}

/// CSV body of a correlator grid; bitwise reproducible for a given grid.
inline std::string correlator_csv(const CorrelatorGrid& g) {
    std::ostringstream os;
    os << correlator_schema << '\n' << correlator_columns << '\n';
    os << std::setprecision(17);
    for (std::size_t e = 0; e < g.epsilon_over_d.size(); ++e)
        for (std::size_t k = 0; k < g.gamma_over_d.size(); ++k) {
            const auto v = g.value(e, k);
            os << g.epsilon_over_d[e] << ',' << g.gamma_over_d[k] << ',' << v.real() << ',' << v.imag() << ','
               << g.error(e, k) << ',' << g.config.samples << '\n';
        }
    return os.str();
}

struct AnalyticPoint {
    double r = 0.0;
    double gamma = 0.0;
    std::complex<double> value{};
    double quad_error = 0.0;
};

inline std::string analytic_csv(const std::vector<AnalyticPoint>& pts) {
    std::ostringstream os;
    os << analytic_schema << '\n' << analytic_columns << '\n' << std::setprecision(17);
    for (const auto& p : pts)
        os << p.r << ',' << p.gamma << ',' << p.value.real() << ',' << p.value.imag() << ',' << p.quad_error << '\n';
    return os.str();
}

namespace detail {

inline std::vector<std::vector<double>> parse_numeric_csv(const std::string& text, const std::string& schema,
                                                          const std::string& columns, const std::string& name) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != schema)
        throw StructuralError(name + ": missing or unsupported schema line (expected '" + schema + "')");
    if (!std::getline(is, line) || line != columns)
        throw StructuralError(name + ": unexpected column header '" + line + "'");
    std::vector<std::vector<double>> rows;
    const std::size_t width = static_cast<std::size_t>(std::count(columns.begin(), columns.end(), ',')) + 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw StructuralError(name + ": malformed number '" + cell + "'");
            }
        }
        if (row.size() != width) throw StructuralError(name + ": wrong number of columns in '" + line + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Reads a correlator CSV as grid points (r = epsilon/d, sigma = std_err).
inline std::vector<GridPoint> read_correlator_points(const fs::path& path) {
    const auto rows = detail::parse_numeric_csv(read_file(path), correlator_schema, correlator_columns, path.string());
    std::vector<GridPoint> out;
    for (const auto& r : rows) out.push_back({r[0], r[1], {r[2], r[3]}, r[4]});
    return out;
}

/// Reads an analytic CSV; sigma is the quadrature error.
inline std::vector<GridPoint> read_analytic_points(const fs::path& path) {
    const auto rows = detail::parse_numeric_csv(read_file(path), analytic_schema, analytic_columns, path.string());
    std::vector<GridPoint> out;
    for (const auto& r : rows) out.push_back({r[0], r[1], {r[2], r[3]}, r[4]});
    return out;
}

/// Reads either kind, dispatching on the schema line.
inline std::vector<GridPoint> read_grid_points(const fs::path& path) {
    const std::string text = read_file(path);
    const auto first = text.substr(0, text.find('\n'));
    if (first == correlator_schema) return read_correlator_points(path);
    if (first == analytic_schema) return read_analytic_points(path);
    throw StructuralError(path.string() + ": unrecognised schema line '" + first + "'");
}

inline json read_json(const fs::path& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw StructuralError(path.string() + ": invalid JSON (" + e.what() + ")");
    }
}

} // namespace parlev::io
