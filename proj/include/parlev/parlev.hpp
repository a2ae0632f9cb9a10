#pragma once

#include "parlev/analytic_kernel.hpp"
#include "parlev/comparison.hpp"
#include "parlev/correlator.hpp"
#include "parlev/ensemble.hpp"
#include "parlev/errors.hpp"
#include "parlev/io.hpp"
#include "parlev/parametric.hpp"
#include "parlev/quadrature.hpp"
#include "parlev/rng.hpp"
#include "parlev/spectral.hpp"
#include "parlev/superalgebra.hpp"
#include "parlev/svg_plot.hpp"
#include "parlev/version.hpp"
