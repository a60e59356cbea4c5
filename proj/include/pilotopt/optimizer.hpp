#pragma once

#include "pilotopt/rate.hpp"

#include <cstdint>

namespace pilotopt {

enum class Objective { FiniteBlocklength, Ergodic };
enum class SearchMethod { GoldenSection, GridFallback, Grid };

const char* to_string(Objective o);
const char* to_string(SearchMethod m);

struct OptimizationResult {
    double alpha_star = 0.0;
    int n_t_star = 1;             ///< integer pilot count, floor/ceil of alpha_star * n
    double rate_at_opt = 0.0;     ///< objective at alpha_star
    Objective objective = Objective::FiniteBlocklength;
    std::int64_t evaluations = 0;  ///< search calls; the integer pilot comparison is not counted
    SearchMethod method = SearchMethod::GoldenSection;
    bool clamped_region = false;  ///< objective is zero on the whole interval
};

/// Objective value at alpha (training_rate or ergodic_training_rate).
double objective_value(double alpha, const LinkConfig& cfg, Objective objective);

/// Maximizes the objective over alpha in [1/n, 1 - 1/n].
///
/// A 64-point grid first checks unimodality. If it holds, golden-section
/// search runs on the two grid cells around the best grid point. Otherwise a
/// 10^4-point grid is scanned and its best cell refined the same way
/// (method = GridFallback). An all-zero objective returns alpha = 1/n with
/// clamped_region set.
OptimizationResult optimize_alpha(const LinkConfig& cfg, Objective objective);

/// Exhaustive uniform grid over [1/n, 1 - 1/n]; ties within 1e-12 go to the
/// smallest alpha. Grid points are evaluated in parallel.
OptimizationResult grid_search_alpha(const LinkConfig& cfg, Objective objective, int grid_points);

/// Outcome of comparing the two optimizers under the finite-blocklength rate.
struct RateGain {
    double gain = 0.0;                  ///< rate_at_finite / rate_at_ergodic - 1
    bool flagged = false;               ///< denominator was zero; gain = max double
    double rate_finite_at_finite = 0.0;
    double rate_finite_at_ergodic = 0.0;
    OptimizationResult finite;
    OptimizationResult ergodic;
};

RateGain rate_gain(const LinkConfig& cfg);

namespace serial {
/// Single-threaded reference for grid_search_alpha; results must be bit-identical.
OptimizationResult grid_search_alpha(const LinkConfig& cfg, Objective objective, int grid_points);
}  // namespace serial

}  // namespace pilotopt
