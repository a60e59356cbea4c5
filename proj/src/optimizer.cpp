#include "pilotopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pilotopt {

namespace {

constexpr int kPrecheckPoints = 64;
constexpr int kFallbackPoints = 10000;
constexpr double kAlphaTol = 1e-10;
constexpr double kTieTol = 1e-12;
constexpr double kSlopeTol = 1e-12;

double grid_alpha(int i, int points, double lo, double hi) {
    if (i == points - 1) return hi;
    return lo + (hi - lo) * (static_cast<double>(i) / (points - 1));
}

// Smallest index whose value is within kTieTol of the maximum.
int tie_broken_argmax(const std::vector<double>& values) {
    const double best = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= best - kTieTol) return static_cast<int>(i);
    }
    return 0;
}

bool weakly_unimodal(const std::vector<double>& values) {
    bool descending = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        if (d < -kSlopeTol) {
            descending = true;
        } else if (d > kSlopeTol && descending) {
            return false;
        }
    }
    return true;
}

struct Evaluator {
    const LinkConfig& cfg;
    Objective objective;
    std::int64_t calls = 0;

    double operator()(double alpha) {
        ++calls;
        return objective_value(alpha, cfg, objective);
    }
};

struct Candidate {
    double alpha;
    double value;
};

// Keeps the larger value; equal values keep the smaller alpha.
void consider(Candidate& best, Candidate c) {
    if (c.value > best.value || (c.value == best.value && c.alpha < best.alpha)) best = c;
}

Candidate golden_section_max(Evaluator& f, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > kAlphaTol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    Candidate best{c, fc};
    consider(best, {d, fd});
    return best;
}

std::vector<double> scan(Evaluator& f, int points, double lo, double hi) {
    std::vector<double> values(points);
    for (int i = 0; i < points; ++i) values[i] = f(grid_alpha(i, points, lo, hi));
    return values;
}

Candidate refine_around(Evaluator& f, const std::vector<double>& values, int k, double lo, double hi) {
    const int points = static_cast<int>(values.size());
    Candidate best{grid_alpha(k, points, lo, hi), values[k]};
    const int left = std::max(k - 1, 0);
    const int right = std::min(k + 1, points - 1);
    consider(best, {grid_alpha(left, points, lo, hi), values[left]});
    consider(best, {grid_alpha(right, points, lo, hi), values[right]});
    consider(best, golden_section_max(f, grid_alpha(left, points, lo, hi), grid_alpha(right, points, lo, hi)));
    return best;
}

void fill_pilot_count(OptimizationResult& r, const LinkConfig& cfg) {
    Evaluator f{cfg, r.objective};
    const double scaled = r.alpha_star * cfg.n;
    const int lo = std::clamp(static_cast<int>(std::floor(scaled)), 1, cfg.n - 1);
    const int hi = std::clamp(static_cast<int>(std::ceil(scaled)), 1, cfg.n - 1);
    if (lo == hi) {
        r.n_t_star = lo;
        return;
    }
    const double f_lo = f(static_cast<double>(lo) / cfg.n);
    const double f_hi = f(static_cast<double>(hi) / cfg.n);
    r.n_t_star = f_hi > f_lo ? hi : lo;
}

OptimizationResult finish(const LinkConfig& cfg, Objective objective, Candidate best, SearchMethod method,
                          Evaluator& f) {
    OptimizationResult r;
    r.objective = objective;
    r.method = method;
    r.alpha_star = best.alpha;
    r.rate_at_opt = best.value;
    r.clamped_region = best.value <= 0.0;
    if (r.clamped_region) {
        r.alpha_star = cfg.min_alpha();
        r.rate_at_opt = 0.0;
    }
    r.evaluations = f.calls;
    fill_pilot_count(r, cfg);
    return r;
}

OptimizationResult pick_from_grid(const LinkConfig& cfg, Objective objective, const std::vector<double>& values,
                                  std::int64_t evaluations) {
    const int points = static_cast<int>(values.size());
    const int k = tie_broken_argmax(values);
    Evaluator f{cfg, objective, evaluations};
    const Candidate best{grid_alpha(k, points, cfg.min_alpha(), cfg.max_alpha()), values[k]};
    return finish(cfg, objective, best, SearchMethod::Grid, f);
}

void check_grid_points(int grid_points) {
    if (grid_points < 10) throw std::invalid_argument("grid_points must be at least 10");
}

}  // namespace

const char* to_string(Objective o) {
    return o == Objective::FiniteBlocklength ? "finite" : "ergodic";
}

const char* to_string(SearchMethod m) {
    switch (m) {
        case SearchMethod::GoldenSection: return "golden";
        case SearchMethod::GridFallback: return "grid-fallback";
        case SearchMethod::Grid: return "grid";
    }
    return "?";
}

double objective_value(double alpha, const LinkConfig& cfg, Objective objective) {
    return objective == Objective::FiniteBlocklength ? training_rate(alpha, cfg).bits_per_use
                                                     : ergodic_training_rate(alpha, cfg).bits_per_use;
}

OptimizationResult optimize_alpha(const LinkConfig& cfg, Objective objective) {
    cfg.validate();
    Evaluator f{cfg, objective};
    const double lo = cfg.min_alpha();
    const double hi = cfg.max_alpha();
    if (cfg.n == 2) return finish(cfg, objective, {lo, f(lo)}, SearchMethod::GoldenSection, f);

    const std::vector<double> coarse = scan(f, kPrecheckPoints, lo, hi);
    const bool all_zero = std::all_of(coarse.begin(), coarse.end(), [](double v) { return v <= 0.0; });
    if (weakly_unimodal(coarse) && !all_zero) {
        const Candidate best = refine_around(f, coarse, tie_broken_argmax(coarse), lo, hi);
        return finish(cfg, objective, best, SearchMethod::GoldenSection, f);
    }
    // multimodal, or a feasible window narrower than the coarse grid
    const std::vector<double> dense = scan(f, kFallbackPoints, lo, hi);
    const Candidate best = refine_around(f, dense, tie_broken_argmax(dense), lo, hi);
    return finish(cfg, objective, best, SearchMethod::GridFallback, f);
}

OptimizationResult grid_search_alpha(const LinkConfig& cfg, Objective objective, int grid_points) {
    cfg.validate();
    check_grid_points(grid_points);
    const double lo = cfg.min_alpha();
    const double hi = cfg.max_alpha();
    std::vector<double> values(grid_points);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid_points; ++i) {
        values[i] = objective_value(grid_alpha(i, grid_points, lo, hi), cfg, objective);
    }
    return pick_from_grid(cfg, objective, values, grid_points);
}

namespace serial {

OptimizationResult grid_search_alpha(const LinkConfig& cfg, Objective objective, int grid_points) {
    cfg.validate();
    check_grid_points(grid_points);
    const double lo = cfg.min_alpha();
    const double hi = cfg.max_alpha();
    std::vector<double> values;
    values.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        values.push_back(objective_value(grid_alpha(i, grid_points, lo, hi), cfg, objective));
    }
    return pick_from_grid(cfg, objective, values, grid_points);
}

}  // namespace serial

RateGain rate_gain(const LinkConfig& cfg) {
    RateGain out;
    out.finite = optimize_alpha(cfg, Objective::FiniteBlocklength);
    out.ergodic = optimize_alpha(cfg, Objective::Ergodic);
    out.rate_finite_at_finite = training_rate(out.finite.alpha_star, cfg).bits_per_use;
    out.rate_finite_at_ergodic = training_rate(out.ergodic.alpha_star, cfg).bits_per_use;
    if (out.rate_finite_at_ergodic <= 0.0) {
        out.flagged = true;
        out.gain = std::numeric_limits<double>::max();
    } else {
        out.gain = out.rate_finite_at_finite / out.rate_finite_at_ergodic - 1.0;
    }
    return out;
}

}  // namespace pilotopt
