#pragma once

#include "pilotopt/optimizer.hpp"
#include "pilotopt/rate.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pilotopt {

/// 10^(db/10)
double db_to_linear(double db);
double linear_to_db(double linear);

enum class SweepKind { AlphaVsEpsilon, AlphaVsBlocklength, AlphaVsSnr, AlphaVsDoppler, RateVsBlocklength };

/// Name of the swept parameter as it appears in CSV output.
const char* swept_param_name(SweepKind kind);

/// One figure axis. SNR axes are given in dB; every other axis in its
/// natural unit. For AlphaVsDoppler all models must be continuous; the
/// swept value replaces their Doppler frequency.
struct SweepSpec {
    SweepKind kind = SweepKind::AlphaVsEpsilon;
    LinkConfig fixed;
    std::vector<double> swept_values;
    std::vector<FadingModel> models;
};

/// Throws std::invalid_argument when `spec` is malformed.
void validate(const SweepSpec& spec);

/// The config a sweep evaluates for one (value, model) pair.
LinkConfig config_for(const SweepSpec& spec, double swept_value, const FadingModel& model);

struct SweepRow {
    double swept_value = 0.0;
    LinkConfig config;
    double alpha_finite = 0.0;
    double alpha_ergodic = 0.0;
    int n_t_finite = 1;
    double rate_finite_at_finite = 0.0;
    double rate_finite_at_ergodic = 0.0;
    double gain = 0.0;
    bool gain_flagged = false;
    bool clamped = false;  ///< finite-blocklength objective is zero everywhere
};

SweepRow evaluate_row(const LinkConfig& cfg, double swept_value);

/// Rows ordered by (model, swept value); computed in parallel.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct NamedSweep {
    std::string name;
    std::string description;
    SweepSpec spec;
};

/// fig1 ... fig8 presets.
std::vector<NamedSweep> built_in_figures();
std::optional<NamedSweep> find_figure(const std::string& name);

/// Evenly log-spaced values from lo to hi with `per_decade` points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);
std::vector<double> linear_grid(double lo, double hi, int points);
std::vector<double> integer_grid(int lo, int hi);

/// Randomized configs for the optimizer-vs-grid suite: n in [2, 200],
/// SNR in [0, 30] dB, epsilon log-uniform in [1e-12, 0.1], half block fading
/// and half continuous with f_D in [0, 0.05].
std::vector<LinkConfig> random_config_suite(int count, std::uint64_t seed);

/// Seed of the 200-config suite used by the fixtures and the acceptance run.
inline constexpr std::uint64_t kRandomSuiteSeed = 2024;
inline constexpr int kRandomSuiteSize = 200;

namespace serial {
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
}  // namespace serial

}  // namespace pilotopt
