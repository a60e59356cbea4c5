#include "pilotopt/sweep.hpp"

#include "pilotopt/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace pilotopt {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

const char* swept_param_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::AlphaVsEpsilon: return "epsilon";
        case SweepKind::AlphaVsBlocklength: return "n";
        case SweepKind::AlphaVsSnr: return "snr_db";
        case SweepKind::AlphaVsDoppler: return "f_d";
        case SweepKind::RateVsBlocklength: return "n";
    }
    return "?";
}

void validate(const SweepSpec& spec) {
    if (spec.swept_values.empty()) throw std::invalid_argument("sweep needs at least one value");
    if (spec.models.empty()) throw std::invalid_argument("sweep needs at least one fading model");
    for (std::size_t i = 1; i < spec.swept_values.size(); ++i) {
        if (!(spec.swept_values[i] > spec.swept_values[i - 1])) {
            throw std::invalid_argument("swept values must be strictly increasing");
        }
    }
    if (spec.kind == SweepKind::AlphaVsDoppler) {
        for (const auto& m : spec.models) {
            if (m.is_block()) throw std::invalid_argument("a Doppler sweep needs continuous fading models");
        }
    }
    for (const auto& m : spec.models) {
        for (double v : spec.swept_values) config_for(spec, v, m).validate();
    }
}

LinkConfig config_for(const SweepSpec& spec, double value, const FadingModel& model) {
    LinkConfig cfg = spec.fixed;
    cfg.model = model;
    switch (spec.kind) {
        case SweepKind::AlphaVsEpsilon:
            cfg.epsilon = value;
            break;
        case SweepKind::AlphaVsBlocklength:
        case SweepKind::RateVsBlocklength:
            if (value != std::floor(value)) throw std::invalid_argument("blocklength values must be integers");
            cfg.n = static_cast<int>(value);
            break;
        case SweepKind::AlphaVsSnr:
            cfg.snr = db_to_linear(value);
            break;
        case SweepKind::AlphaVsDoppler:
            cfg.model = FadingModel::continuous(value);
            break;
    }
    return cfg;
}

SweepRow evaluate_row(const LinkConfig& cfg, double swept_value) {
    const RateGain rg = rate_gain(cfg);
    SweepRow row;
    row.swept_value = swept_value;
    row.config = cfg;
    row.alpha_finite = rg.finite.alpha_star;
    row.alpha_ergodic = rg.ergodic.alpha_star;
    row.n_t_finite = rg.finite.n_t_star;
    row.rate_finite_at_finite = rg.rate_finite_at_finite;
    row.rate_finite_at_ergodic = rg.rate_finite_at_ergodic;
    row.gain = rg.gain;
    row.gain_flagged = rg.flagged;
    row.clamped = rg.finite.clamped_region;
    return row;
}

namespace {

std::vector<LinkConfig> expand(const SweepSpec& spec) {
    validate(spec);
    std::vector<LinkConfig> configs;
    configs.reserve(spec.models.size() * spec.swept_values.size());
    for (const auto& m : spec.models) {
        for (double v : spec.swept_values) configs.push_back(config_for(spec, v, m));
    }
    return configs;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::vector<LinkConfig> configs = expand(spec);
    const std::size_t per_model = spec.swept_values.size();
    std::vector<SweepRow> rows(configs.size());
    const std::int64_t count = static_cast<std::int64_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        rows[i] = evaluate_row(configs[i], spec.swept_values[i % per_model]);
    }
    return rows;
}

namespace serial {

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::vector<LinkConfig> configs = expand(spec);
    const std::size_t per_model = spec.swept_values.size();
    std::vector<SweepRow> rows;
    rows.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        rows.push_back(evaluate_row(configs[i], spec.swept_values[i % per_model]));
    }
    return rows;
}

}  // namespace serial

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw std::invalid_argument("bad log grid");
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    const int steps = static_cast<int>(std::lround((b - a) * per_decade));
    std::vector<double> out;
    out.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) out.push_back(std::pow(10.0, a + static_cast<double>(k) / per_decade));
    return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) throw std::invalid_argument("bad linear grid");
    std::vector<double> out;
    out.reserve(points);
    for (int k = 0; k < points; ++k) {
        out.push_back(k == points - 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / (points - 1));
    }
    return out;
}

std::vector<double> integer_grid(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("bad integer grid");
    std::vector<double> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

std::vector<NamedSweep> built_in_figures() {
    const double fd = 0.02;
    const auto cfg = [](int n, double snr_db, double eps, FadingModel m) {
        return LinkConfig{n, db_to_linear(snr_db), eps, m};
    };
    const FadingModel block = FadingModel::block();
    const FadingModel cont = FadingModel::continuous(fd);

    std::vector<NamedSweep> figs;
    figs.push_back({"fig1", "optimal pilot fraction vs epsilon, n = 30, SNR = 15 dB, block and continuous fading",
                    {SweepKind::AlphaVsEpsilon, cfg(30, 15.0, 1e-9, block), log_grid(1e-12, 1e-1, 25),
                     {block, cont}}});
    figs.push_back({"fig2", "optimal pilot fraction vs blocklength, SNR = 8 dB, epsilon = 1e-9, block fading",
                    {SweepKind::AlphaVsBlocklength, cfg(30, 8.0, 1e-9, block), integer_grid(10, 100), {block}}});
    figs.push_back({"fig3",
                    "optimal pilot fraction vs blocklength, SNR = 23 dB, epsilon = 1e-9, continuous fading f_D = 0.02",
                    {SweepKind::AlphaVsBlocklength, cfg(30, 23.0, 1e-9, cont), integer_grid(10, 100), {cont}}});
    figs.push_back({"fig4", "optimal pilot fraction vs SNR, n = 40, epsilon = 1e-9, block and continuous fading",
                    {SweepKind::AlphaVsSnr, cfg(40, 15.0, 1e-9, block), linear_grid(0.0, 30.0, 61), {block, cont}}});
    figs.push_back({"fig5", "optimal pilot fraction vs f_D, n = 10, SNR = 16 dB, epsilon = 1e-9, continuous fading",
                    {SweepKind::AlphaVsDoppler, cfg(10, 16.0, 1e-9, cont), linear_grid(0.0, 0.05, 50), {cont}}});
    figs.push_back({"fig6", "same axis and parameters as fig5",
                    {SweepKind::AlphaVsDoppler, cfg(10, 16.0, 1e-9, cont), linear_grid(0.0, 0.05, 50), {cont}}});
    figs.push_back({"fig7", "rate at both optima vs n, SNR = 20 dB, epsilon = 1e-12, continuous fading f_D = 0.02",
                    {SweepKind::RateVsBlocklength, cfg(30, 20.0, 1e-12, cont), integer_grid(2, 60), {cont}}});
    figs.push_back({"fig8", "rate at both optima vs n, SNR = 7 dB, epsilon = 1e-9, block fading",
                    {SweepKind::RateVsBlocklength, cfg(30, 7.0, 1e-9, block), integer_grid(2, 60), {block}}});
    return figs;
}

std::optional<NamedSweep> find_figure(const std::string& name) {
    for (auto& f : built_in_figures()) {
        if (f.name == name) return f;
    }
    return std::nullopt;
}

std::vector<LinkConfig> random_config_suite(int count, std::uint64_t seed) {
    std::vector<LinkConfig> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        LinkConfig cfg;
        cfg.n = 2 + static_cast<int>(rng.next_u64() % 199);
        cfg.snr = db_to_linear(30.0 * rng.uniform());
        cfg.epsilon = std::pow(10.0, -12.0 + 11.0 * rng.uniform());
        const bool block = rng.uniform() < 0.5;
        const double fd = 0.05 * rng.uniform();
        cfg.model = block ? FadingModel::block() : FadingModel::continuous(fd);
        out.push_back(cfg);
    }
    return out;
}

}  // namespace pilotopt
