#include "pilotopt/cli.hpp"

#include "pilotopt/channel.hpp"
#include "pilotopt/montecarlo.hpp"
#include "pilotopt/optimizer.hpp"
#include "pilotopt/records.hpp"
#include "pilotopt/sweep.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace pilotopt {

namespace {

struct GlobalArgs {
    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 42;
    int threads = 0;
};

struct LinkArgs {
    int n = 30;
    double snr_db = 15.0;
    double eps = 1e-9;
    std::string model = "block";
    double fd = 0.0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_link_flags(CLI::App* sub, LinkArgs& a, bool required) {
    auto* n = sub->add_option("--n", a.n, "blocklength in symbols (>= 2)");
    auto* snr = sub->add_option("--snr-db", a.snr_db, "SNR in dB");
    auto* eps = sub->add_option("--eps", a.eps, "target packet error probability in (0, 1)");
    if (required) {
        n->required();
        snr->required();
        eps->required();
    }
    sub->add_option("--model", a.model, "fading model")->check(CLI::IsMember({"block", "continuous"}));
    sub->add_option("--fd", a.fd, "normalized Doppler frequency (continuous fading)");
}

FadingModel parse_model(const std::string& name, double fd) {
    if (name == "block") {
        if (fd != 0.0) throw UsageError("--fd requires --model continuous");
        return FadingModel::block();
    }
    try {
        return FadingModel::continuous(fd);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

LinkConfig to_config(const LinkArgs& a) {
    LinkConfig cfg{a.n, db_to_linear(a.snr_db), a.eps, parse_model(a.model, a.fd)};
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

Record config_fields(const LinkArgs& a, const LinkConfig& cfg) {
    return {
        {"n", std::to_string(cfg.n)},
        {"snr_db", format_exact(a.snr_db)},
        {"epsilon", format_exact(cfg.epsilon)},
        {"model", to_string(cfg.model.kind()), Field::Kind::Text},
        {"f_d", format_exact(cfg.model.doppler())},
    };
}

void emit(const GlobalArgs& g, std::ostream& out, const std::vector<Record>& records) {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &out;
    if (!g.out_path.empty()) {
        file = std::make_unique<std::ofstream>(g.out_path, std::ios::binary);
        if (!*file) throw UsageError("cannot open output file " + g.out_path);
        os = file.get();
    }
    if (g.format == "json") {
        write_json(*os, records);
    } else {
        write_csv(*os, records);
    }
}

int cmd_optimize(const GlobalArgs& g, const LinkArgs& a, std::ostream& out) {
    const LinkConfig cfg = to_config(a);
    const RateGain rg = rate_gain(cfg);
    Record r = config_fields(a, cfg);
    const auto add = [&r](std::string k, std::string v, Field::Kind kind = Field::Kind::Number) {
        r.push_back({std::move(k), std::move(v), kind});
    };
    add("alpha_finite", format_result(rg.finite.alpha_star));
    add("n_t_finite", std::to_string(rg.finite.n_t_star));
    add("rate_finite_at_finite", format_result(rg.rate_finite_at_finite));
    add("method_finite", to_string(rg.finite.method), Field::Kind::Text);
    add("evaluations_finite", std::to_string(rg.finite.evaluations));
    add("alpha_ergodic", format_result(rg.ergodic.alpha_star));
    add("n_t_ergodic", std::to_string(rg.ergodic.n_t_star));
    add("rate_ergodic_at_ergodic", format_result(rg.ergodic.rate_at_opt));
    add("rate_finite_at_ergodic", format_result(rg.rate_finite_at_ergodic));
    add("method_ergodic", to_string(rg.ergodic.method), Field::Kind::Text);
    add("evaluations_ergodic", std::to_string(rg.ergodic.evaluations));
    add("gain", format_result(rg.gain));
    add("gain_flagged", rg.flagged ? "1" : "0", Field::Kind::Flag);
    add("clamped", rg.finite.clamped_region ? "1" : "0", Field::Kind::Flag);
    emit(g, out, {r});
    return rg.finite.clamped_region ? kExitInfeasible : kExitOk;
}

int cmd_rate(const GlobalArgs& g, const LinkArgs& a, double alpha, std::ostream& out) {
    const LinkConfig cfg = to_config(a);
    TrainingRateBreakdown b;
    try {
        b = training_rate_breakdown(alpha, cfg);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    const RateValue perfect = perfect_csi_rate(cfg.n, cfg.epsilon, cfg.snr);
    Record r = config_fields(a, cfg);
    r.push_back({"alpha", format_exact(alpha)});
    r.push_back({"est_noise", format_result(b.est_error.noise_term)});
    r.push_back({"est_doppler", format_result(b.est_error.doppler_term)});
    r.push_back({"est_total", format_result(b.est_error.total)});
    r.push_back({"snr_eff", format_result(b.effective_snr)});
    r.push_back({"capacity_eff", format_result(b.capacity)});
    r.push_back({"dispersion_eff", format_result(b.dispersion)});
    r.push_back({"rate_perfect_csi", format_result(perfect.bits_per_use)});
    r.push_back({"rate_finite", format_result(b.finite.bits_per_use)});
    r.push_back({"rate_ergodic", format_result(b.ergodic.bits_per_use)});
    r.push_back({"clamped", b.finite.clamped ? "1" : "0", Field::Kind::Flag});
    emit(g, out, {r});
    return kExitOk;
}

std::vector<Record> sweep_records(const SweepSpec& spec) {
    std::vector<Record> records;
    for (const SweepRow& row : run_sweep(spec)) records.push_back(sweep_row_record(row, spec.kind));
    return records;
}

std::string gnuplot_script(const NamedSweep& fig, const std::string& csv_path) {
    const SweepSpec& s = fig.spec;
    const bool rate_plot = s.kind == SweepKind::RateVsBlocklength;
    const int y1 = rate_plot ? 11 : 8;
    const int y2 = rate_plot ? 12 : 9;
    std::ostringstream gp;
    gp << "# " << fig.name << ": " << fig.description << "\n";
    gp << "set datafile separator ','\n";
    gp << "set datafile commentschars '#'\n";
    gp << "set key autotitle columnhead\n";
    gp << "set xlabel '" << swept_param_name(s.kind) << "'\n";
    gp << "set ylabel '" << (rate_plot ? "rate (bits/use)" : "optimal pilot fraction") << "'\n";
    if (s.kind == SweepKind::AlphaVsEpsilon) gp << "set logscale x\n";
    gp << "plot '" << csv_path << "' using 2:" << y1 << " with linespoints title 'finite blocklength', \\\n";
    gp << "     '' using 2:" << y2 << " with linespoints title 'ergodic'\n";
    return gp.str();
}

int cmd_figure(const GlobalArgs& g, const std::string& name, std::optional<double> fd_override, bool gnuplot,
               std::ostream& out, std::ostream& err) {
    std::optional<NamedSweep> fig = find_figure(name);
    if (!fig) {
        err << "unknown figure '" << name << "'; valid names:";
        for (const auto& f : built_in_figures()) err << ' ' << f.name;
        err << '\n';
        return kExitUsage;
    }
    if (fd_override) {
        if (fig->spec.kind == SweepKind::AlphaVsDoppler) throw UsageError("--fd cannot override a Doppler axis");
        for (auto& m : fig->spec.models) {
            if (!m.is_block()) m = parse_model("continuous", *fd_override);
        }
    }
    if (gnuplot) {
        if (g.out_path.empty()) throw UsageError("--gnuplot requires --out for the data file");
        out << gnuplot_script(*fig, g.out_path);
    }
    emit(g, out, sweep_records(fig->spec));
    return kExitOk;
}

struct SweepArgs {
    std::string kind;
    std::vector<double> values;
    std::optional<double> from;
    std::optional<double> to;
    int points = 0;
    int per_decade = 0;
    std::vector<std::string> models{"block"};
};

int cmd_sweep(const GlobalArgs& g, const SweepArgs& s, LinkArgs a, std::ostream& out) {
    SweepSpec spec;
    if (s.kind == "epsilon") spec.kind = SweepKind::AlphaVsEpsilon;
    else if (s.kind == "n") spec.kind = SweepKind::AlphaVsBlocklength;
    else if (s.kind == "snr") spec.kind = SweepKind::AlphaVsSnr;
    else if (s.kind == "fd") spec.kind = SweepKind::AlphaVsDoppler;
    else spec.kind = SweepKind::RateVsBlocklength;

    if (!s.values.empty()) {
        spec.swept_values = s.values;
    } else if (s.from && s.to && s.per_decade > 0) {
        spec.swept_values = log_grid(*s.from, *s.to, s.per_decade);
    } else if (s.from && s.to && s.points >= 2) {
        spec.swept_values = linear_grid(*s.from, *s.to, s.points);
    } else if (s.from && s.to && (spec.kind == SweepKind::AlphaVsBlocklength || spec.kind == SweepKind::RateVsBlocklength)) {
        spec.swept_values = integer_grid(static_cast<int>(*s.from), static_cast<int>(*s.to));
    } else {
        throw UsageError("give --values, or --from/--to with --points or --per-decade");
    }
    const double fd = a.fd;
    a.model = "block";
    a.fd = 0.0;
    spec.fixed = LinkConfig{a.n, db_to_linear(a.snr_db), a.eps, FadingModel::block()};
    for (const auto& m : s.models) {
        if (m == "block") {
            spec.models.push_back(FadingModel::block());
        } else if (m == "continuous") {
            spec.models.push_back(parse_model("continuous", fd));
        } else {
            throw UsageError("unknown model '" + m + "'");
        }
    }
    try {
        validate(spec);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    emit(g, out, sweep_records(spec));
    return kExitOk;
}

struct Check {
    std::string line;
    bool pass = true;
    bool informational = false;
};

Check z_check(const std::string& label, const McEstimate& mc, double analytic) {
    const double z = mc.std_error > 0.0 ? (mc.mean - analytic) / mc.std_error : (mc.mean == analytic ? 0.0 : INFINITY);
    Check c;
    c.pass = std::abs(z) <= 4.0;
    c.line = label + " mc=" + format_result(mc.mean) + " analytic=" + format_result(analytic) +
             " se=" + format_result(mc.std_error) + " z=" + format_result(z) + (c.pass ? " ok" : " FAIL");
    return c;
}

int cmd_validate(const GlobalArgs& g, std::int64_t trials, std::ostream& out, std::ostream& err) {
    if (trials < 1000) {
        err << "trials must be ≥ 1000\n";
        return kExitUsage;
    }
    std::vector<Check> checks;
    std::uint64_t stream = 0;
    const auto next_seed = [&] { return g.seed + 0x1000003ULL * ++stream; };

    for (double snr : {0.1, 1.0, 10.0, 100.0}) {
        const double closed_c = ergodic_capacity(snr);
        const double closed_m = mean_inverse_snr(snr);
        const auto quad_c = checked_expectation(snr, [snr](double x) { return std::log1p(snr * x) * kLog2E; });
        const auto quad_m = checked_expectation(snr, [snr](double x) { return 1.0 / (1.0 + snr * x); });
        for (auto [label, closed, quad] : {std::tuple{"capacity", closed_c, quad_c.value},
                                           std::tuple{"mean_inv", closed_m, quad_m.value}}) {
            const double rel = std::abs(quad - closed) / std::abs(closed);
            Check c;
            c.pass = rel <= 1e-8;
            c.line = std::string("quad: ") + label + " snr=" + format_result(snr) + " closed=" +
                     format_result(closed) + " quadrature=" + format_result(quad) + " rel=" + format_result(rel) +
                     (c.pass ? " ok" : " FAIL");
            checks.push_back(c);
        }
    }
    constexpr int kPacket = 32;
    for (int pilots : {1, 4, 16}) {
        for (double snr : {1.0, 10.0}) {
            const double alpha = static_cast<double>(pilots) / kPacket;
            const McEstimate mc = simulate_mmse_mse(alpha, kPacket, snr, trials, next_seed());
            checks.push_back(z_check("eq2: an=" + std::to_string(pilots) + " snr=" + format_result(snr), mc,
                                     mmse_error_block(alpha, kPacket, snr)));
        }
    }
    for (double snr : {0.1, 1.0, 10.0, 100.0}) {
        const CapacityMomentsMc mc = mc_capacity_moments(snr, trials, next_seed());
        const std::string tag = " snr=" + format_result(snr);
        checks.push_back(z_check("eq6: capacity" + tag, mc.mean, ergodic_capacity(snr)));
        checks.push_back(z_check("eq7: variance" + tag, mc.variance, capacity_variance(snr)));
        checks.push_back(z_check("eq7: mean_inv" + tag, mc.mean_inv, mean_inverse_snr(snr)));
    }
    {
        const double alpha = 0.2;
        const int n = 10;
        const double snr = 10.0;
        const double fd = 0.01;
        const McEstimate mc = simulate_doppler_mse(alpha, n, snr, fd, std::min<std::int64_t>(trials, 100000), next_seed());
        const double model = mmse_error(alpha, n, snr, FadingModel::continuous(fd)).total;
        Check c;
        c.informational = true;
        c.line = "doppler (informational): an=2 n=10 snr=10 fd=0.01 mc=" + format_result(mc.mean) +
                 " model=" + format_result(model) + " ratio=" + format_result(mc.mean / model);
        checks.push_back(c);
    }

    std::size_t failed = 0;
    std::size_t gated = 0;
    for (const Check& c : checks) {
        out << c.line << '\n';
        if (!c.informational) {
            ++gated;
            if (!c.pass) ++failed;
        }
    }
    out << "validate: " << (failed ? "FAIL" : "PASS") << " (" << gated - failed << "/" << gated
        << " checks, trials=" << trials << ", seed=" << g.seed << ")\n";
    return failed ? kExitValidationFailed : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pilot overhead optimization for short-packet transmission over Rayleigh fading"};
    app.require_subcommand(1);
    GlobalArgs g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "write output to this file");
    app.add_option("--seed", g.seed, "seed for Monte Carlo runs");
    app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

    LinkArgs opt_args;
    auto* optimize = app.add_subcommand("optimize", "optimal pilot fraction under both objectives")->fallthrough();
    add_link_flags(optimize, opt_args, true);

    LinkArgs rate_args;
    double alpha = 0.0;
    auto* rate = app.add_subcommand("rate", "rates at one pilot fraction")->fallthrough();
    add_link_flags(rate, rate_args, true);
    rate->add_option("--alpha", alpha, "pilot fraction in [1/n, 1 - 1/n]")->required();

    std::string fig_name;
    double fd_override = 0.0;
    bool gnuplot = false;
    auto* figure = app.add_subcommand("figure", "reproduce a figure preset (fig1 ... fig8) as CSV")->fallthrough();
    figure->add_option("name", fig_name, "figure preset")->required();
    auto* fd_opt = figure->add_option("--fd", fd_override, "override f_D of continuous-fading curves");
    figure->add_flag("--gnuplot", gnuplot, "print a gnuplot script for the CSV written to --out");

    LinkArgs sweep_link;
    sweep_link.fd = 0.02;
    SweepArgs sweep_args;
    double from = 0.0;
    double to = 0.0;
    auto* sweep = app.add_subcommand("sweep", "custom parameter sweep")->fallthrough();
    sweep->add_option("--kind", sweep_args.kind, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"epsilon", "n", "snr", "fd", "rate-n"}));
    sweep->add_option("--values", sweep_args.values, "explicit comma-separated values")->delimiter(',');
    auto* from_opt = sweep->add_option("--from", from, "first value");
    auto* to_opt = sweep->add_option("--to", to, "last value");
    sweep->add_option("--points", sweep_args.points, "number of linearly spaced values");
    sweep->add_option("--per-decade", sweep_args.per_decade, "log spacing: values per decade");
    sweep->add_option("--models", sweep_args.models, "block,continuous")->delimiter(',');
    sweep->add_option("--n", sweep_link.n, "blocklength");
    sweep->add_option("--snr-db", sweep_link.snr_db, "SNR in dB");
    sweep->add_option("--eps", sweep_link.eps, "target error probability");
    sweep->add_option("--fd", sweep_link.fd, "Doppler for continuous models");

    std::int64_t trials = 1000000;
    auto* validate_cmd = app.add_subcommand("validate", "Monte Carlo and quadrature cross-checks")->fallthrough();
    validate_cmd->add_option("--trials", trials, "trials per Monte Carlo check (>= 1000)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    if (g.threads > 0) omp_set_num_threads(g.threads);
    try {
        if (*optimize) return cmd_optimize(g, opt_args, out);
        if (*rate) return cmd_rate(g, rate_args, alpha, out);
        if (*figure) {
            std::optional<double> fd;
            if (*fd_opt) fd = fd_override;
            return cmd_figure(g, fig_name, fd, gnuplot, out, err);
        }
        if (*sweep) {
            if (*from_opt) sweep_args.from = from;
            if (*to_opt) sweep_args.to = to;
            return cmd_sweep(g, sweep_args, sweep_link, out);
        }
        if (*validate_cmd) return cmd_validate(g, trials, out, err);
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace pilotopt
