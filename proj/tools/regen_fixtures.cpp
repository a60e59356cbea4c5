// Rewrites the golden fixture tree: one CSV per figure preset, the
// optimizer-vs-grid suite, and the table of derived constants.
//
//   regen_fixtures [DIR]     (default: fixtures)

#include "pilotopt/channel.hpp"
#include "pilotopt/optimizer.hpp"
#include "pilotopt/records.hpp"
#include "pilotopt/sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace pilotopt;

namespace {

constexpr int kSuiteGrid = 10000;

std::string exact17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_figures(const std::filesystem::path& dir) {
    for (const NamedSweep& fig : built_in_figures()) {
        std::vector<Record> records;
        for (const SweepRow& row : run_sweep(fig.spec)) records.push_back(sweep_row_record(row, fig.spec.kind));
        std::ofstream os(dir / (fig.name + ".csv"), std::ios::binary);
        write_csv(os, records);
    }
}

void write_suite(const std::filesystem::path& dir) {
    std::vector<Record> records;
    const auto suite = random_config_suite(kRandomSuiteSize, kRandomSuiteSeed);
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const LinkConfig& c = suite[i];
        const OptimizationResult opt = optimize_alpha(c, Objective::FiniteBlocklength);
        const OptimizationResult grid = grid_search_alpha(c, Objective::FiniteBlocklength, kSuiteGrid);
        records.push_back({
            {"index", std::to_string(i)},
            {"n", std::to_string(c.n)},
            {"snr", format_exact(c.snr)},
            {"epsilon", format_exact(c.epsilon)},
            {"model", to_string(c.model.kind()), Field::Kind::Text},
            {"f_d", format_exact(c.model.doppler())},
            {"alpha_optimizer", format_result(opt.alpha_star)},
            {"alpha_grid", format_result(grid.alpha_star)},
            {"grid_points", std::to_string(kSuiteGrid)},
            {"rate_optimizer", format_result(opt.rate_at_opt)},
            {"rate_grid", format_result(grid.rate_at_opt)},
            {"n_t", std::to_string(opt.n_t_star)},
            {"method", to_string(opt.method), Field::Kind::Text},
            {"clamped", opt.clamped_region ? "1" : "0", Field::Kind::Flag},
        });
    }
    std::ofstream os(dir / "random200.csv", std::ios::binary);
    write_csv(os, records);
}

void write_constants(const std::filesystem::path& dir) {
    std::ofstream os(dir / "derived_constants.md", std::ios::binary);
    os << "# Derived constants\n\n"
          "Library values at 17 significant digits next to the command that\n"
          "recomputes each one independently (mpmath, 30 digits).\n\n"
          "| quantity | value | oracle command |\n"
          "|---|---|---|\n";
    const auto row = [&os](const char* name, double v, const char* cmd) {
        os << "| " << name << " | " << exact17(v) << " | `" << cmd << "` |\n";
    };
    row("E1(1)", exp_integral_e1(1.0), "python3 -c \"import mpmath as m; m.mp.dps=30; print(m.e1(1))\"");
    row("Q^-1(1e-9)", q_inverse(1e-9),
        "python3 -c \"import mpmath as m; m.mp.dps=30; print(m.findroot(lambda x: m.erfc(x/m.sqrt(2))/2 - m.mpf('1e-9'), 6))\"");
    row("Var[log2(1+g)], g ~ Exp(1)", capacity_variance(1.0),
        "python3 -c \"import mpmath as m; m.mp.dps=30; f=lambda k: m.quad(lambda g: m.log(1+g,2)**k*m.exp(-g), [0,1,10,m.inf]); print(f(2)-f(1)**2)\"");
    row("C(1) = E[log2(1+g)]", ergodic_capacity(1.0),
        "python3 -c \"import mpmath as m; m.mp.dps=30; print(m.log(m.e,2)*m.e*m.e1(1))\"");
    row("E[1/(1+g)]", mean_inverse_snr(1.0), "python3 -c \"import mpmath as m; m.mp.dps=30; print(m.e*m.e1(1))\"");
    row("V(1)", dispersion(1.0),
        "python3 -c \"import mpmath as m; m.mp.dps=30; f=lambda k: m.quad(lambda g: m.log(1+g,2)**k*m.exp(-g), [0,1,10,m.inf]); "
        "mi=m.e*m.e1(1); print(f(2)-f(1)**2 + m.log(m.e,2)**2/2*(1-mi**2))\"");
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    write_figures(dir);
    write_suite(dir);
    write_constants(dir);
    std::cout << "fixtures written to " << dir.string() << '\n';
    return 0;
}
