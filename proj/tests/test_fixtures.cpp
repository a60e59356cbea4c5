#include "doctest.h"

#include "pilotopt/optimizer.hpp"
#include "pilotopt/records.hpp"
#include "pilotopt/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace pilotopt;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = PILOTOPT_FIXTURE_DIR;

// Real-valued result columns compare at 1e-9 relative; everything else exactly.
const std::set<std::string> kRealColumns = {
    "alpha_finite", "alpha_ergodic", "rate_finite_at_finite", "rate_finite_at_ergodic", "gain",
    "alpha_optimizer", "alpha_grid", "rate_optimizer", "rate_grid",
};

CsvTable load(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return read_csv(in);
}

CsvTable render(const std::vector<Record>& records) {
    std::ostringstream os;
    write_csv(os, records);
    std::istringstream is(os.str());
    return read_csv(is);
}

bool close(const std::string& a, const std::string& b) {
    const double x = std::stod(a);
    const double y = std::stod(b);
    if (x == y) return true;
    return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
}

void compare(const CsvTable& golden, const CsvTable& fresh) {
    REQUIRE(golden.header == fresh.header);
    REQUIRE(golden.rows.size() == fresh.rows.size());
    for (std::size_t r = 0; r < golden.rows.size(); ++r) {
        for (std::size_t c = 0; c < golden.header.size(); ++c) {
            const std::string& g = golden.rows[r][c];
            const std::string& f = fresh.rows[r][c];
            CAPTURE(r);
            CAPTURE(golden.header[c]);
            if (kRealColumns.count(golden.header[c])) {
                CHECK(close(g, f));
            } else {
                CHECK(g == f);
            }
        }
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("every figure preset matches its golden CSV") {
    for (const NamedSweep& fig : built_in_figures()) {
        CAPTURE(fig.name);
        std::vector<Record> records;
        for (const SweepRow& row : run_sweep(fig.spec)) records.push_back(sweep_row_record(row, fig.spec.kind));
        compare(load(kDir / (fig.name + ".csv")), render(records));
    }
}

TEST_CASE("fig7 golden has more than 20 rows") {
    CHECK(load(kDir / "fig7.csv").rows.size() > 20);
}

TEST_CASE("optimizer-vs-grid golden suite") {
    const CsvTable t = load(kDir / "random200.csv");
    const auto suite = random_config_suite(kRandomSuiteSize, kRandomSuiteSeed);
    REQUIRE(t.rows.size() == suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& row = t.rows[i];
        const LinkConfig& c = suite[i];
        CHECK(std::stoi(row[t.column("n")]) == c.n);
        CHECK(std::stod(row[t.column("snr")]) == c.snr);
        CHECK(std::stod(row[t.column("epsilon")]) == c.epsilon);
        CHECK(std::stod(row[t.column("f_d")]) == c.model.doppler());
        const OptimizationResult o = optimize_alpha(c, Objective::FiniteBlocklength);
        CHECK(close(row[t.column("alpha_optimizer")], format_result(o.alpha_star)));
        CHECK(close(row[t.column("rate_optimizer")], format_result(o.rate_at_opt)));
        CHECK(row[t.column("n_t")] == std::to_string(o.n_t_star));
        CHECK(row[t.column("method")] == to_string(o.method));
        CHECK(row[t.column("clamped")] == (o.clamped_region ? "1" : "0"));
        const double cell = (c.max_alpha() - c.min_alpha()) / std::stod(row[t.column("grid_points")]);
        CHECK(std::abs(std::stod(row[t.column("alpha_optimizer")]) - std::stod(row[t.column("alpha_grid")])) <= cell + 1e-6);
    }
}

TEST_CASE("derived constants table lists the oracle commands") {
    const std::string text = slurp(kDir / "derived_constants.md");
    for (const char* needle : {"E1(1)", "Q^-1(1e-9)", "Var[log2(1+g)]", "mpmath"}) {
        CHECK(text.find(needle) != std::string::npos);
    }
    CHECK(text.find("0.21938393439552") != std::string::npos);
    CHECK(text.find("5.99780701500") != std::string::npos);
    CHECK(text.find("0.3669465866749") != std::string::npos);
}

TEST_CASE("regeneration is deterministic") {
    const fs::path a = fs::temp_directory_path() / "pilotopt_regen_a";
    const fs::path b = fs::temp_directory_path() / "pilotopt_regen_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const std::string exe = PILOTOPT_REGEN_EXE;
    REQUIRE(std::system((exe + " " + a.string() + " >/dev/null").c_str()) == 0);
    REQUIRE(std::system((exe + " " + b.string() + " >/dev/null").c_str()) == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        const fs::path other = b / entry.path().filename();
        CAPTURE(entry.path().filename().string());
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
        // The checked-in tree must be current.
        CHECK(slurp(entry.path()) == slurp(kDir / entry.path().filename()));
    }
    CHECK(files == 10);
    fs::remove_all(a);
    fs::remove_all(b);
}
