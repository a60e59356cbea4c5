#include "doctest.h"

#include "pilotopt/records.hpp"

#include "json.hpp"

#include <sstream>

using namespace pilotopt;

namespace {

const char* const kColumns[] = {
    "swept_param", "swept_value", "model", "f_d", "n", "snr_db", "epsilon", "alpha_finite", "alpha_ergodic",
    "n_t_finite", "rate_finite_at_finite", "rate_finite_at_ergodic", "gain", "clamped",
};

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_exact(0.1) == "0.1");
    CHECK(format_exact(1e-12) == "1e-12");
    CHECK(format_exact(31.622776601683793) == "31.622776601683793");
    CHECK(std::stod(format_exact(0.1 + 0.2)) == 0.1 + 0.2);
    CHECK(format_result(1.0 / 3.0) == "0.333333333333");
    CHECK(format_result(0.0) == "0");
}

TEST_CASE("sweep records have the fixed column order") {
    const auto fig = *find_figure("fig8");
    SweepSpec s = fig.spec;
    s.swept_values = {10, 11};
    const auto rows = run_sweep(s);
    const Record r = sweep_row_record(rows[0], s.kind);
    REQUIRE(r.size() == std::size(kColumns));
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].key == kColumns[i]);
    CHECK(r[0].value == "n");
    CHECK(r[1].value == "10");
    CHECK(r[2].value == "block");
    CHECK(r[5].value == "7");
}

TEST_CASE("csv layout: schema line, header, rows") {
    std::vector<Record> recs = {
        {{"a", "1"}, {"b", "x", Field::Kind::Text}},
        {{"a", "2.5"}, {"b", "y", Field::Kind::Text}},
    };
    std::ostringstream os;
    write_csv(os, recs);
    CHECK(os.str() == "# schema=1\na,b\n1,x\n2.5,y\n");

    std::istringstream is(os.str());
    const CsvTable t = read_csv(is);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][0] == "2.5");
    CHECK(t.column("b") == 1);
    CHECK_THROWS(t.column("c"));

    recs.push_back({{"a", "3"}});
    std::ostringstream bad;
    CHECK_THROWS(write_csv(bad, recs));
}

TEST_CASE("json is an array of flat objects with typed values") {
    const std::vector<Record> recs = {
        {{"n", "30"}, {"model", "block", Field::Kind::Text}, {"gain", "0.125"}, {"clamped", "0", Field::Kind::Flag}},
    };
    std::ostringstream os;
    write_json(os, recs);
    const auto j = nlohmann::ordered_json::parse(os.str());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["n"] == 30);
    CHECK(j[0]["model"] == "block");
    CHECK(j[0]["gain"] == 0.125);
    CHECK(j[0]["clamped"] == false);
    std::vector<std::string> keys;
    for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"n", "model", "gain", "clamped"});
}
