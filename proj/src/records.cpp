#include "pilotopt/records.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pilotopt {

std::string format_result(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Record sweep_row_record(const SweepRow& row, SweepKind kind) {
    const LinkConfig& c = row.config;
    const bool integer_axis = kind == SweepKind::AlphaVsBlocklength || kind == SweepKind::RateVsBlocklength;
    return {
        {"swept_param", swept_param_name(kind), Field::Kind::Text},
        {"swept_value", integer_axis ? std::to_string(c.n) : format_exact(row.swept_value)},
        {"model", to_string(c.model.kind()), Field::Kind::Text},
        {"f_d", format_exact(c.model.doppler())},
        {"n", std::to_string(c.n)},
        {"snr_db", format_result(linear_to_db(c.snr))},
        {"epsilon", format_exact(c.epsilon)},
        {"alpha_finite", format_result(row.alpha_finite)},
        {"alpha_ergodic", format_result(row.alpha_ergodic)},
        {"n_t_finite", std::to_string(row.n_t_finite)},
        {"rate_finite_at_finite", format_result(row.rate_finite_at_finite)},
        {"rate_finite_at_ergodic", format_result(row.rate_finite_at_ergodic)},
        {"gain", format_result(row.gain)},
        {"clamped", row.clamped ? "1" : "0", Field::Kind::Flag},
    };
}

void write_csv(std::ostream& os, const std::vector<Record>& records) {
    os << "# schema=" << kCsvSchemaVersion << '\n';
    if (records.empty()) return;
    const Record& first = records.front();
    for (std::size_t i = 0; i < first.size(); ++i) os << (i ? "," : "") << first[i].key;
    os << '\n';
    for (const Record& r : records) {
        if (r.size() != first.size()) throw std::logic_error("csv records must share one schema");
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].value;
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<Record>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Record& r : records) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const Field& f : r) {
            switch (f.kind) {
                case Field::Kind::Text: obj[f.key] = f.value; break;
                case Field::Kind::Number: obj[f.key] = nlohmann::ordered_json::parse(f.value); break;
                case Field::Kind::Flag: obj[f.key] = (f.value == "1"); break;
            }
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw std::out_of_range("no csv column named " + name);
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (t.header.empty()) {
            t.header = split(line);
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

}  // namespace pilotopt
