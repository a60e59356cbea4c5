#pragma once

#include "pilotopt/optimizer.hpp"
#include "pilotopt/sweep.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace pilotopt {

/// Flat, ordered key/value output record. Values are pre-formatted text; the
/// kind decides how JSON renders them.
struct Field {
    enum class Kind { Text, Number, Flag };
    std::string key;
    std::string value;
    Kind kind = Kind::Number;
};
using Record = std::vector<Field>;

inline constexpr int kCsvSchemaVersion = 1;

/// Result columns: 12 significant digits.
std::string format_result(double v);
/// Configuration columns: shortest text that parses back to the same double.
std::string format_exact(double v);

/// Columns: swept_param, swept_value, model, f_d, n, snr_db, epsilon,
/// alpha_finite, alpha_ergodic, n_t_finite, rate_finite_at_finite,
/// rate_finite_at_ergodic, gain, clamped.
Record sweep_row_record(const SweepRow& row, SweepKind kind);

/// "# schema=1", a header line, then one line per record. All records must
/// share the first record's keys.
void write_csv(std::ostream& os, const std::vector<Record>& records);

/// JSON array of flat objects with the same keys as the CSV.
void write_json(std::ostream& os, const std::vector<Record>& records);

/// Parsed CSV body: header plus rows of cells (comment lines skipped).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;
};
CsvTable read_csv(std::istream& is);

}  // namespace pilotopt
