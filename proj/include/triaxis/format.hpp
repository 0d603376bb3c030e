#pragma once

// Deterministic text output: every double is printed with %.17g in the C
// locale, lines end in '\n'.

#include <ostream>
#include <string>
#include <vector>

namespace triaxis {

/// %.17g; non-finite values print as nan, inf, -inf.
std::string format_double(double x);

/// Numeric table with named columns, written as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Header line then one line per row.
void write_csv(std::ostream& out, const Table& t);

/// {"columns": [...], "rows": [[...], ...]}; non-finite values become null.
void write_json(std::ostream& out, const Table& t);

/// JSON string literal with escapes.
std::string json_quote(const std::string& s);

/// format_double, or null for non-finite values.
std::string json_number(double x);

} // namespace triaxis
