#include "triaxis/format.hpp"

#include <cmath>
#include <cstdio>

namespace triaxis {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        return "0";  // folds -0 so output does not depend on the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t) {
    out << "{\"columns\": [";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? ", " : "") << json_quote(t.columns[c]);
    out << "], \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << (r ? ",\n  [" : "\n  [");
        for (std::size_t c = 0; c < t.rows[r].size(); ++c)
            out << (c ? ", " : "") << json_number(t.rows[r][c]);
        out << ']';
    }
    out << (t.rows.empty() ? "]}\n" : "\n]}\n");
}

} // namespace triaxis
