#include "qwire/table.hpp"

#include <cstdio>
#include <ostream>

namespace qwire {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& table) {
    for (const auto& [key, value] : table.provenance) os << "# " << key << '=' << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            if (row[c].is_text) {
                os << row[c].text;
            } else {
                os << format_number(row[c].number);
            }
        }
        os << '\n';
    }
}

}  // namespace qwire
