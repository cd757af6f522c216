// table.hpp: flat numeric tables and their CSV form.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qwire {

// A cell is either a number or text (for error columns and labels).
struct Cell {
    double number = 0.0;
    std::string text;
    bool is_text = false;

    Cell(double v) : number(v) {}  // NOLINT(google-explicit-constructor)
    Cell(int v) : number(v) {}     // NOLINT(google-explicit-constructor)
    Cell(std::string s) : text(std::move(s)), is_text(true) {}  // NOLINT
    Cell(const char* s) : text(s), is_text(true) {}             // NOLINT
};

struct Table {
    std::vector<std::pair<std::string, std::string>> provenance;  // "# key=value" lines
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// 12 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& table);

}  // namespace qwire
