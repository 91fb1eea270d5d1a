#include "dvrl/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dvrl/common.hpp"

namespace dvrl {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parses_as_double(const std::string& s) {
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc() && ptr == end;
}

} // namespace

std::size_t RawTable::find_column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw ValidationError("column '" + name + "' not found");
}

RawTable load_csv(const std::string& path, const std::string& label_column,
                  const std::vector<std::string>& categorical_columns) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    RawTable table;
    table.columns = split_line(line);
    if (table.columns.empty()) throw ValidationError(path + ": empty header row");

    bool label_found = false;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] == label_column) {
            table.label_index = i;
            label_found = true;
        }
    }
    if (!label_found) {
        throw ValidationError(path + ": label column '" + label_column + "' not present");
    }
    table.categorical.assign(table.columns.size(), false);
    for (const auto& name : categorical_columns) {
        table.categorical[table.find_column(name)] = true;
    }

    std::size_t row_num = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row_num;
        auto cells = split_line(line);
        if (cells.size() != table.columns.size()) {
            throw ValidationError(path + ": row " + std::to_string(row_num) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(table.columns.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty()) {
                throw ValidationError(path + ": missing value at row " +
                                      std::to_string(row_num) + ", column '" +
                                      table.columns[c] + "'");
            }
            if (c != table.label_index && !table.categorical[c] &&
                !parses_as_double(cells[c])) {
                throw ValidationError(path + ": unparseable numeric cell at row " +
                                      std::to_string(row_num) + ", column '" +
                                      table.columns[c] + "': '" + cells[c] + "'");
            }
        }
        table.cells.push_back(std::move(cells));
    }
    return table;
}

void write_csv(const std::string& path, const RawTable& table) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write CSV file: " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

} // namespace dvrl
