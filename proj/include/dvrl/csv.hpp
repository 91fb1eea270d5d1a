#pragma once
// Strict CSV ingestion: header row, UTF-8, comma-separated, no missing
// values. Numeric cells must parse fully; errors carry row/column
// coordinates.

#include <string>
#include <vector>

namespace dvrl {

struct RawTable {
    std::vector<std::string> columns;
    std::vector<bool> categorical; // per column; the label column is untyped here
    std::size_t label_index = 0;
    std::vector<std::vector<std::string>> cells; // row-major

    std::size_t rows() const { return cells.size(); }
    std::size_t find_column(const std::string& name) const;
};

RawTable load_csv(const std::string& path, const std::string& label_column,
                  const std::vector<std::string>& categorical_columns);

void write_csv(const std::string& path, const RawTable& table);

} // namespace dvrl
