#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bitempo/continuity/field.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::cli {

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Delimited text with a one-line header; numbers use 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const { return rows_; }
  const std::string& text() const { return text_; }

 private:
  std::size_t width_;
  std::size_t rows_ = 0;
  std::string text_;
};

std::string format_number(double v);

/// Grid-data file: header "x,t1,t2,j1,j2,jx", one row per grid point in
/// x-major, then t1, then t2 order, coordinates matching `grid`.
std::string write_current_csv(const continuity::CurrentField& j);

/// Inverse of write_current_csv. Throws ConfigError naming the line on a
/// malformed row or a coordinate that does not match the grid.
continuity::CurrentField read_current_csv(const std::filesystem::path& path, const core::Grid2T& grid);

}  // namespace bitempo::cli
