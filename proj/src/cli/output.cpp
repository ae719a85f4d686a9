#include "bitempo/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "bitempo/cli/config.hpp"

namespace bitempo::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : width_(columns.size()) {
  text_ = boost::algorithm::join(columns, ",") + "\n";
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("csv row width does not match the header");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) text_ += ',';
    text_ += format_number(values[k]);
  }
  text_ += '\n';
  ++rows_;
}

std::string write_current_csv(const continuity::CurrentField& j) {
  const core::Grid2T& g = j.grid;
  CsvTable t({"x", "t1", "t2", "j1", "j2", "jx"});
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
      for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
        t.add_row({g.space().at(ix), g.t1().at(i1), g.t2().at(i2), j.j1(ix, i1, i2), j.j2(ix, i1, i2),
                   j.jx(ix, i1, i2)});
      }
    }
  }
  return t.text();
}

continuity::CurrentField read_current_csv(const fs::path& path, const core::Grid2T& grid) {
  if (!grid.has_space()) throw ConfigError("current data needs a grid with an x axis");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read grid data '" + path.string() + "'");
  using continuity::Field3;
  continuity::CurrentField j{grid, Field3::shaped_like(grid), Field3::shaped_like(grid), Field3::shaped_like(grid)};

  const std::string where = path.string() + ": line ";
  std::string line;
  int number = 1;
  if (!std::getline(in, line) || boost::algorithm::trim_copy(line) != "x,t1,t2,j1,j2,jx") {
    throw ConfigError(where + "1: expected header x,t1,t2,j1,j2,jx");
  }
  const std::size_t total = grid.nx() * grid.n1() * grid.n2();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++number;
    if (boost::algorithm::trim_copy(line).empty()) continue;
    if (row == total) throw ConfigError(where + std::to_string(number) + ": more rows than grid points");
    std::vector<std::string> cells;
    boost::algorithm::split(cells, line, boost::algorithm::is_any_of(","));
    if (cells.size() != 6) throw ConfigError(where + std::to_string(number) + ": expected 6 columns");
    double v[6];
    for (int c = 0; c < 6; ++c) {
      try {
        std::size_t used = 0;
        const std::string cell = boost::algorithm::trim_copy(cells[static_cast<std::size_t>(c)]);
        v[c] = std::stod(cell, &used);
        if (used != cell.size() || !std::isfinite(v[c])) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError(where + std::to_string(number) + ": column " + std::to_string(c + 1) +
                          " is not a finite number");
      }
    }
    const std::size_t i2 = row % grid.n2();
    const std::size_t i1 = (row / grid.n2()) % grid.n1();
    const std::size_t ix = row / (grid.n1() * grid.n2());
    const double expect[3] = {grid.space().at(ix), grid.t1().at(i1), grid.t2().at(i2)};
    for (int c = 0; c < 3; ++c) {
      if (std::abs(v[c] - expect[c]) > 1e-9 * std::max(1.0, std::abs(expect[c]))) {
        throw ConfigError(where + std::to_string(number) + ": coordinates do not match the [grid] section");
      }
    }
    j.j1(ix, i1, i2) = v[3];
    j.j2(ix, i1, i2) = v[4];
    j.jx(ix, i1, i2) = v[5];
    ++row;
  }
  if (row != total) {
    throw ConfigError(where + std::to_string(number) + ": " + std::to_string(row) + " rows for " +
                      std::to_string(total) + " grid points");
  }
  return j;
}

}  // namespace bitempo::cli
