#include "pa/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pa {

std::string format_number(double x) {
  char buf[40];
  if (std::isnan(x)) return "nan";
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("ResultTable: row width does not match the header");
  rows.push_back(std::move(row));
}

void ResultTable::write_csv(std::ostream& out) const {
  out << "# table: " << name << "\n";
  for (const auto& p : provenance) out << "# " << p << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

void write_plot_data(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& points,
                     const std::vector<std::string>& provenance) {
  for (const auto& p : provenance) out << "# " << p << "\n";
  out << "# " << x_name << "  " << y_name << "\n";
  for (const auto& [x, y] : points) out << format_number(x) << "  " << format_number(y) << "\n";
}

}  // namespace pa
