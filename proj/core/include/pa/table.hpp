#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pa {

// Small numeric table with unit-carrying column names and a '#'-prefixed
// provenance header. Rows render with a fixed format, so identical inputs
// give byte-identical files.
struct ResultTable {
  std::string name;
  std::vector<std::string> columns;  // e.g. "eps_over_hbar_Mrad_per_s"
  std::vector<std::vector<double>> rows;
  std::vector<std::string> provenance;  // config echo, hash, versions

  void add_row(std::vector<double> row);
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

// Two-column plot data (x, y), same provenance conventions.
void write_plot_data(std::ostream& out, const std::string& x_name, const std::string& y_name,
                     const std::vector<std::pair<double, double>>& points,
                     const std::vector<std::string>& provenance);

std::string format_number(double x);

}  // namespace pa
