#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspgeom::io {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Static SVG line plot with markers; fixed formatting so output is deterministic.
void write_line_plot_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series, bool log_x = false);

// CSV field rendering: shortest round-trip decimal; NaN becomes an empty field.
std::string csv_field(double x);

}  // namespace cuspgeom::io
