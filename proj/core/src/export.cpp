#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cuspgeom/domains/export.hpp"
#include "cuspgeom/io/plot.hpp"

namespace cuspgeom {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

namespace domains {

void write_graph_obj(std::ostream& out, const ConvexDomain& dom, double kappa, const BaseGrid& grid) {
  if (grid.n2 < 2 || grid.n3 < 2) throw Error(ErrorKind::InvalidParameter, "mesh grid needs at least 2x2 vertices");
  out << "# graph of the boundary function of " << dom.name() << " shifted by " << format_double(kappa) << "\n";
  for (int i = 0; i < grid.n2; ++i) {
    const double x2 = grid.x2_range[0] + (grid.x2_range[1] - grid.x2_range[0]) * i / (grid.n2 - 1);
    for (int j = 0; j < grid.n3; ++j) {
      const double x3 = grid.x3_range[0] + (grid.x3_range[1] - grid.x3_range[0]) * j / (grid.n3 - 1);
      const double x1 = dom.boundary_value(x2, x3) + dom.level() + kappa;
      out << "v " << format_double(x1) << " " << format_double(x2) << " " << format_double(x3) << "\n";
    }
  }
  auto id = [&](int i, int j) { return i * grid.n3 + j + 1; };
  for (int i = 0; i + 1 < grid.n2; ++i)
    for (int j = 0; j + 1 < grid.n3; ++j) {
      out << "f " << id(i, j) << " " << id(i + 1, j) << " " << id(i + 1, j + 1) << "\n";
      out << "f " << id(i, j) << " " << id(i + 1, j + 1) << " " << id(i, j + 1) << "\n";
    }
}

void write_slice_svg(std::ostream& out, const ConvexDomain& dom, double kappa, double x3, std::array<double, 2> x2_range,
                     int samples) {
  if (samples < 2) throw Error(ErrorKind::InvalidParameter, "slice needs at least two samples");
  io::Series s{dom.name() + " slice", {}, {}};
  for (int i = 0; i < samples; ++i) {
    const double x2 = x2_range[0] + (x2_range[1] - x2_range[0]) * i / (samples - 1);
    if (!dom.in_base(x2, x3)) continue;
    s.x.push_back(x2);
    s.y.push_back(dom.boundary_value(x2, x3) + dom.level() + kappa);
  }
  io::write_line_plot_svg(out, dom.name() + " at x3 = " + format_double(x3), "x2", "x1", {s});
}

}  // namespace domains

namespace io {

std::string csv_field(double x) {
  if (std::isnan(x)) return "";
  return format_double(x);
}

void write_line_plot_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<Series>& series, bool log_x) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto px = [&](double x) { return L + (tx(x) - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
      << (log_x ? " (log scale)" : "") << "</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  out << "<text x=\"" << L - 6 << "\" y=\"" << py(ymin) << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymin)
      << "</text>\n";
  out << "<text x=\"" << L - 6 << "\" y=\"" << py(ymax) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
      << format_double(ymax) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 4];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      out << fixed(px(s.x[i])) << "," << fixed(py(s.y[i])) << " ";
    }
    out << "\"/>\n";
    if (s.x.size() <= 40)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (std::isfinite(s.y[i]))
          out << "<circle cx=\"" << fixed(px(s.x[i])) << "\" cy=\"" << fixed(py(s.y[i])) << "\" r=\"3\" fill=\"" << c
              << "\"/>\n";
    out << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (k + 1) << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
        << c << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace io
}  // namespace cuspgeom
