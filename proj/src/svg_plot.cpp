#include "qroute/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qroute::harness {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen_if_flat() {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string tick(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg_plot(std::span<const PlotSeries> series, const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("plot needs at least one series");
  bool has_right = false;
  Range xr{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  Range left = xr, right = xr;
  for (const auto& s : series) {
    if (s.y.empty()) throw std::invalid_argument("series '" + s.name + "' is empty");
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series '" + s.name + "' has mismatched x/y");
    Range& yr = s.axis == Axis::kRight ? right : left;
    has_right = has_right || s.axis == Axis::kRight;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.lo = std::min(xr.lo, s.x[i]);
      xr.hi = std::max(xr.hi, s.x[i]);
      yr.lo = std::min(yr.lo, s.y[i]);
      yr.hi = std::max(yr.hi, s.y[i]);
    }
  }
  if (left.lo > left.hi) left = {0.0, 1.0};
  xr.widen_if_flat();
  left.widen_if_flat();
  if (has_right) right.widen_if_flat();

  const double w = options.width, h = options.height;
  const double ml = 80, mr = has_right ? 80 : 30, mt = 40, mb = 60;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y, const Range& r) { return mt + ph - (y - r.lo) / (r.hi - r.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(options.title)
     << "</text>\n";
  os << "<g stroke=\"black\">\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\"" << mt + ph << "\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph << "\"/>\n";
  if (has_right) {
    os << "<line x1=\"" << ml + pw << "\" y1=\"" << mt << "\" x2=\"" << ml + pw << "\" y2=\"" << mt + ph << "\"/>\n";
  }
  os << "</g>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double f = static_cast<double>(i) / kTicks;
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    os << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">" << tick(xv)
       << "</text>\n";
    const double lv = left.lo + f * (left.hi - left.lo);
    os << "<text x=\"" << ml - 6 << "\" y=\"" << py(lv, left) + 4 << "\" text-anchor=\"end\">" << tick(lv)
       << "</text>\n";
    if (has_right) {
      const double rv = right.lo + f * (right.hi - right.lo);
      os << "<text x=\"" << ml + pw + 6 << "\" y=\"" << py(rv, right) + 4 << "\">" << tick(rv) << "</text>\n";
    }
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">"
     << escape(options.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << mt + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(options.left_label) << "</text>\n";
  if (has_right) {
    os << "<text transform=\"translate(" << w - 12 << ',' << mt + ph / 2 << ") rotate(90)\" text-anchor=\"middle\">"
       << escape(options.right_label) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const Range& yr = s.axis == Axis::kRight ? right : left;
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << px(s.x[i]) << ',' << py(s.y[i], yr);
    }
    os << "\"/>\n";
  }

  os << "<g class=\"legend\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double ly = mt + 10 + 18 * static_cast<double>(k);
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<line x1=\"" << ml + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + 34 << "\" y2=\"" << ly << "\" stroke=\""
       << color << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << ml + 40 << "\" y=\"" << ly + 4 << "\">" << escape(series[k].name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg_plot(std::span<const PlotSeries> series, const std::filesystem::path& path,
                   const PlotOptions& options) {
  const std::string svg = render_svg_plot(series, options);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write plot to " + path.string());
  out << svg;
  if (!out) throw std::runtime_error("failed writing plot to " + path.string());
}

}  // namespace qroute::harness
