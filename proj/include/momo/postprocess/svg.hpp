#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "momo/core/error.hpp"

namespace momo::svg {

struct BoxStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

// Linear-interpolation quantile of sorted data (R's default type 7).
inline double quantile(std::vector<double> const& sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of empty data");
  double const h = (static_cast<double>(sorted.size()) - 1.0) * q;
  auto const lo = static_cast<std::size_t>(std::floor(h));
  auto const hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Quartile box with whiskers at the most extreme data within 1.5 IQR.
inline BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw DomainError("boxplot of an empty group");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.q1 = quantile(values, 0.25);
  b.median = quantile(values, 0.5);
  b.q3 = quantile(values, 0.75);
  double const iqr = b.q3 - b.q1;
  double const lo = b.q1 - 1.5 * iqr;
  double const hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : values) {
    if (v < lo || v > hi) {
      b.outliers.push_back(v);
      continue;
    }
    b.whisker_low = std::min(b.whisker_low, v);
    b.whisker_high = std::max(b.whisker_high, v);
  }
  return b;
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

inline void header(std::ostringstream& os, double w, double h, std::string const& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  os << "<style>text{font-family:sans-serif;font-size:12px}.title{font-size:14px;font-weight:bold}"
        ".axis{stroke:#333;stroke-width:1}.line{fill:none;stroke:#1f77b4;stroke-opacity:0.5}"
        ".box{fill:#cfe2f3;stroke:#333}.median{stroke:#c00;stroke-width:2}.whisker{stroke:#333}"
        ".outlier{fill:none;stroke:#333}</style>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text class=\"title\" x=\"" << num(w / 2) << "\" y=\"20\" text-anchor=\"middle\">" << escape(title)
     << "</text>\n";
}

// Maps [lo, hi] onto [top + height, top]; a degenerate range maps to the middle.
struct Scale {
  double lo, hi, top, height;
  double operator()(double v) const {
    if (hi == lo) return top + height / 2;
    return top + height * (1.0 - (v - lo) / (hi - lo));
  }
};

} // namespace detail

// One polyline per point over m vertical axes labelled obj_0..obj_{m-1}, each
// scaled to its own data range with min/max ticks.
inline std::string parallel_coordinates(std::vector<std::vector<double>> const& points, std::string const& title) {
  if (points.empty()) throw DomainError("parallel coordinates of an empty front");
  std::size_t const m = points.front().size();
  if (m < 2) throw DimensionError("parallel coordinates need at least two objectives");
  double const left = 60, top = 40, plot_h = 300;
  double const gap = 120;
  double const width = left * 2 + gap * static_cast<double>(m - 1);
  double const height = top + plot_h + 60;
  std::vector<detail::Scale> scales;
  for (std::size_t k = 0; k < m; ++k) {
    double lo = points.front()[k], hi = lo;
    for (auto const& p : points) {
      if (p.size() != m) throw DimensionError("points of different dimension");
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    scales.push_back({lo, hi, top, plot_h});
  }
  std::ostringstream os;
  detail::header(os, width, height, title);
  for (auto const& p : points) {
    os << "<polyline class=\"line\" points=\"";
    for (std::size_t k = 0; k < m; ++k) {
      os << (k ? " " : "") << detail::num(left + gap * static_cast<double>(k)) << ',' << detail::num(scales[k](p[k]));
    }
    os << "\"/>\n";
  }
  for (std::size_t k = 0; k < m; ++k) {
    double const x = left + gap * static_cast<double>(k);
    os << "<line class=\"axis\" x1=\"" << detail::num(x) << "\" y1=\"" << detail::num(top) << "\" x2=\""
       << detail::num(x) << "\" y2=\"" << detail::num(top + plot_h) << "\"/>\n";
    os << "<text x=\"" << detail::num(x) << "\" y=\"" << detail::num(top + plot_h + 35)
       << "\" text-anchor=\"middle\">obj_" << k << "</text>\n";
    os << "<text class=\"tick\" x=\"" << detail::num(x + 4) << "\" y=\"" << detail::num(top - 4) << "\">"
       << detail::label(scales[k].hi) << "</text>\n";
    os << "<text class=\"tick\" x=\"" << detail::num(x + 4) << "\" y=\"" << detail::num(top + plot_h + 14) << "\">"
       << detail::label(scales[k].lo) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Box, median, whiskers and outlier dots per labelled group on a shared axis.
inline std::string boxplot(std::vector<std::pair<std::string, std::vector<double>>> const& groups,
                           std::string const& title) {
  if (groups.empty()) throw DomainError("boxplot without groups");
  double lo = 0, hi = 0;
  bool first = true;
  std::vector<BoxStats> stats;
  for (auto const& [name, values] : groups) {
    stats.push_back(box_stats(values));
    for (double v : values) {
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
  }
  double const left = 70, top = 40, plot_h = 300, slot = 100;
  double const width = left + slot * static_cast<double>(groups.size()) + 20;
  double const height = top + plot_h + 50;
  double const pad = hi > lo ? 0.05 * (hi - lo) : 0.0;
  detail::Scale const y{lo - pad, hi + pad, top, plot_h};
  std::ostringstream os;
  detail::header(os, width, height, title);
  os << "<line class=\"axis\" x1=\"" << detail::num(left) << "\" y1=\"" << detail::num(top) << "\" x2=\""
     << detail::num(left) << "\" y2=\"" << detail::num(top + plot_h) << "\"/>\n";
  os << "<text class=\"tick\" x=\"" << detail::num(left - 6) << "\" y=\"" << detail::num(y(hi) + 4)
     << "\" text-anchor=\"end\">" << detail::label(hi) << "</text>\n";
  os << "<text class=\"tick\" x=\"" << detail::num(left - 6) << "\" y=\"" << detail::num(y(lo) + 4)
     << "\" text-anchor=\"end\">" << detail::label(lo) << "</text>\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto const& b = stats[g];
    double const cx = left + slot * (static_cast<double>(g) + 0.5);
    double const half = slot * 0.3;
    os << "<g class=\"group\" data-label=\"" << detail::escape(groups[g].first) << "\">\n";
    os << "<line class=\"whisker\" x1=\"" << detail::num(cx) << "\" y1=\"" << detail::num(y(b.whisker_high))
       << "\" x2=\"" << detail::num(cx) << "\" y2=\"" << detail::num(y(b.q3)) << "\"/>\n";
    os << "<line class=\"whisker\" x1=\"" << detail::num(cx) << "\" y1=\"" << detail::num(y(b.q1)) << "\" x2=\""
       << detail::num(cx) << "\" y2=\"" << detail::num(y(b.whisker_low)) << "\"/>\n";
    for (double w : {b.whisker_low, b.whisker_high}) {
      os << "<line class=\"whisker\" x1=\"" << detail::num(cx - half / 2) << "\" y1=\"" << detail::num(y(w))
         << "\" x2=\"" << detail::num(cx + half / 2) << "\" y2=\"" << detail::num(y(w)) << "\"/>\n";
    }
    os << "<rect class=\"box\" x=\"" << detail::num(cx - half) << "\" y=\"" << detail::num(y(b.q3))
       << "\" width=\"" << detail::num(2 * half) << "\" height=\"" << detail::num(y(b.q1) - y(b.q3)) << "\"/>\n";
    os << "<line class=\"median\" x1=\"" << detail::num(cx - half) << "\" y1=\"" << detail::num(y(b.median))
       << "\" x2=\"" << detail::num(cx + half) << "\" y2=\"" << detail::num(y(b.median)) << "\"/>\n";
    for (double o : b.outliers) {
      os << "<circle class=\"outlier\" cx=\"" << detail::num(cx) << "\" cy=\"" << detail::num(y(o))
         << "\" r=\"3\"/>\n";
    }
    os << "<text x=\"" << detail::num(cx) << "\" y=\"" << detail::num(top + plot_h + 20)
       << "\" text-anchor=\"middle\">" << detail::escape(groups[g].first) << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace momo::svg
