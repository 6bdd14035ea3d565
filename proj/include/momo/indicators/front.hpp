#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "momo/core/dominance.hpp"

namespace momo {

using Point = std::vector<double>;

// Objective-space approximation set. `maximize` holds one flag per objective;
// an empty vector means all objectives are minimized.
struct Front {
  Front() = default;
  Front(std::vector<Point> pts, std::vector<bool> max = {}, std::string name = {})
      : points(std::move(pts)), maximize(std::move(max)), label(std::move(name)) {}

  std::vector<Point> points;
  std::vector<bool> maximize;
  std::string label;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  std::size_t dimension() const noexcept { return points.empty() ? maximize.size() : points.front().size(); }

  // Minimization-oriented copy of the points.
  std::vector<Point> oriented() const {
    std::vector<Point> out = points;
    if (maximize.empty()) return out;
    for (auto& p : out) {
      detail::check_same_length(p.size(), maximize.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (maximize[k]) p[k] = -p[k];
      }
    }
    return out;
  }

  // Builds a front keeping only mutually non-dominated, distinct points.
  static Front nondominated(std::vector<Point> points, std::vector<bool> maximize = {}, std::string label = {}) {
    Front raw{std::move(points), std::move(maximize), std::move(label)};
    auto const oriented = raw.oriented();
    for (auto const& p : oriented) detail::check_same_length(p.size(), oriented.front().size());
    Front out{{}, raw.maximize, raw.label};
    std::vector<Point> kept_oriented;
    for (std::size_t i : nondominated_indices(oriented)) {
      if (std::find(kept_oriented.begin(), kept_oriented.end(), oriented[i]) != kept_oriented.end()) continue;
      kept_oriented.push_back(oriented[i]);
      out.points.push_back(raw.points[i]);
    }
    return out;
  }
};

// Non-dominated union of several fronts with exact duplicates collapsed.
inline Front build_reference_front(std::vector<Front> const& fronts) {
  std::vector<Point> all;
  std::vector<bool> maximize;
  for (auto const& f : fronts) {
    if (!f.maximize.empty()) {
      if (!maximize.empty() && maximize != f.maximize) throw DimensionError("fronts disagree on objective sense");
      maximize = f.maximize;
    }
    all.insert(all.end(), f.points.begin(), f.points.end());
  }
  if (all.empty()) return Front{{}, maximize, "reference"};
  return Front::nondominated(std::move(all), maximize, "reference");
}

struct ScalingResult {
  std::vector<Front> fronts;
  std::vector<std::string> warnings;
};

// Min-max normalization per objective using the reference front's extremes.
// A degenerate objective (max == min) maps to 0 and produces a warning.
inline ScalingResult scale_fronts(std::vector<Front> const& fronts, Front const& reference) {
  if (reference.empty()) throw StateError("cannot scale against an empty reference front");
  std::size_t const m = reference.dimension();
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (auto const& p : reference.points) {
    detail::check_same_length(p.size(), m);
    for (std::size_t k = 0; k < m; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  ScalingResult out;
  for (std::size_t k = 0; k < m; ++k) {
    if (hi[k] == lo[k]) out.warnings.push_back("objective " + std::to_string(k) + " is degenerate in the reference front");
  }
  for (auto const& f : fronts) {
    Front s{{}, f.maximize, f.label};
    for (auto const& p : f.points) {
      detail::check_same_length(p.size(), m);
      Point q(m);
      for (std::size_t k = 0; k < m; ++k) q[k] = hi[k] == lo[k] ? 0.0 : (p[k] - lo[k]) / (hi[k] - lo[k]);
      s.points.push_back(std::move(q));
    }
    out.fronts.push_back(std::move(s));
  }
  return out;
}

} // namespace momo
