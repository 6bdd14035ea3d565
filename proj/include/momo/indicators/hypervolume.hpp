#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "momo/core/dominance.hpp"
#include "momo/core/random.hpp"

namespace momo {

struct HypervolumeResult {
  double value = 0.0;
  double std_error = 0.0; // zero for exact computations
  bool exact = true;
};

struct HypervolumeOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  // Largest front handled by inclusion-exclusion when m >= 4.
  std::size_t inclusion_exclusion_limit = 12;
};

namespace hv {

inline void check_reference(std::span<const std::vector<double>> points, std::span<const double> ref) {
  for (auto const& p : points) {
    detail::check_same_length(p.size(), ref.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!(p[k] <= ref[k])) throw ConfigError("hypervolume reference point must be worse than every front point");
    }
  }
}

// Points weakly dominating `ref`; the others enclose no volume with it.
inline std::vector<std::vector<double>> inside(std::span<const std::vector<double>> points, std::span<const double> ref) {
  std::vector<std::vector<double>> out;
  for (auto const& p : points) {
    detail::check_same_length(p.size(), ref.size());
    if (weakly_dominates(p, ref)) out.push_back(p);
  }
  return out;
}

// Sort-and-sweep over the first objective (minimization).
inline double exact_2d(std::span<const std::vector<double>> points, std::span<const double> ref) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size());
  for (auto const& p : points) pts.emplace_back(p[0], p[1]);
  std::sort(pts.begin(), pts.end());
  double volume = 0.0;
  double best_y = ref[1];
  for (auto const& [x, y] : pts) {
    if (y < best_y) {
      volume += (ref[0] - x) * (best_y - y);
      best_y = y;
    }
  }
  return volume;
}

// Dimension sweep along the third objective; each slab is a 2-D problem.
inline double exact_3d(std::span<const std::vector<double>> points, std::span<const double> ref) {
  std::vector<std::vector<double>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](auto const& a, auto const& b) { return a[2] < b[2]; });
  double volume = 0.0;
  std::vector<std::vector<double>> active;
  double const ref2[2] = {ref[0], ref[1]};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    active.push_back({pts[i][0], pts[i][1]});
    double const top = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
    double const height = top - pts[i][2];
    if (height > 0.0) volume += height * exact_2d(active, ref2);
  }
  return volume;
}

// Inclusion-exclusion over all non-empty subsets; exponential in |points|.
inline double inclusion_exclusion(std::span<const std::vector<double>> points, std::span<const double> ref) {
  std::size_t const n = points.size();
  std::size_t const m = ref.size();
  double volume = 0.0;
  std::vector<double> corner(m);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::fill(corner.begin(), corner.end(), -std::numeric_limits<double>::infinity());
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        ++bits;
        for (std::size_t k = 0; k < m; ++k) corner[k] = std::max(corner[k], points[i][k]);
      }
    }
    double box = 1.0;
    for (std::size_t k = 0; k < m; ++k) box *= ref[k] - corner[k];
    volume += (bits % 2 == 1) ? box : -box;
  }
  return volume;
}

// Uniform sampling in the box spanned by the componentwise minimum and ref.
inline HypervolumeResult monte_carlo(std::span<const std::vector<double>> points, std::span<const double> ref,
                                     std::size_t samples, Rng& rng) {
  std::size_t const m = ref.size();
  HypervolumeResult r{0.0, 0.0, false};
  if (points.empty() || samples == 0) return r;
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  for (auto const& p : points) {
    for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], p[k]);
  }
  double box = 1.0;
  for (std::size_t k = 0; k < m; ++k) box *= ref[k] - lo[k];
  if (box == 0.0) return r;
  std::vector<double> s(m);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t k = 0; k < m; ++k) s[k] = rng.uniform(lo[k], ref[k]);
    for (auto const& p : points) {
      if (weakly_dominates(p, s)) {
        ++hits;
        break;
      }
    }
  }
  double const frac = static_cast<double>(hits) / static_cast<double>(samples);
  r.value = box * frac;
  r.std_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return r;
}

} // namespace hv

// Hypervolume of minimization-oriented points w.r.t. `ref`: exact for m <= 3
// and for small fronts at m >= 4, Monte Carlo otherwise.
inline HypervolumeResult hypervolume(std::span<const std::vector<double>> points, std::span<const double> ref,
                                     HypervolumeOptions const& opt = {}) {
  if (ref.size() < 2) throw DimensionError("hypervolume needs at least two objectives");
  hv::check_reference(points, ref);
  if (points.empty()) return {};
  switch (ref.size()) {
  case 2: return {hv::exact_2d(points, ref), 0.0, true};
  case 3: return {hv::exact_3d(points, ref), 0.0, true};
  default: break;
  }
  auto const nd = nondominated_indices(points);
  std::vector<std::vector<double>> reduced;
  for (auto i : nd) {
    if (std::find(reduced.begin(), reduced.end(), points[i]) == reduced.end()) reduced.push_back(points[i]);
  }
  if (reduced.size() <= opt.inclusion_exclusion_limit) return {hv::inclusion_exclusion(reduced, ref), 0.0, true};
  Rng rng(opt.seed);
  return hv::monte_carlo(reduced, ref, opt.samples, rng);
}

} // namespace momo
