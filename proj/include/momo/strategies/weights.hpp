#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "momo/core/dominance.hpp"
#include "momo/core/random.hpp"

namespace momo {

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(r));
}

// Simplex-lattice points: every m-vector of multiples of 1/p summing to 1,
// C(m + p - 1, p) of them.
inline std::vector<std::vector<double>> das_dennis(std::size_t m, std::size_t p) {
  if (m < 2) throw DimensionError("das_dennis needs at least two objectives");
  if (p < 1) throw ConfigError("das_dennis needs at least one division");
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> c(m, 0);
  auto rec = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k + 1 == m) {
      c[k] = left;
      std::vector<double> w(m);
      for (std::size_t i = 0; i < m; ++i) w[i] = static_cast<double>(c[i]) / static_cast<double>(p);
      out.push_back(std::move(w));
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      c[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, p);
  return out;
}

// Largest division count whose lattice has at most `limit` points (at least 1).
inline std::size_t das_dennis_divisions(std::size_t m, std::size_t limit) {
  std::size_t p = 1;
  while (binomial(m + p, p + 1) <= limit) ++p;
  return p;
}

// Uniform random point on the unit simplex.
inline std::vector<double> random_simplex_point(std::size_t m, Rng& rng) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (auto& v : w) {
    v = -std::log(1.0 - rng.uniform());
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

inline constexpr double tchebycheff_zero_weight = 1e-6;

// max_i w_i |f_i - z_i| with zero weights replaced by 1e-6.
inline double tchebycheff(std::span<const double> lambda, std::span<const double> f, std::span<const double> ideal) {
  detail::check_same_length(lambda.size(), f.size());
  detail::check_same_length(ideal.size(), f.size());
  double g = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double const w = lambda[i] == 0.0 ? tchebycheff_zero_weight : lambda[i];
    g = std::max(g, w * std::abs(f[i] - ideal[i]));
  }
  return g;
}

struct WeightVectorSet {
  std::vector<std::vector<double>> weights;
  std::size_t neighborhood_size = 0;
  // neighbors[i] lists the T closest weights to weights[i] (itself first),
  // sorted by euclidean distance.
  std::vector<std::vector<std::size_t>> neighbors;

  std::size_t size() const noexcept { return weights.size(); }

  static WeightVectorSet build(std::vector<std::vector<double>> weights, std::size_t t) {
    WeightVectorSet s;
    s.weights = std::move(weights);
    s.neighborhood_size = std::min(std::max<std::size_t>(t, 1), s.weights.size());
    std::size_t const n = s.weights.size();
    s.neighbors.resize(n);
    std::vector<std::pair<double, std::size_t>> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[j] = {distance(s.weights[i], s.weights[j]), j};
      std::stable_sort(d.begin(), d.end(), [&](auto const& a, auto const& b) {
        if (a.first != b.first) return a.first < b.first;
        return (a.second == i) > (b.second == i);
      });
      for (std::size_t k = 0; k < s.neighborhood_size; ++k) s.neighbors[i].push_back(d[k].second);
    }
    return s;
  }
};

} // namespace momo
