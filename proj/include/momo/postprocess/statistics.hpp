#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "momo/core/error.hpp"

namespace momo {

struct KruskalResult {
  double h = 0.0;
  std::size_t df = 0;
  double p = 1.0;
};

// Mid-ranks (1-based) of the values; ties share the average of their ranks.
inline std::vector<double> mid_ranks(std::vector<double> const& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double const r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

// Kruskal-Wallis H with tie correction; p from the chi-square upper tail with
// k - 1 degrees of freedom.
inline KruskalResult kruskal_wallis(std::vector<std::vector<double>> const& groups) {
  if (groups.size() < 2) throw DomainError("Kruskal-Wallis needs at least two groups");
  std::vector<double> all;
  for (auto const& g : groups) {
    if (g.empty()) throw DomainError("Kruskal-Wallis groups must not be empty");
    for (double v : g) {
      if (!std::isfinite(v)) throw DomainError("Kruskal-Wallis values must be finite");
    }
    all.insert(all.end(), g.begin(), g.end());
  }
  auto const n = static_cast<double>(all.size());
  if (all.size() < 3) throw DomainError("Kruskal-Wallis needs at least three observations");
  auto const ranks = mid_ranks(all);
  double sum = 0.0;
  std::size_t offset = 0;
  for (auto const& g : groups) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
    offset += g.size();
    sum += r * r / static_cast<double>(g.size());
  }
  KruskalResult out;
  out.df = groups.size() - 1;
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    auto const t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  double const correction = 1.0 - ties / (n * n * n - n);
  if (correction <= 0.0) return {0.0, out.df, 1.0};
  out.h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
  out.h = std::max(out.h, 0.0);
  out.p = boost::math::gamma_q(0.5 * static_cast<double>(out.df), 0.5 * out.h);
  return out;
}

} // namespace momo
