#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "momo/indicators/front.hpp"
#include "momo/indicators/hypervolume.hpp"

namespace momo {

// All indicators orient maximized objectives by negation before computing.
namespace indicator {

inline std::vector<std::string> unary_ids() { return {"hypervolume", "onvg", "spacing"}; }
inline std::vector<std::string> binary_ids() {
  return {"coverage", "eps_add", "eps_mult", "gd", "gen_spread", "igd", "max_pf_error"};
}

// Whether larger values are better (used to mark best cells in reports).
inline bool higher_is_better(std::string_view id) { return id == "hypervolume" || id == "coverage" || id == "onvg"; }

namespace detail {
inline double nearest(Point const& x, std::vector<Point> const& set) {
  double best = std::numeric_limits<double>::infinity();
  for (auto const& y : set) best = std::min(best, distance(x, y));
  return best;
}

inline void check_pair(Front const& a, Front const& r) {
  if (r.empty()) throw DomainError("reference set must not be empty");
  if (a.empty()) throw DomainError("approximation set must not be empty");
  momo::detail::check_same_length(a.dimension(), r.dimension());
}
} // namespace detail

inline HypervolumeResult hypervolume(Front const& front, Point const& reference, HypervolumeOptions const& opt = {}) {
  Front ref{{reference}, front.maximize, {}};
  auto const pts = front.oriented();
  auto const r = ref.oriented().front();
  return momo::hypervolume(pts, r, opt);
}

// Schott's spacing: standard deviation of nearest-neighbour L1 distances.
inline double spacing(Front const& front) {
  auto const pts = front.oriented();
  std::size_t const n = pts.size();
  if (n < 2) return 0.0;
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i] = std::min(d[i], distance(pts[i], pts[j], Metric::manhattan));
    }
  }
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

inline double onvg(Front const& front) { return static_cast<double>(front.size()); }

// GD = sqrt(sum d_i^2) / |A|, d_i the distance from a_i to its nearest
// reference point.
inline double generational_distance(Front const& a, Front const& r) {
  detail::check_pair(a, r);
  auto const pa = a.oriented();
  auto const pr = r.oriented();
  double sum = 0.0;
  for (auto const& x : pa) {
    double const d = detail::nearest(x, pr);
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(pa.size());
}

inline double inverted_generational_distance(Front const& a, Front const& r) { return generational_distance(r, a); }

inline double maximum_pf_error(Front const& a, Front const& r) {
  detail::check_pair(a, r);
  auto const pa = a.oriented();
  auto const pr = r.oriented();
  double worst = 0.0;
  for (auto const& x : pa) worst = std::max(worst, detail::nearest(x, pr));
  return worst;
}

// Smallest shift by which A weakly dominates every reference point.
inline double epsilon_additive(Front const& a, Front const& r) {
  detail::check_pair(a, r);
  auto const pa = a.oriented();
  auto const pr = r.oriented();
  double eps = -std::numeric_limits<double>::infinity();
  for (auto const& y : pr) {
    double best = std::numeric_limits<double>::infinity();
    for (auto const& x : pa) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, x[k] - y[k]);
      best = std::min(best, worst);
    }
    eps = std::max(eps, best);
  }
  return eps;
}

// Multiplicative analogue; all oriented values must be strictly positive.
inline double epsilon_multiplicative(Front const& a, Front const& r) {
  detail::check_pair(a, r);
  auto const pa = a.oriented();
  auto const pr = r.oriented();
  for (auto const* set : {&pa, &pr}) {
    for (auto const& p : *set) {
      for (double v : p) {
        if (!(v > 0.0)) throw DomainError("multiplicative epsilon requires strictly positive objective values");
      }
    }
  }
  double eps = 0.0;
  for (auto const& y : pr) {
    double best = std::numeric_limits<double>::infinity();
    for (auto const& x : pa) {
      double worst = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, x[k] / y[k]);
      best = std::min(best, worst);
    }
    eps = std::max(eps, best);
  }
  return eps;
}

// Generalized spread. Extremes are the reference points maximal in each
// objective; distances are euclidean nearest-neighbour distances within A.
inline double generalized_spread(Front const& a, Front const& r) {
  detail::check_pair(a, r);
  auto const pa = a.oriented();
  auto const pr = r.oriented();
  std::size_t const m = pr.front().size();
  if (pa.size() < 2) return 1.0;
  double extremes = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    auto const it = std::max_element(pr.begin(), pr.end(), [k](auto const& x, auto const& y) { return x[k] < y[k]; });
    extremes += detail::nearest(*it, pa);
  }
  std::size_t const n = pa.size();
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i] = std::min(d[i], distance(pa[i], pa[j]));
    }
  }
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(n);
  double dev = 0.0;
  for (double v : d) dev += std::abs(v - mean);
  double const denom = extremes + static_cast<double>(n) * mean;
  if (denom == 0.0) return extremes + dev == 0.0 ? 0.0 : 1.0;
  return (extremes + dev) / denom;
}

// Fraction of B weakly dominated by at least one member of A.
inline double coverage(Front const& a, Front const& b) {
  if (b.empty()) throw DomainError("coverage of an empty set is undefined");
  auto const pa = a.oriented();
  auto const pb = b.oriented();
  std::size_t covered = 0;
  for (auto const& y : pb) {
    if (std::any_of(pa.begin(), pa.end(), [&](auto const& x) { return weakly_dominates(x, y); })) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(pb.size());
}

struct UnaryParams {
  std::optional<Point> reference;
  HypervolumeOptions hv;
};

inline double unary(std::string_view id, Front const& front, UnaryParams const& params = {}) {
  if (id == "hypervolume") {
    if (!params.reference) throw ConfigError("hypervolume requires a reference point");
    return hypervolume(front, *params.reference, params.hv).value;
  }
  if (front.empty()) throw DomainError("unary indicator of an empty front");
  if (id == "spacing") return spacing(front);
  if (id == "onvg") return onvg(front);
  throw ConfigError("unknown unary indicator '" + std::string(id) + "'");
}

inline double binary(std::string_view id, Front const& a, Front const& r) {
  if (id == "gd") return generational_distance(a, r);
  if (id == "igd") return inverted_generational_distance(a, r);
  if (id == "eps_mult") return epsilon_multiplicative(a, r);
  if (id == "eps_add") return epsilon_additive(a, r);
  if (id == "gen_spread") return generalized_spread(a, r);
  if (id == "max_pf_error") return maximum_pf_error(a, r);
  if (id == "coverage") return coverage(a, r);
  throw ConfigError("unknown binary indicator '" + std::string(id) + "'");
}

inline bool is_unary(std::string_view id) {
  auto const ids = unary_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

inline bool is_binary(std::string_view id) {
  auto const ids = binary_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

} // namespace indicator
} // namespace momo
