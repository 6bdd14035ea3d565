#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "momo/core/error.hpp"
#include "momo/core/fitness.hpp"
#include "momo/core/solution.hpp"

namespace momo {

enum class Dominance { a_dominates, b_dominates, non_dominated, equal };

// Which of two candidates a comparator prefers.
enum class Preference { first, second, indifferent };

namespace detail {
inline void check_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("vector lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}
} // namespace detail

// Pareto dominance for minimization-oriented vectors.
inline Dominance dominates(std::span<const double> a, std::span<const double> b) {
  detail::check_same_length(a.size(), b.size());
  bool a_better = false;
  bool b_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) {
      a_better = true;
    } else if (b[k] < a[k]) {
      b_better = true;
    }
    if (a_better && b_better) return Dominance::non_dominated;
  }
  if (a_better) return Dominance::a_dominates;
  if (b_better) return Dominance::b_dominates;
  return Dominance::equal;
}

inline Dominance dominates(std::span<const double> a, std::span<const double> b, ObjectiveSense const& sense) {
  detail::check_same_length(a.size(), b.size());
  detail::check_same_length(a.size(), sense.size());
  bool a_better = false;
  bool b_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double const x = sense.orient(k, a[k]);
    double const y = sense.orient(k, b[k]);
    if (x < y) {
      a_better = true;
    } else if (y < x) {
      b_better = true;
    }
    if (a_better && b_better) return Dominance::non_dominated;
  }
  if (a_better) return Dominance::a_dominates;
  if (b_better) return Dominance::b_dominates;
  return Dominance::equal;
}

// a <= b componentwise (minimization).
inline bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
  detail::check_same_length(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
  }
  return true;
}

// Feasibility first, then lower degree of infeasibility, then objective dominance.
inline Dominance constrained_dominance(std::span<const double> fa, ConstraintRecord const& ca,
                                       std::span<const double> fb, ConstraintRecord const& cb) {
  bool const a_ok = ca.feasible();
  bool const b_ok = cb.feasible();
  if (a_ok && !b_ok) return Dominance::a_dominates;
  if (!a_ok && b_ok) return Dominance::b_dominates;
  if (!a_ok && !b_ok) {
    double const da = ca.degree_of_infeasibility();
    double const db = cb.degree_of_infeasibility();
    if (da < db) return Dominance::a_dominates;
    if (db < da) return Dominance::b_dominates;
    return Dominance::non_dominated;
  }
  return dominates(fa, fb);
}

inline Preference to_preference(Dominance d) {
  switch (d) {
  case Dominance::a_dominates: return Preference::first;
  case Dominance::b_dominates: return Preference::second;
  default: return Preference::indifferent;
  }
}

using FitnessComparator = std::function<Preference(Solution const&, Solution const&)>;

inline FitnessComparator pareto_comparator(ObjectiveSense sense) {
  return [sense = std::move(sense)](Solution const& a, Solution const& b) {
    return to_preference(dominates(a.objectives(), b.objectives(), sense));
  };
}

// Feasible beats infeasible, the smaller violation wins among infeasible
// solutions, and `fitness_cmp` decides between two feasible ones.
inline Preference constrained_compare(Solution const& a, Solution const& b, FitnessComparator const& fitness_cmp) {
  if (!a.evaluated() || !b.evaluated()) {
    throw StateError("constrained_compare requires evaluated solutions");
  }
  bool const a_ok = a.constraints.feasible();
  bool const b_ok = b.constraints.feasible();
  if (a_ok && !b_ok) return Preference::first;
  if (!a_ok && b_ok) return Preference::second;
  if (!a_ok && !b_ok) {
    double const da = a.constraints.degree_of_infeasibility();
    double const db = b.constraints.degree_of_infeasibility();
    if (da < db) return Preference::first;
    if (db < da) return Preference::second;
    return Preference::indifferent;
  }
  return fitness_cmp(a, b);
}

// Minimization-oriented objective vectors and constraint records of a
// population, the form every strategy works on internally.
struct OrientedSet {
  std::vector<std::vector<double>> f;
  std::vector<ConstraintRecord> c;

  std::size_t size() const noexcept { return f.size(); }

  Dominance compare(std::size_t i, std::size_t j) const { return constrained_dominance(f[i], c[i], f[j], c[j]); }
};

inline OrientedSet orient(std::span<const Solution> pop, ObjectiveSense const& sense) {
  OrientedSet s;
  s.f.reserve(pop.size());
  s.c.reserve(pop.size());
  for (auto const& x : pop) {
    s.f.push_back(sense.orient(x.objectives()));
    s.c.push_back(x.constraints);
  }
  return s;
}

inline OrientedSet orient(std::vector<std::vector<double>> points) {
  OrientedSet s;
  s.c.resize(points.size());
  s.f = std::move(points);
  return s;
}

// Indices of members not dominated by any other member (pure objective dominance).
inline std::vector<std::size_t> nondominated_indices(std::span<const std::vector<double>> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]) == Dominance::a_dominates;
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

// Members not dominated by any other member. Objective-space duplicates are
// kept once per distinct decision vector.
inline Population pareto_filter(std::span<const Solution> set, ObjectiveSense const& sense) {
  std::vector<std::vector<double>> pts;
  pts.reserve(set.size());
  for (auto const& s : set) pts.push_back(sense.orient(s.objectives()));
  Population out;
  for (std::size_t i : nondominated_indices(pts)) {
    bool duplicate = std::any_of(out.begin(), out.end(), [&](Solution const& kept) {
      return kept.objectives() == set[i].objectives() && kept.genotype == set[i].genotype;
    });
    if (!duplicate) out.push_back(set[i]);
  }
  return out;
}

enum class Metric { euclidean, manhattan };

inline double distance(std::span<const double> a, std::span<const double> b, Metric metric = Metric::euclidean) {
  detail::check_same_length(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double const d = a[k] - b[k];
    acc += metric == Metric::euclidean ? d * d : std::abs(d);
  }
  return metric == Metric::euclidean ? std::sqrt(acc) : acc;
}

// Fast non-dominated sorting under constrained dominance. Front 0 is the
// non-dominated set; indices within a front are ascending.
inline std::vector<std::vector<std::size_t>> nondominated_fronts(OrientedSet const& set) {
  std::size_t const n = set.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> counter(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      switch (set.compare(i, j)) {
      case Dominance::a_dominates:
        dominated_by_me[i].push_back(j);
        ++counter[j];
        break;
      case Dominance::b_dominates:
        dominated_by_me[j].push_back(i);
        ++counter[i];
        break;
      default: break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (counter[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by_me[i]) {
        if (--counter[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

// Crowding distance of each member of `front` (indices into points), aligned
// with `front`. Boundary members get +inf.
inline std::vector<double> crowding_distances(std::span<const std::vector<double>> points,
                                              std::span<const std::size_t> front) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::size_t const n = front.size();
  std::vector<double> d(n, 0.0);
  if (n == 0) return d;
  if (n <= 2) {
    std::fill(d.begin(), d.end(), inf);
    return d;
  }
  std::size_t const m = points[front[0]].size();
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[front[a]][k] < points[front[b]][k]; });
    double const lo = points[front[order.front()]][k];
    double const hi = points[front[order.back()]][k];
    d[order.front()] = inf;
    d[order.back()] = inf;
    if (hi == lo) continue;
    for (std::size_t r = 1; r + 1 < n; ++r) {
      d[order[r]] += (points[front[order[r + 1]]][k] - points[front[order[r - 1]]][k]) / (hi - lo);
    }
  }
  return d;
}

} // namespace momo
