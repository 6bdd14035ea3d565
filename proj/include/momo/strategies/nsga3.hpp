#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "momo/strategies/strategy.hpp"
#include "momo/strategies/weights.hpp"

namespace momo {

namespace detail {

// Solves a x = b by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  std::size_t const n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double const f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

} // namespace detail

// Perpendicular distance from `p` to the line through the origin along `dir`.
inline double perpendicular_distance(std::span<const double> p, std::span<const double> dir) {
  detail::check_same_length(p.size(), dir.size());
  double dot = 0.0, norm2 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    dot += p[k] * dir[k];
    norm2 += dir[k] * dir[k];
  }
  double const t = norm2 > 0.0 ? dot / norm2 : 0.0;
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double const e = p[k] - t * dir[k];
    d += e * e;
  }
  return std::sqrt(d);
}

// Normalizes `points` (minimization orientation) by the ideal point and the
// intercepts of the hyperplane through the extreme points. Falls back to
// ideal/nadir min-max scaling when the hyperplane is degenerate.
inline std::vector<std::vector<double>> nsga3_normalize(std::vector<std::vector<double>> const& points,
                                                        std::vector<std::size_t> const& first_front) {
  std::size_t const n = points.size();
  std::size_t const m = points.front().size();
  std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
  for (auto const& p : points) {
    for (std::size_t k = 0; k < m; ++k) ideal[k] = std::min(ideal[k], p[k]);
  }
  std::vector<std::vector<double>> t(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) t[i][k] = points[i][k] - ideal[k];
  }
  std::vector<std::vector<double>> extremes(m);
  for (std::size_t j = 0; j < m; ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double asf = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m; ++k) asf = std::max(asf, t[i][k] / (k == j ? 1.0 : 1e-6));
      if (asf < best) {
        best = asf;
        arg = i;
      }
    }
    extremes[j] = t[arg];
  }
  std::vector<double> intercept(m, 0.0);
  bool ok = false;
  if (auto x = detail::solve_linear(extremes, std::vector<double>(m, 1.0))) {
    ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      double const a = 1.0 / (*x)[k];
      ok = std::isfinite(a) && a > 1e-10;
      intercept[k] = a;
    }
  }
  if (!ok) {
    for (std::size_t k = 0; k < m; ++k) {
      double worst = 0.0;
      for (auto i : first_front) worst = std::max(worst, t[i][k]);
      if (worst <= 1e-10) {
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, t[i][k]);
      }
      intercept[k] = worst > 1e-10 ? worst : 1.0;
    }
  }
  for (auto& p : t) {
    for (std::size_t k = 0; k < m; ++k) p[k] /= intercept[k];
  }
  return t;
}

struct Association {
  std::vector<std::size_t> reference;
  std::vector<double> distance;
};

inline Association nsga3_associate(std::vector<std::vector<double>> const& normalized,
                                   std::vector<std::vector<double>> const& refs) {
  Association a;
  a.reference.resize(normalized.size());
  a.distance.resize(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      double const d = perpendicular_distance(normalized[i], refs[r]);
      if (d < best) {
        best = d;
        a.reference[i] = r;
      }
    }
    a.distance[i] = best;
  }
  return a;
}

// Selects `n` survivors from `pool` (indices are positions in `pool`).
inline std::vector<std::size_t> nsga3_select(Population const& pool, ObjectiveSense const& sense,
                                             std::vector<std::vector<double>> const& refs, std::size_t n, Rng& rng) {
  auto const set = orient(pool, sense);
  auto const fronts = nondominated_fronts(set);
  std::vector<std::size_t> chosen;
  std::size_t last = 0;
  std::vector<std::size_t> candidates;
  for (; last < fronts.size(); ++last) {
    if (chosen.size() + fronts[last].size() > n) break;
    chosen.insert(chosen.end(), fronts[last].begin(), fronts[last].end());
    if (chosen.size() == n) return chosen;
  }
  if (last == fronts.size()) return chosen;
  std::vector<std::size_t> st = chosen;
  st.insert(st.end(), fronts[last].begin(), fronts[last].end());
  std::vector<std::vector<double>> pts;
  for (auto i : st) pts.push_back(set.f[i]);
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (std::find(fronts[0].begin(), fronts[0].end(), st[i]) != fronts[0].end()) first.push_back(i);
  }
  auto const norm = nsga3_normalize(pts, first);
  auto const assoc = nsga3_associate(norm, refs);

  std::vector<std::size_t> niche(refs.size(), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) ++niche[assoc.reference[i]];
  // Members of the last front, by local position within st.
  std::vector<std::vector<std::size_t>> members(refs.size());
  for (std::size_t i = chosen.size(); i < st.size(); ++i) members[assoc.reference[i]].push_back(i);
  std::vector<bool> excluded(refs.size(), false);
  std::size_t need = n - chosen.size();
  std::vector<std::size_t> lowest;
  while (need > 0) {
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    lowest.clear();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      if (excluded[r]) continue;
      if (niche[r] < min_count) {
        min_count = niche[r];
        lowest.clear();
      }
      if (niche[r] == min_count) lowest.push_back(r);
    }
    std::size_t const r = lowest[rng.index(lowest.size())];
    auto& cand = members[r];
    if (cand.empty()) {
      excluded[r] = true;
      continue;
    }
    std::size_t pos;
    if (niche[r] == 0) {
      pos = 0;
      for (std::size_t c = 1; c < cand.size(); ++c) {
        if (assoc.distance[cand[c]] < assoc.distance[cand[pos]]) pos = c;
      }
    } else {
      pos = rng.index(cand.size());
    }
    chosen.push_back(st[cand[pos]]);
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pos));
    ++niche[r];
    --need;
  }
  return chosen;
}

inline Population nsga3_environmental(Population const& pool, ObjectiveSense const& sense,
                                      std::vector<std::vector<double>> const& refs, std::size_t n, Rng& rng) {
  return detail::pick(pool, nsga3_select(pool, sense, refs, n, rng));
}

// Reference-point NSGA-III. Mating is a binary tournament on feasibility only
// (uniform among feasible parents); no fitness is assigned before mating.
class Nsga3 final : public Strategy {
public:
  explicit Nsga3(std::size_t divisions = 0) : divisions_(divisions) {}

  std::string id() const override { return "nsga3"; }

  void bind(ObjectiveSense sense, std::size_t population_size, Rng& rng) override {
    Strategy::bind(std::move(sense), population_size, rng);
    std::size_t const m = sense_.size();
    std::size_t const p = divisions_ ? divisions_ : das_dennis_divisions(m, population_size);
    refs_ = das_dennis(m, p);
  }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    return detail::tournament_parents(
        pop, population_size_, [&](std::size_t i, std::size_t j) { return detail::feasibility_preference(pop[i], pop[j]); },
        rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng& rng) override {
    require_bound();
    return nsga3_environmental(detail::concat(pop, offspring), sense_, refs_, population_size_, rng);
  }

  std::vector<std::vector<double>> const& references() const noexcept { return refs_; }

private:
  std::size_t divisions_;
  std::vector<std::vector<double>> refs_;
};

} // namespace momo
