#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "momo/strategies/strategy.hpp"

namespace momo {

inline constexpr std::size_t default_grea_divisions = 10;

// Grid environment over a set of points (minimization orientation).
struct Grid {
  std::vector<double> lower;
  std::vector<double> width;
  std::vector<std::vector<double>> coords;

  std::size_t size() const noexcept { return coords.size(); }
};

// Per objective: [min - d, max + d] with d = (max - min) / (2 div), split into
// div cells. A zero-range objective collapses to a single cell.
inline Grid grea_make_grid(std::vector<std::vector<double>> const& points, std::size_t div) {
  if (div == 0) throw ConfigError("GrEA divisions must be positive");
  Grid g;
  if (points.empty()) return g;
  std::size_t const m = points.front().size();
  g.lower.resize(m);
  g.width.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto const& p : points) {
      lo = std::min(lo, p[k]);
      hi = std::max(hi, p[k]);
    }
    double const d = (hi - lo) / (2.0 * static_cast<double>(div));
    g.lower[k] = lo - d;
    g.width[k] = (hi - lo + 2.0 * d) / static_cast<double>(div);
  }
  for (auto const& p : points) {
    std::vector<double> c(m);
    for (std::size_t k = 0; k < m; ++k) c[k] = g.width[k] > 0.0 ? std::floor((p[k] - g.lower[k]) / g.width[k]) : 0.0;
    g.coords.push_back(std::move(c));
  }
  return g;
}

inline double grid_rank(std::span<const double> coords) {
  double s = 0.0;
  for (double c : coords) s += c;
  return s;
}

inline double grid_difference(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

// Distance of a point to the utopian corner of its cell, in cell widths.
inline double grid_point_distance(std::span<const double> f, Grid const& g, std::size_t i) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (g.width[k] <= 0.0) continue;
    double const r = (f[k] - (g.lower[k] + g.coords[i][k] * g.width[k])) / g.width[k];
    s += r * r;
  }
  return std::sqrt(s);
}

inline bool grid_dominates(std::span<const double> a, std::span<const double> b) {
  return dominates(a, b) == Dominance::a_dominates;
}

// Sets grid coordinates and aux gr, gcd (neighbours: grid difference < m) and
// gcpd for every member of `pop`, with the grid built over `pop` itself.
inline void grea_grid(Population& pop, ObjectiveSense const& sense, std::size_t div) {
  auto const pts = detail::oriented_points(pop, sense);
  auto const g = grea_make_grid(pts, div);
  if (pop.empty()) return;
  auto const m = static_cast<double>(pts.front().size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    double gcd = 0.0;
    for (std::size_t j = 0; j < pop.size(); ++j) {
      if (j == i) continue;
      double const gd = grid_difference(g.coords[i], g.coords[j]);
      if (gd < m) gcd += m - gd;
    }
    auto& mo = pop[i].mo();
    mo.grid = g.coords[i];
    mo.set_aux(aux::grid_rank, grid_rank(g.coords[i]));
    mo.set_aux(aux::grid_crowding, gcd);
    mo.set_aux(aux::grid_point_distance, grid_point_distance(pts[i], g, i));
  }
}

// Chooses `need` members of `front` (indices into points) by the GrEA
// sequential procedure: best by GR, then GCD, then GCPD; after every pick the
// GCD of neighbours grows and GR is adjusted to penalize the surroundings.
inline std::vector<std::size_t> grea_select_from_front(std::vector<std::vector<double>> const& points,
                                                       std::vector<std::size_t> const& front, std::size_t need,
                                                       std::size_t div, Rng& rng) {
  std::size_t const n = front.size();
  if (need >= n) return front;
  std::vector<std::vector<double>> fp;
  for (auto i : front) fp.push_back(points[i]);
  auto const g = grea_make_grid(fp, div);
  auto const m = static_cast<double>(fp.front().size());
  std::vector<double> gr(n), gcd(n, 0.0), gcpd(n);
  for (std::size_t i = 0; i < n; ++i) {
    gr[i] = grid_rank(g.coords[i]);
    gcpd[i] = grid_point_distance(fp[i], g, i);
  }
  std::vector<bool> open(n, true);
  std::vector<std::size_t> picked;
  std::vector<std::size_t> ties;
  std::vector<double> pd(n);
  while (picked.size() < need) {
    std::size_t best = n;
    ties.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!open[i]) continue;
      if (best == n) {
        best = i;
        ties = {i};
        continue;
      }
      auto const key_i = std::tie(gr[i], gcd[i], gcpd[i]);
      auto const key_b = std::tie(gr[best], gcd[best], gcpd[best]);
      if (key_i < key_b) {
        best = i;
        ties = {i};
      } else if (key_i == key_b) {
        ties.push_back(i);
      }
    }
    std::size_t const q = ties[rng.index(ties.size())];
    open[q] = false;
    picked.push_back(front[q]);

    for (std::size_t p = 0; p < n; ++p) {
      if (!open[p]) continue;
      double const gd = grid_difference(g.coords[p], g.coords[q]);
      if (gd < m) gcd[p] += m - gd;
    }
    // GR adjustment around q.
    std::vector<bool> penalized(n, false);
    for (std::size_t p = 0; p < n; ++p) {
      if (!open[p]) continue;
      if (g.coords[p] == g.coords[q]) {
        gr[p] += m + 2.0;
        penalized[p] = true;
      } else if (grid_dominates(g.coords[q], g.coords[p])) {
        gr[p] += m;
        penalized[p] = true;
      }
    }
    std::fill(pd.begin(), pd.end(), 0.0);
    for (std::size_t p = 0; p < n; ++p) {
      if (!open[p] || penalized[p]) continue;
      double const gd = grid_difference(g.coords[p], g.coords[q]);
      if (gd >= m) continue;
      if (pd[p] < m - gd) {
        pd[p] = m - gd;
        for (std::size_t r = 0; r < n; ++r) {
          if (!open[r] || penalized[r] || r == p) continue;
          if (grid_dominates(g.coords[p], g.coords[r]) && pd[r] < pd[p]) pd[r] = pd[p];
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (open[p] && !penalized[p]) gr[p] += pd[p];
    }
  }
  return picked;
}

// Mating uses aux values from a grid over P computed in assign_fitness;
// replacement builds its own grid over the critical front.
class Grea final : public Strategy {
public:
  explicit Grea(std::size_t divisions = default_grea_divisions) : div_(divisions) {
    if (div_ == 0) throw ConfigError("GrEA divisions must be positive");
  }

  std::string id() const override { return "grea"; }

  void assign_fitness(Population& pop, Population&, Rng&) override { grea_grid(pop, sense_, div_); }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    auto const set = orient(pop, sense_);
    return detail::tournament_parents(
        pop, population_size_,
        [&](std::size_t i, std::size_t j) {
          auto const d = set.compare(i, j);
          if (d == Dominance::a_dominates) return Preference::first;
          if (d == Dominance::b_dominates) return Preference::second;
          if (pop[i].constraints.feasible() == pop[j].constraints.feasible()) {
            auto const& gi = pop[i].mo().grid;
            auto const& gj = pop[j].mo().grid;
            if (!gi.empty() && gi.size() == gj.size()) {
              if (grid_dominates(gi, gj)) return Preference::first;
              if (grid_dominates(gj, gi)) return Preference::second;
            }
          }
          double const ci = detail::aux_or(pop[i], aux::grid_crowding, 0.0);
          double const cj = detail::aux_or(pop[j], aux::grid_crowding, 0.0);
          if (ci < cj) return Preference::first;
          if (cj < ci) return Preference::second;
          return Preference::indifferent;
        },
        rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng& rng) override {
    require_bound();
    auto all = detail::concat(pop, offspring);
    auto const set = orient(all, sense_);
    auto const fronts = nondominated_fronts(set);
    std::vector<std::size_t> chosen;
    for (auto const& front : fronts) {
      if (chosen.size() + front.size() <= population_size_) {
        chosen.insert(chosen.end(), front.begin(), front.end());
        if (chosen.size() == population_size_) break;
        continue;
      }
      auto const extra = grea_select_from_front(set.f, front, population_size_ - chosen.size(), div_, rng);
      chosen.insert(chosen.end(), extra.begin(), extra.end());
      break;
    }
    return detail::pick(all, chosen);
  }

  std::size_t divisions() const noexcept { return div_; }

private:
  std::size_t div_;
};

} // namespace momo
