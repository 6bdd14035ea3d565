#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momo/strategies/strategy.hpp"

namespace momo {

struct Spea2Values {
  std::vector<double> strength;
  std::vector<double> raw;
  std::vector<double> density;
  std::vector<double> fitness;
};

// Strength, raw fitness, k-th nearest neighbour density (k = floor(sqrt(n)))
// and their sum, under constrained dominance.
inline Spea2Values spea2_values(OrientedSet const& set) {
  std::size_t const n = set.size();
  Spea2Values v;
  v.strength.assign(n, 0.0);
  v.raw.assign(n, 0.0);
  v.density.assign(n, 0.0);
  v.fitness.assign(n, 0.0);
  std::vector<std::vector<std::size_t>> dominators(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto const d = set.compare(i, j);
      if (d == Dominance::a_dominates) {
        v.strength[i] += 1.0;
        dominators[j].push_back(i);
      } else if (d == Dominance::b_dominates) {
        v.strength[j] += 1.0;
        dominators[i].push_back(j);
      }
    }
  }
  auto const k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  std::vector<double> dist;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : dominators[i]) v.raw[i] += v.strength[j];
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dist.push_back(distance(set.f[i], set.f[j]));
    }
    double sigma = 0.0;
    if (!dist.empty()) {
      auto const kk = std::min(k, dist.size()) - (k > 0 ? 1 : 0);
      std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
      sigma = dist[kk];
    }
    v.density[i] = 1.0 / (sigma + 2.0);
    v.fitness[i] = v.raw[i] + v.density[i];
  }
  return v;
}

inline void spea2_fitness(Population& pop, ObjectiveSense const& sense) {
  auto const v = spea2_values(orient(pop, sense));
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& mo = pop[i].mo();
    mo.set_aux(aux::strength, v.strength[i]);
    mo.set_aux(aux::raw, v.raw[i]);
    mo.set_aux(aux::density, v.density[i]);
    mo.set_aux(aux::fitness, v.fitness[i]);
  }
}

// Iteratively drops the member whose sorted distance list to the remaining
// members is lexicographically smallest until `keep` remain. Returns the kept
// positions within `members` in their original order.
inline std::vector<std::size_t> spea2_truncate(std::vector<std::vector<double>> const& points,
                                               std::vector<std::size_t> members, std::size_t keep) {
  std::size_t const n = members.size();
  if (n <= keep) return members;
  std::vector<std::vector<std::pair<double, std::size_t>>> near(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) near[a].emplace_back(distance(points[members[a]], points[members[b]]), b);
    }
    std::sort(near[a].begin(), near[a].end());
  }
  std::vector<bool> alive(n, true);
  for (std::size_t remaining = n; remaining > keep; --remaining) {
    std::size_t worst = n;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      if (worst == n) {
        worst = a;
        continue;
      }
      auto const& x = near[a];
      auto const& y = near[worst];
      for (std::size_t t = 0; t < x.size(); ++t) {
        if (x[t].first < y[t].first) {
          worst = a;
          break;
        }
        if (x[t].first > y[t].first) break;
      }
    }
    alive[worst] = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      auto& list = near[a];
      list.erase(std::find_if(list.begin(), list.end(), [&](auto const& e) { return e.second == worst; }));
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (alive[a]) out.push_back(members[a]);
  }
  return out;
}

// The population plays the role of the SPEA2 archive: replacement builds the
// next archive of population_size() from P u P'', and mating draws from it.
// Fitness is recomputed on the union during replacement.
class Spea2 final : public Strategy {
public:
  std::string id() const override { return "spea2"; }

  void assign_fitness(Population& pop, Population&, Rng&) override { spea2_fitness(pop, sense_); }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    return detail::tournament_parents(
        pop, population_size_,
        [&](std::size_t i, std::size_t j) {
          double const a = detail::aux_or(pop[i], aux::fitness, 0.0);
          double const b = detail::aux_or(pop[j], aux::fitness, 0.0);
          if (a == b) return Preference::indifferent;
          return a < b ? Preference::first : Preference::second;
        },
        rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng&) override {
    require_bound();
    auto all = detail::concat(pop, offspring);
    auto const set = orient(all, sense_);
    auto const v = spea2_values(set);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (v.fitness[i] < 1.0) chosen.push_back(i);
    }
    if (chosen.size() > population_size_) {
      chosen = spea2_truncate(set.f, chosen, population_size_);
    } else if (chosen.size() < population_size_) {
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (v.fitness[i] >= 1.0) rest.push_back(i);
      }
      std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return v.fitness[a] < v.fitness[b]; });
      rest.resize(std::min(rest.size(), population_size_ - chosen.size()));
      chosen.insert(chosen.end(), rest.begin(), rest.end());
    }
    return detail::pick(all, chosen);
  }
};

} // namespace momo
