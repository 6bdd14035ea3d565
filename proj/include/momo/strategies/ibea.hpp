#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "momo/strategies/strategy.hpp"

namespace momo {

inline constexpr double default_ibea_kappa = 0.05;

// Pairwise additive-epsilon indicator fitness over objectives normalized to
// [0, 1] within the set. Keeps the indicator matrix so removals update the
// remaining fitness values incrementally.
class IbeaFitness {
public:
  IbeaFitness(std::vector<std::vector<double>> const& points, double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0)) throw ConfigError("IBEA kappa must be positive");
    std::size_t const n = points.size();
    alive_.assign(n, true);
    fitness_.assign(n, 0.0);
    if (n == 0) return;
    std::size_t const m = points.front().size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (auto const& p : points) {
      for (std::size_t k = 0; k < m; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    auto norm = points;
    for (auto& p : norm) {
      for (std::size_t k = 0; k < m; ++k) p[k] = hi[k] > lo[k] ? (p[k] - lo[k]) / (hi[k] - lo[k]) : 0.0;
    }
    indicator_.assign(n, std::vector<double>(n, 0.0));
    double c = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        double eps = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k) eps = std::max(eps, norm[a][k] - norm[b][k]);
        indicator_[a][b] = eps;
        if (a != b) c = std::max(c, std::abs(eps));
      }
    }
    scale_ = c > 0.0 ? c * kappa_ : kappa_;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (y != x) fitness_[x] -= term(y, x);
      }
    }
  }

  double fitness(std::size_t i) const { return fitness_.at(i); }
  std::vector<double> const& values() const noexcept { return fitness_; }
  bool alive(std::size_t i) const { return alive_.at(i); }

  // Removes i and adds its contribution back to every remaining member.
  void remove(std::size_t i) {
    alive_.at(i) = false;
    for (std::size_t x = 0; x < alive_.size(); ++x) {
      if (alive_[x]) fitness_[x] += term(i, x);
    }
  }

  // Index of the living member with the lowest fitness (first on ties).
  std::size_t worst() const {
    std::size_t w = alive_.size();
    for (std::size_t x = 0; x < alive_.size(); ++x) {
      if (alive_[x] && (w == alive_.size() || fitness_[x] < fitness_[w])) w = x;
    }
    return w;
  }

private:
  double term(std::size_t y, std::size_t x) const { return std::exp(-indicator_[y][x] / scale_); }

  double kappa_;
  double scale_ = 1.0;
  std::vector<std::vector<double>> indicator_;
  std::vector<double> fitness_;
  std::vector<bool> alive_;
};

inline void ibea_fitness(Population& pop, ObjectiveSense const& sense, double kappa) {
  IbeaFitness f(detail::oriented_points(pop, sense), kappa);
  for (std::size_t i = 0; i < pop.size(); ++i) pop[i].mo().set_aux(aux::fitness, f.fitness(i));
}

// Replacement computes fitness over P u P'' and removes the worst member one
// at a time with incremental updates. Infeasible candidates are removed first,
// most violating first, before any indicator-based removal.
class Ibea final : public Strategy {
public:
  explicit Ibea(double kappa = default_ibea_kappa) : kappa_(kappa) {
    if (!(kappa > 0.0)) throw ConfigError("IBEA kappa must be positive");
  }

  std::string id() const override { return "ibea"; }
  double kappa() const noexcept { return kappa_; }

  void assign_fitness(Population& pop, Population&, Rng&) override { ibea_fitness(pop, sense_, kappa_); }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    return detail::tournament_parents(
        pop, population_size_,
        [&](std::size_t i, std::size_t j) {
          auto const p = detail::feasibility_preference(pop[i], pop[j]);
          if (p != Preference::indifferent) return p;
          double const a = detail::aux_or(pop[i], aux::fitness, 0.0);
          double const b = detail::aux_or(pop[j], aux::fitness, 0.0);
          if (a == b) return Preference::indifferent;
          return a > b ? Preference::first : Preference::second;
        },
        rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng&) override {
    require_bound();
    auto all = detail::concat(pop, offspring);
    std::vector<std::size_t> infeasible;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!all[i].constraints.feasible()) infeasible.push_back(i);
    }
    std::stable_sort(infeasible.begin(), infeasible.end(), [&](std::size_t a, std::size_t b) {
      return all[a].constraints.degree_of_infeasibility() > all[b].constraints.degree_of_infeasibility();
    });
    std::vector<bool> keep(all.size(), true);
    std::size_t size = all.size();
    for (auto i : infeasible) {
      if (size <= population_size_) break;
      keep[i] = false;
      --size;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (keep[i]) idx.push_back(i);
    }
    auto survivors = detail::pick(all, idx);
    IbeaFitness f(detail::oriented_points(survivors, sense_), kappa_);
    for (std::size_t left = survivors.size(); left > population_size_; --left) f.remove(f.worst());
    Population out;
    out.reserve(population_size_);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      if (!f.alive(i)) continue;
      survivors[i].mo().set_aux(aux::fitness, f.fitness(i));
      out.push_back(std::move(survivors[i]));
    }
    return out;
  }

private:
  double kappa_;
};

} // namespace momo
