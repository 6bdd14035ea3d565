#pragma once

#include <algorithm>
#include <numeric>

#include "momo/strategies/strategy.hpp"

namespace momo {

// Sets aux rank (1 = non-dominated, constrained dominance) and crowding
// distance within each front.
inline void nsga2_rank_and_crowd(Population& pop, ObjectiveSense const& sense) {
  auto const set = orient(pop, sense);
  auto const fronts = nondominated_fronts(set);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    auto const d = crowding_distances(set.f, fronts[r]);
    for (std::size_t i = 0; i < fronts[r].size(); ++i) {
      auto& mo = pop[fronts[r][i]].mo();
      mo.set_aux(aux::rank, static_cast<double>(r + 1));
      mo.set_aux(aux::crowding, d[i]);
    }
  }
}

// Lower rank wins, then larger crowding distance.
inline Preference crowded_comparison(Solution const& a, Solution const& b) {
  double const ra = detail::aux_or(a, aux::rank, 0.0);
  double const rb = detail::aux_or(b, aux::rank, 0.0);
  if (ra != rb) return ra < rb ? Preference::first : Preference::second;
  double const ca = detail::aux_or(a, aux::crowding, 0.0);
  double const cb = detail::aux_or(b, aux::crowding, 0.0);
  if (ca != cb) return ca > cb ? Preference::first : Preference::second;
  return Preference::indifferent;
}

// Rank and crowding used in the tournament are the ones computed during the
// previous replacement over P u P''; they are only computed afresh on P for the
// initial population.
class Nsga2 final : public Strategy {
public:
  std::string id() const override { return "nsga2"; }

  void assign_fitness(Population& pop, Population&, Rng&) override {
    bool const missing = std::any_of(pop.begin(), pop.end(), [](Solution const& s) {
      return !s.mo().aux(aux::rank) || !s.mo().aux(aux::crowding);
    });
    if (missing) nsga2_rank_and_crowd(pop, sense_);
  }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    return detail::tournament_parents(
        pop, population_size_, [&](std::size_t i, std::size_t j) { return crowded_comparison(pop[i], pop[j]); }, rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng&) override {
    require_bound();
    auto all = detail::concat(pop, offspring);
    auto const set = orient(all, sense_);
    auto const fronts = nondominated_fronts(set);
    Population out;
    out.reserve(population_size_);
    for (std::size_t r = 0; r < fronts.size() && out.size() < population_size_; ++r) {
      auto const& front = fronts[r];
      auto const d = crowding_distances(set.f, front);
      for (std::size_t i = 0; i < front.size(); ++i) {
        auto& mo = all[front[i]].mo();
        mo.set_aux(aux::rank, static_cast<double>(r + 1));
        mo.set_aux(aux::crowding, d[i]);
      }
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      if (out.size() + front.size() > population_size_) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
        order.resize(population_size_ - out.size());
      }
      for (auto i : order) out.push_back(all[front[i]]);
    }
    return out;
  }
};

} // namespace momo
