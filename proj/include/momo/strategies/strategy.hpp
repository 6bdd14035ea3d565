#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "momo/core/archive.hpp"
#include "momo/core/params.hpp"
#include "momo/core/random.hpp"
#include "momo/variation/operators.hpp"

namespace momo {

// The multi-objective part of a generational EA. The engine drives the calls
// in this order every generation:
//
//   assign_fitness(P, P*) -> mating_selection(P, P*) -> variation ->
//   evaluate -> environmental_selection(P, P'', P*) -> update_archive(P, P'', P*)
//
// A strategy instance belongs to one run; bind() is called once before
// initialize().
class Strategy {
public:
  virtual ~Strategy() = default;

  virtual std::string id() const = 0;

  virtual void bind(ObjectiveSense sense, std::size_t population_size, Rng&) {
    sense_ = std::move(sense);
    population_size_ = population_size;
  }

  // Builds P* from the evaluated initial population. Archive-less strategies
  // return an empty set.
  virtual Population initialize(Population const&, Rng&) { return {}; }

  virtual void assign_fitness(Population&, Population&, Rng&) {}

  // Returns population_size() parents, in mating order (consecutive pairs).
  virtual Population mating_selection(Population const& pop, Population const& archive, Rng& rng) = 0;

  // Returns exactly population_size() survivors drawn from P, P'' and P*.
  virtual Population environmental_selection(Population const& pop, Population const& offspring,
                                             Population const& archive, Rng& rng) = 0;

  virtual Population update_archive(Population const&, Population const&, Population archive, Rng&) {
    return archive;
  }

  ObjectiveSense const& sense() const noexcept { return sense_; }
  std::size_t population_size() const noexcept { return population_size_; }

protected:
  void require_bound() const {
    if (population_size_ == 0) throw StateError("strategy " + id() + " used before bind()");
  }

  ObjectiveSense sense_;
  std::size_t population_size_ = 0;
};

namespace detail {

inline Population concat(Population const& a, Population const& b) {
  Population out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Population pick(Population const& from, std::vector<std::size_t> const& idx) {
  Population out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(from[i]);
  return out;
}

// Feasibility first, then lower violation; indifferent between two feasible
// solutions or two equally violating ones.
inline Preference feasibility_preference(Solution const& a, Solution const& b) {
  return constrained_compare(a, b, [](Solution const&, Solution const&) { return Preference::indifferent; });
}

// `count` parents by binary tournament where `prefer(i, j)` decides.
template<typename Prefer>
Population tournament_parents(Population const& pop, std::size_t count, Prefer&& prefer, Rng& rng) {
  Population out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pop[binary_tournament(pop.size(), prefer, rng)]);
  return out;
}

inline std::vector<std::vector<double>> oriented_points(Population const& pop, ObjectiveSense const& sense) {
  std::vector<std::vector<double>> pts;
  pts.reserve(pop.size());
  for (auto const& s : pop) pts.push_back(sense.orient(s.objectives()));
  return pts;
}

inline double aux_or(Solution const& s, std::string_view key, double fallback) {
  return s.mo().aux(key).value_or(fallback);
}

} // namespace detail

} // namespace momo
