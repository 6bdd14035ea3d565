#pragma once

#include <chrono>
#include <functional>
#include <optional>

#include "momo/problems/problem.hpp"
#include "momo/strategies/smpso.hpp"
#include "momo/strategies/strategy.hpp"
#include "momo/variation/reproduction.hpp"

namespace momo {

struct AlgorithmState {
  ObjectiveSense sense;
  Population population;
  Population archive;
  Population parents;
  Population offspring;
  std::size_t generation = 0;
  std::size_t evaluations = 0;
  std::chrono::duration<double> elapsed{0.0};

  // Non-dominated feasible members of P u P*.
  Population front() const {
    Population pool;
    for (auto const* set : {&population, &archive}) {
      for (auto const& s : *set) {
        if (s.evaluated() && s.constraints.feasible()) pool.push_back(s);
      }
    }
    return pareto_filter(pool, sense);
  }
};

// Disjunction of the configured conditions.
struct StopCondition {
  std::optional<std::size_t> max_generations;
  std::optional<std::size_t> max_evaluations;
  std::function<bool(AlgorithmState const&)> predicate;

  bool configured() const { return max_generations || max_evaluations || predicate; }
};

inline bool check_stop(AlgorithmState const& state, StopCondition const& stop) {
  if (stop.max_generations && state.generation >= *stop.max_generations) return true;
  if (stop.max_evaluations && state.evaluations >= *stop.max_evaluations) return true;
  return stop.predicate && stop.predicate(state);
}

// Stops once a feasible member of P weakly dominates `target` (in the
// problem's own orientation).
inline std::function<bool(AlgorithmState const&)> target_reached(std::vector<double> target) {
  return [target = std::move(target)](AlgorithmState const& s) {
    auto const t = s.sense.orient(target);
    for (auto const& x : s.population) {
      if (x.evaluated() && x.constraints.feasible() && weakly_dominates(s.sense.orient(x.objectives()), t)) {
        return true;
      }
    }
    return false;
  };
}

// Called with the state after initialization (generation 0) and after every
// completed generation; `last` is set on the final call.
using ProgressCallback = std::function<void(AlgorithmState const&, bool last)>;

struct RunSettings {
  std::size_t population_size = 100;
  StopCondition stop;
  ProgressCallback progress;
};

namespace detail {

inline void validate_settings(RunSettings const& s) {
  if (s.population_size == 0) throw ConfigError("population size must be positive");
  if (!s.stop.configured()) throw ConfigError("at least one stop condition must be configured");
}

inline void evaluate_batch(Evaluator& ev, Population& pop, AlgorithmState& state) {
  try {
    ev.evaluate(pop);
  } catch (EvaluationError const& e) {
    throw e.at_generation(state.generation);
  }
  state.evaluations += pop.size();
}

} // namespace detail

// Generational EA: init -> evaluate -> initialize(P*) -> loop { assign fitness,
// mating selection, variation, evaluate, replacement, archive update, stop check }.
// Stop conditions are only checked at generation boundaries.
inline AlgorithmState run_ea(Evaluator& evaluator, Strategy& strategy, Recombinator const* rec, Mutator const* mut,
                             RunSettings const& settings, Rng& rng) {
  detail::validate_settings(settings);
  auto const& spec = evaluator.problem().encoding();
  spec.validate();
  if (rec && !rec->accepts(spec.kind)) {
    throw ConfigError("recombinator " + rec->id() + " does not accept " + to_string(spec.kind) + " encodings");
  }
  if (mut && !mut->accepts(spec.kind)) {
    throw ConfigError("mutator " + mut->id() + " does not accept " + to_string(spec.kind) + " encodings");
  }
  auto const start = std::chrono::steady_clock::now();
  AlgorithmState state;
  state.sense = evaluator.sense();
  strategy.bind(state.sense, settings.population_size, rng);
  auto report = [&](bool last) {
    state.elapsed = std::chrono::steady_clock::now() - start;
    if (settings.progress) settings.progress(state, last);
  };

  state.population = init_population(spec, settings.population_size, rng);
  detail::evaluate_batch(evaluator, state.population, state);
  state.archive = strategy.initialize(state.population, rng);
  bool done = check_stop(state, settings.stop);
  report(done);
  while (!done) {
    strategy.assign_fitness(state.population, state.archive, rng);
    state.parents = strategy.mating_selection(state.population, state.archive, rng);
    state.offspring = reproduce(state.parents, spec, rec, mut, rng);
    ++state.generation;
    detail::evaluate_batch(evaluator, state.offspring, state);
    auto next = strategy.environmental_selection(state.population, state.offspring, state.archive, rng);
    if (next.size() != settings.population_size) {
      throw StateError("strategy " + strategy.id() + " returned " + std::to_string(next.size()) + " survivors");
    }
    state.archive = strategy.update_archive(next, state.offspring, std::move(state.archive), rng);
    state.population = std::move(next);
    done = check_stop(state, settings.stop);
    report(done);
  }
  state.elapsed = std::chrono::steady_clock::now() - start;
  return state;
}

// Swarm loop: init -> evaluate -> archive init -> loop { move + turbulence,
// evaluate, personal-best update, archive update, stop check }. P* is the
// leader archive; fronts are reported on plain real genotypes.
inline AlgorithmState run_pso(Evaluator& evaluator, Smpso& strategy, RunSettings const& settings, Rng& rng) {
  detail::validate_settings(settings);
  auto const& spec = evaluator.problem().encoding();
  if (spec.kind != Encoding::real) throw ConfigError("the swarm engine requires a real-encoded problem");
  auto const start = std::chrono::steady_clock::now();
  AlgorithmState state;
  state.sense = evaluator.sense();
  strategy.bind(state.sense, settings.population_size, spec);
  auto report = [&](bool last) {
    state.archive = strategy.archive().members();
    state.elapsed = std::chrono::steady_clock::now() - start;
    if (settings.progress) settings.progress(state, last);
  };

  state.population = init_population(spec, settings.population_size, rng, true);
  detail::evaluate_batch(evaluator, state.population, state);
  strategy.initialize(state.population);
  bool done = check_stop(state, settings.stop);
  report(done);
  while (!done) {
    strategy.move(state.population, rng);
    ++state.generation;
    detail::evaluate_batch(evaluator, state.population, state);
    strategy.update_bests(state.population, rng);
    strategy.update_archive(state.population);
    done = check_stop(state, settings.stop);
    report(done);
  }
  state.archive = strategy.archive().members();
  for (auto* set : {&state.population, &state.archive}) {
    for (auto& s : *set) s.genotype = RealVector{std::vector<double>(real_genes(s.genotype).begin(), real_genes(s.genotype).end())};
  }
  state.elapsed = std::chrono::steady_clock::now() - start;
  return state;
}

} // namespace momo
