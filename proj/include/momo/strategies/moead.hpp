#pragma once

#include <algorithm>
#include <limits>
#include <numeric>

#include "momo/strategies/strategy.hpp"
#include "momo/strategies/weights.hpp"

namespace momo {

struct MoeadOptions {
  std::size_t neighborhood_size = 20;
  std::size_t max_replacements = 2;
  double delta = 0.9;
};

// Tchebycheff MOEA/D in generational form: P[i] is the incumbent of
// subproblem i. Each generation the first N/2 subproblems of a random
// permutation each breed one parent pair from their neighbourhood (or, with
// probability 1 - delta, from the whole population); both children then
// compete for that pool, replacing at most max_replacements incumbents.
// No fitness assignment is needed before mating.
class Moead final : public Strategy {
public:
  explicit Moead(MoeadOptions opt = {}) : opt_(opt) {
    if (opt_.neighborhood_size < 2) throw ConfigError("MOEA/D neighborhood-size must be at least 2");
    if (opt_.max_replacements < 1) throw ConfigError("MOEA/D max-replacements must be at least 1");
    if (!(opt_.delta >= 0.0 && opt_.delta <= 1.0)) throw ConfigError("MOEA/D delta must lie in [0, 1]");
  }

  std::string id() const override { return "moead"; }

  void bind(ObjectiveSense sense, std::size_t population_size, Rng& rng) override {
    Strategy::bind(std::move(sense), population_size, rng);
    std::size_t const m = sense_.size();
    auto w = das_dennis(m, das_dennis_divisions(m, population_size));
    if (w.size() > population_size) w.resize(population_size);
    while (w.size() < population_size) w.push_back(random_simplex_point(m, rng));
    weights_ = WeightVectorSet::build(std::move(w), opt_.neighborhood_size);
  }

  Population initialize(Population const& pop, Rng&) override {
    require_bound();
    ideal_.assign(sense_.size(), std::numeric_limits<double>::infinity());
    for (auto const& s : pop) update_ideal(s);
    return {};
  }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    if (pop.size() != weights_.size()) throw StateError("MOEA/D population does not match its weight vectors");
    std::vector<std::size_t> perm(pop.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(perm.begin(), perm.end());
    pools_.clear();
    Population parents;
    parents.reserve(population_size_);
    std::size_t const pairs = (population_size_ + 1) / 2;
    for (std::size_t j = 0; j < pairs; ++j) {
      std::size_t const sub = perm[j % perm.size()];
      Pool pool{sub, rng.bernoulli(opt_.delta)};
      auto const& candidates = pool.local ? weights_.neighbors[sub] : all_indices();
      std::size_t const a = candidates[rng.index(candidates.size())];
      std::size_t b = candidates[rng.index(candidates.size())];
      if (candidates.size() > 1) {
        while (b == a) b = candidates[rng.index(candidates.size())];
      }
      parents.push_back(pop[a]);
      parents.push_back(pop[b]);
      pools_.push_back(pool);
    }
    parents.resize(population_size_);
    return parents;
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng& rng) override {
    require_bound();
    if (pools_.empty()) throw StateError("MOEA/D replacement without a preceding mating selection");
    Population next = pop;
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < offspring.size(); ++c) {
      auto const& child = offspring[c];
      update_ideal(child);
      auto const& pool = pools_[std::min(c / 2, pools_.size() - 1)];
      order = pool.local ? weights_.neighbors[pool.subproblem] : all_indices();
      rng.shuffle(order.begin(), order.end());
      auto const fc = sense_.orient(child.objectives());
      std::size_t replaced = 0;
      for (auto i : order) {
        if (replaced >= opt_.max_replacements) break;
        if (better(child, fc, next[i], i)) {
          next[i] = child;
          ++replaced;
        }
      }
    }
    pools_.clear();
    return next;
  }

  WeightVectorSet const& weights() const noexcept { return weights_; }
  std::vector<double> const& ideal() const noexcept { return ideal_; }

private:
  struct Pool {
    std::size_t subproblem;
    bool local;
  };

  std::vector<std::size_t> const& all_indices() {
    if (everyone_.size() != population_size_) {
      everyone_.resize(population_size_);
      std::iota(everyone_.begin(), everyone_.end(), std::size_t{0});
    }
    return everyone_;
  }

  void update_ideal(Solution const& s) {
    auto const f = sense_.orient(s.objectives());
    for (std::size_t k = 0; k < f.size(); ++k) ideal_[k] = std::min(ideal_[k], f[k]);
  }

  bool better(Solution const& child, std::vector<double> const& fc, Solution const& incumbent, std::size_t sub) const {
    auto const p = detail::feasibility_preference(child, incumbent);
    if (p != Preference::indifferent) return p == Preference::first;
    if (!child.constraints.feasible()) return false;
    auto const fi = sense_.orient(incumbent.objectives());
    auto const& w = weights_.weights[sub];
    return tchebycheff(w, fc, ideal_) < tchebycheff(w, fi, ideal_);
  }

  MoeadOptions opt_;
  WeightVectorSet weights_;
  std::vector<double> ideal_;
  std::vector<Pool> pools_;
  std::vector<std::size_t> everyone_;
};

} // namespace momo
