#pragma once

#include <cmath>
#include <numeric>

#include "momo/strategies/strategy.hpp"

namespace momo {

inline constexpr double smpso_turbulence_fraction = 0.15;

// Speed-constrained multi-objective PSO. Owns the bounded leader archive;
// the swarm engine calls move -> evaluate -> update_bests -> update_archive.
class Smpso {
public:
  explicit Smpso(std::optional<std::size_t> archive_size = std::nullopt, double eta = default_eta_mutation)
      : archive_size_(archive_size), eta_(eta) {
    if (archive_size_ && *archive_size_ == 0) throw ConfigError("SMPSO archive-size must be positive");
  }

  std::string id() const { return "smpso"; }

  void bind(ObjectiveSense sense, std::size_t swarm_size, EncodingSpec spec) {
    if (spec.kind != Encoding::real) throw ConfigError("SMPSO requires a real-encoded problem");
    spec.validate();
    spec_ = std::move(spec);
    swarm_size_ = swarm_size;
    archive_ = Archive(std::move(sense), archive_size_.value_or(swarm_size));
  }

  // Personal bests start at the initial positions; the archive receives the
  // initial swarm.
  void initialize(Population& swarm) {
    for (auto& s : swarm) {
      auto& p = particle(s);
      p.best_position = p.position;
      p.best_fitness = s.mo();
      p.best_constraints = s.constraints;
    }
    update_archive(swarm);
  }

  // Chooses a leader per particle, moves it and applies turbulence to a
  // random 15% of the swarm. Fitness is invalidated.
  void move(Population& swarm, Rng& rng) {
    crowding_ = archive_.crowding();
    Population fallback;
    if (archive_.empty()) fallback = pareto_filter(swarm, archive_.sense());
    for (auto& s : swarm) {
      auto& p = particle(s);
      auto const& src = archive_.empty() ? fallback[rng.index(fallback.size())] : archive_.members()[select_leader(rng)];
      std::vector<double> const leader(real_genes(src.genotype).begin(), real_genes(src.genotype).end());
      double const c1 = rng.uniform(1.5, 2.5);
      double const c2 = rng.uniform(1.5, 2.5);
      smpso_move(p, leader, c1, c2, spec_.lower, spec_.upper, rng);
    }
    auto const count = static_cast<std::size_t>(std::llround(smpso_turbulence_fraction * static_cast<double>(swarm.size())));
    std::vector<std::size_t> order(swarm.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order.begin(), order.end());
    double const rate = 1.0 / static_cast<double>(spec_.length);
    for (std::size_t t = 0; t < count && t < order.size(); ++t) {
      auto& p = particle(swarm[order[t]]);
      p.position = polynomial_mutation(p.position, rate, eta_, spec_.lower, spec_.upper, rng);
    }
    for (auto& s : swarm) s.invalidate();
  }

  // New position replaces the personal best when it dominates it, is ignored
  // when dominated, and wins a fair coin otherwise.
  void update_bests(Population& swarm, Rng& rng) {
    auto const& sense = archive_.sense();
    for (auto& s : swarm) {
      auto& p = particle(s);
      auto const d = constrained_dominance(sense.orient(s.objectives()), s.constraints,
                                           sense.orient(p.best_fitness.values), p.best_constraints);
      bool replace = false;
      if (d == Dominance::a_dominates) {
        replace = true;
      } else if (d == Dominance::non_dominated || d == Dominance::equal) {
        replace = rng.bernoulli(0.5);
      }
      if (replace) {
        p.best_position = p.position;
        p.best_fitness = s.mo();
        p.best_constraints = s.constraints;
      }
    }
  }

  void update_archive(Population const& swarm) { archive_.insert_all(swarm); }

  // Binary tournament on archive crowding distance (larger wins), using the
  // crowding computed at the start of the current move.
  std::size_t select_leader(Rng& rng) {
    if (archive_.empty()) throw StateError("leader selection from an empty archive");
    if (crowding_.size() != archive_.size()) crowding_ = archive_.crowding();
    return binary_tournament(
        archive_.size(),
        [&](std::size_t a, std::size_t b) {
          if (crowding_[a] == crowding_[b]) return Preference::indifferent;
          return crowding_[a] > crowding_[b] ? Preference::first : Preference::second;
        },
        rng);
  }

  Archive const& archive() const noexcept { return archive_; }
  Archive& archive() noexcept { return archive_; }

private:
  static Particle& particle(Solution& s) {
    auto* p = std::get_if<Particle>(&s.genotype);
    if (!p) throw StateError("SMPSO expects particle genotypes");
    return *p;
  }

  std::optional<std::size_t> archive_size_;
  double eta_;
  EncodingSpec spec_;
  std::size_t swarm_size_ = 0;
  Archive archive_;
  std::vector<double> crowding_;
};

} // namespace momo
