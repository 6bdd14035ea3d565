#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "momo/core/error.hpp"
#include "momo/core/fitness.hpp"

namespace momo {

struct BitString {
  std::vector<std::uint8_t> bits;
  bool operator==(BitString const&) const = default;
};

struct IntVector {
  std::vector<std::int64_t> genes;
  bool operator==(IntVector const&) const = default;
};

struct RealVector {
  std::vector<double> genes;
  bool operator==(RealVector const&) const = default;
};

// Real encoding extended with velocity and personal-best memory.
struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  MOFitness best_fitness;
  ConstraintRecord best_constraints;

  bool operator==(Particle const& o) const {
    return position == o.position && velocity == o.velocity && best_position == o.best_position;
  }
};

using Genotype = std::variant<BitString, IntVector, RealVector, Particle>;

enum class Encoding { binary, integer, real };

inline std::string to_string(Encoding e) {
  switch (e) {
  case Encoding::binary: return "binary";
  case Encoding::integer: return "integer";
  case Encoding::real: return "real";
  }
  return "?";
}

// Genotype layout and per-gene bounds. Binary encodings ignore the bounds.
struct EncodingSpec {
  Encoding kind = Encoding::real;
  std::size_t length = 0;
  std::vector<double> lower;
  std::vector<double> upper;

  static EncodingSpec real(std::vector<double> lo, std::vector<double> hi) {
    EncodingSpec s{Encoding::real, lo.size(), std::move(lo), std::move(hi)};
    return s;
  }

  static EncodingSpec real(std::size_t n, double lo, double hi) {
    return real(std::vector<double>(n, lo), std::vector<double>(n, hi));
  }

  static EncodingSpec binary(std::size_t n) { return {Encoding::binary, n, {}, {}}; }

  static EncodingSpec integer(std::vector<double> lo, std::vector<double> hi) {
    EncodingSpec s{Encoding::integer, lo.size(), std::move(lo), std::move(hi)};
    return s;
  }

  void validate() const {
    if (length == 0) throw ConfigError("encoding length must be positive");
    if (kind == Encoding::binary) return;
    if (lower.size() != length || upper.size() != length) {
      throw ConfigError("encoding bounds must have one entry per gene");
    }
    for (std::size_t i = 0; i < length; ++i) {
      if (!(lower[i] <= upper[i])) {
        throw ConfigError("invalid bounds for gene " + std::to_string(i));
      }
    }
  }
};

// Real-valued decision variables of a real or particle genotype.
inline std::span<const double> real_genes(Genotype const& g) {
  if (auto const* r = std::get_if<RealVector>(&g)) return r->genes;
  if (auto const* p = std::get_if<Particle>(&g)) return p->position;
  throw StateError("genotype is not real-valued");
}

inline std::vector<double>& real_genes(Genotype& g) {
  if (auto* r = std::get_if<RealVector>(&g)) return r->genes;
  if (auto* p = std::get_if<Particle>(&g)) return p->position;
  throw StateError("genotype is not real-valued");
}

// Decision variables as reals, whatever the encoding (used by reporters).
inline std::vector<double> decision_values(Genotype const& g) {
  return std::visit(
      [](auto const& x) -> std::vector<double> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BitString>) {
          return {x.bits.begin(), x.bits.end()};
        } else if constexpr (std::is_same_v<T, IntVector>) {
          return {x.genes.begin(), x.genes.end()};
        } else if constexpr (std::is_same_v<T, RealVector>) {
          return x.genes;
        } else {
          return x.position;
        }
      },
      g);
}

struct Solution {
  Genotype genotype;
  std::optional<MOFitness> fitness;
  ConstraintRecord constraints;

  bool evaluated() const noexcept { return fitness.has_value(); }

  std::vector<double> const& objectives() const {
    if (!fitness) throw StateError("solution has not been evaluated");
    return fitness->values;
  }

  MOFitness& mo() {
    if (!fitness) throw StateError("solution has not been evaluated");
    return *fitness;
  }

  MOFitness const& mo() const {
    if (!fitness) throw StateError("solution has not been evaluated");
    return *fitness;
  }

  // Drops the fitness so the next evaluation recomputes it.
  void invalidate() noexcept { fitness.reset(); }
};

using Population = std::vector<Solution>;

} // namespace momo
