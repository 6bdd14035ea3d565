#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "momo/core/dominance.hpp"
#include "momo/core/error.hpp"
#include "momo/core/random.hpp"
#include "momo/core/solution.hpp"

namespace momo {

inline constexpr double default_eta_crossover = 20.0;
inline constexpr double default_eta_mutation = 20.0;

namespace detail {
inline void check_parents(std::span<const double> p1, std::span<const double> p2, std::span<const double> lo,
                          std::span<const double> hi) {
  detail::check_same_length(p1.size(), p2.size());
  detail::check_same_length(p1.size(), lo.size());
  detail::check_same_length(p1.size(), hi.size());
}

inline double clip(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }
} // namespace detail

// Draws `size` solutions with genes uniform within bounds. With `as_particles`
// set (real encodings only) the genotype is a Particle at rest whose personal
// best is its initial position.
inline Population init_population(EncodingSpec const& spec, std::size_t size, Rng& rng, bool as_particles = false) {
  spec.validate();
  if (size == 0) throw ConfigError("population size must be at least 1");
  if (as_particles && spec.kind != Encoding::real) throw ConfigError("particles require a real encoding");
  Population pop;
  pop.reserve(size);
  for (std::size_t s = 0; s < size; ++s) {
    Solution sol;
    switch (spec.kind) {
    case Encoding::binary: {
      BitString b;
      b.bits.resize(spec.length);
      for (auto& bit : b.bits) bit = rng.bernoulli(0.5) ? 1 : 0;
      sol.genotype = std::move(b);
      break;
    }
    case Encoding::integer: {
      IntVector v;
      v.genes.resize(spec.length);
      for (std::size_t i = 0; i < spec.length; ++i) {
        auto const lo = static_cast<std::int64_t>(std::ceil(spec.lower[i]));
        auto const hi = static_cast<std::int64_t>(std::floor(spec.upper[i]));
        v.genes[i] = lo + static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(hi - lo + 1)));
      }
      sol.genotype = std::move(v);
      break;
    }
    case Encoding::real: {
      std::vector<double> x(spec.length);
      for (std::size_t i = 0; i < spec.length; ++i) x[i] = rng.uniform(spec.lower[i], spec.upper[i]);
      if (as_particles) {
        Particle p;
        p.velocity.assign(spec.length, 0.0);
        p.best_position = x;
        p.position = std::move(x);
        sol.genotype = std::move(p);
      } else {
        sol.genotype = RealVector{std::move(x)};
      }
      break;
    }
    }
    pop.push_back(std::move(sol));
  }
  return pop;
}

// BLX-alpha: each gene uniform in [min - alpha*d, max + alpha*d], d = |p1 - p2|,
// clipped to the bounds.
inline std::pair<std::vector<double>, std::vector<double>>
blx_alpha_crossover(std::span<const double> p1, std::span<const double> p2, double alpha,
                    std::span<const double> lower, std::span<const double> upper, Rng& rng) {
  detail::check_parents(p1, p2, lower, upper);
  if (!(alpha >= 0.0)) throw DomainError("BLX alpha must be nonnegative");
  std::vector<double> c1(p1.size());
  std::vector<double> c2(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    double const lo = std::min(p1[i], p2[i]);
    double const hi = std::max(p1[i], p2[i]);
    double const d = hi - lo;
    double const a = lo - alpha * d;
    double const b = hi + alpha * d;
    c1[i] = detail::clip(rng.uniform(a, b), lower[i], upper[i]);
    c2[i] = detail::clip(rng.uniform(a, b), lower[i], upper[i]);
  }
  return {std::move(c1), std::move(c2)};
}

// Simulated binary crossover. Each gene pair is crossed with probability 0.5
// using the symmetric spread factor, so c1 + c2 = p1 + p2 before clipping.
inline std::pair<std::vector<double>, std::vector<double>>
sbx_crossover(std::span<const double> p1, std::span<const double> p2, double prob, double eta,
              std::span<const double> lower, std::span<const double> upper, Rng& rng) {
  detail::check_parents(p1, p2, lower, upper);
  std::vector<double> c1(p1.begin(), p1.end());
  std::vector<double> c2(p2.begin(), p2.end());
  if (!rng.bernoulli(prob)) return {std::move(c1), std::move(c2)};
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (!rng.bernoulli(0.5)) continue;
    if (std::abs(p1[i] - p2[i]) <= 1e-14) continue;
    double const u = rng.uniform();
    double const beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                  : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    double const a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
    double const b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    c1[i] = detail::clip(a, lower[i], upper[i]);
    c2[i] = detail::clip(b, lower[i], upper[i]);
    if (rng.bernoulli(0.5)) std::swap(c1[i], c2[i]);
  }
  return {std::move(c1), std::move(c2)};
}

// Bounded polynomial mutation; each gene mutates with probability `prob`.
inline std::vector<double> polynomial_mutation(std::span<const double> genes, double prob, double eta,
                                               std::span<const double> lower, std::span<const double> upper,
                                               Rng& rng) {
  detail::check_same_length(genes.size(), lower.size());
  detail::check_same_length(genes.size(), upper.size());
  if (!(eta > 0.0)) throw DomainError("polynomial mutation index must be positive");
  std::vector<double> out(genes.begin(), genes.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!rng.bernoulli(prob)) continue;
    double const yl = lower[i];
    double const yu = upper[i];
    if (yl == yu) continue;
    double const y = out[i];
    double const delta1 = (y - yl) / (yu - yl);
    double const delta2 = (yu - y) / (yu - yl);
    double const u = rng.uniform();
    double const pow_exp = 1.0 / (eta + 1.0);
    double deltaq;
    if (u <= 0.5) {
      double const xy = 1.0 - delta1;
      double const val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
      deltaq = std::pow(val, pow_exp) - 1.0;
    } else {
      double const xy = 1.0 - delta2;
      double const val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
      deltaq = 1.0 - std::pow(val, pow_exp);
    }
    out[i] = detail::clip(y + deltaq * (yu - yl), yl, yu);
  }
  return out;
}

inline std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>
one_point_crossover(std::span<const std::uint8_t> p1, std::span<const std::uint8_t> p2, Rng& rng) {
  detail::check_same_length(p1.size(), p2.size());
  std::vector<std::uint8_t> c1(p1.begin(), p1.end());
  std::vector<std::uint8_t> c2(p2.begin(), p2.end());
  if (p1.size() < 2) return {std::move(c1), std::move(c2)};
  std::size_t const cut = 1 + rng.index(p1.size() - 1);
  for (std::size_t i = cut; i < p1.size(); ++i) std::swap(c1[i], c2[i]);
  return {std::move(c1), std::move(c2)};
}

inline std::vector<std::uint8_t> bit_flip_mutation(std::span<const std::uint8_t> bits, double prob, Rng& rng) {
  std::vector<std::uint8_t> out(bits.begin(), bits.end());
  for (auto& b : out) {
    if (rng.bernoulli(prob)) b = b ? 0 : 1;
  }
  return out;
}

// Resamples each gene, with probability `prob`, uniformly within its bounds.
inline std::vector<std::int64_t> uniform_int_mutation(std::span<const std::int64_t> genes, double prob,
                                                      std::span<const double> lower, std::span<const double> upper,
                                                      Rng& rng) {
  detail::check_same_length(genes.size(), lower.size());
  detail::check_same_length(genes.size(), upper.size());
  std::vector<std::int64_t> out(genes.begin(), genes.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!rng.bernoulli(prob)) continue;
    auto const lo = static_cast<std::int64_t>(std::ceil(lower[i]));
    auto const hi = static_cast<std::int64_t>(std::floor(upper[i]));
    out[i] = lo + static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(hi - lo + 1)));
  }
  return out;
}

// Draws two members uniformly (with replacement) and keeps the one `prefer`
// favours; ties are broken by a fair coin. Returns the winner's index.
template<typename Prefer>
std::size_t binary_tournament(std::size_t n, Prefer&& prefer, Rng& rng) {
  if (n == 0) throw StateError("tournament over an empty population");
  std::size_t const a = rng.index(n);
  std::size_t const b = rng.index(n);
  switch (prefer(a, b)) {
  case Preference::first: return a;
  case Preference::second: return b;
  case Preference::indifferent: break;
  }
  return rng.bernoulli(0.5) ? a : b;
}

inline Solution const& binary_tournament(std::span<const Solution> pop, FitnessComparator const& cmp, Rng& rng) {
  auto const i = binary_tournament(
      pop.size(), [&](std::size_t a, std::size_t b) { return cmp(pop[a], pop[b]); }, rng);
  return pop[i];
}

// SMPSO constriction coefficient with phi floored at 4, so that c1 + c2 <= 4
// yields exactly 1.
inline double smpso_constriction(double c1, double c2) {
  double const phi = std::max(c1 + c2, 4.0);
  return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

inline constexpr double smpso_inertia = 0.1;
inline constexpr double smpso_bounce = -0.001;

// One speed-constrained particle move: constricted velocity update, clamp to
// half the variable range, then position update with bound reflection.
inline void smpso_move(Particle& p, std::span<const double> leader, double c1, double c2,
                       std::span<const double> lower, std::span<const double> upper, Rng& rng) {
  std::size_t const n = p.position.size();
  detail::check_same_length(n, leader.size());
  detail::check_same_length(n, p.velocity.size());
  detail::check_same_length(n, p.best_position.size());
  detail::check_same_length(n, lower.size());
  detail::check_same_length(n, upper.size());
  if (c1 < 1.5 || c1 > 2.5 || c2 < 1.5 || c2 > 2.5) {
    throw DomainError("SMPSO acceleration coefficients must lie in [1.5, 2.5]");
  }
  double const r1 = rng.uniform();
  double const r2 = rng.uniform();
  double const chi = smpso_constriction(c1, c2);
  for (std::size_t i = 0; i < n; ++i) {
    double const x = p.position[i];
    double v = chi * (smpso_inertia * p.velocity[i] + c1 * r1 * (p.best_position[i] - x) + c2 * r2 * (leader[i] - x));
    double const delta = (upper[i] - lower[i]) / 2.0;
    v = detail::clip(v, -delta, delta);
    double nx = x + v;
    if (nx < lower[i]) {
      nx = lower[i];
      v *= smpso_bounce;
    } else if (nx > upper[i]) {
      nx = upper[i];
      v *= smpso_bounce;
    }
    p.position[i] = nx;
    p.velocity[i] = v;
  }
}

} // namespace momo
