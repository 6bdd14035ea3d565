#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "momo/core/random.hpp"
#include "momo/problems/problem.hpp"

namespace momo {

namespace detail {
inline void check_unit_box(std::span<const double> x, char const* name) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(name) + " variables must lie in [0, 1]");
  }
}
} // namespace detail

// ZDT1, ZDT2 and ZDT3; both objectives minimized.
inline std::array<double, 2> zdt(int variant, std::span<const double> x) {
  if (variant < 1 || variant > 3) throw ConfigError("ZDT variant must be 1, 2 or 3");
  if (x.size() < 2) throw DimensionError("ZDT needs at least two variables");
  detail::check_unit_box(x, "ZDT");
  double const f1 = x[0];
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += x[i];
  double const g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
  double const r = f1 / g;
  double h = 0.0;
  switch (variant) {
  case 1: h = 1.0 - std::sqrt(r); break;
  case 2: h = 1.0 - r * r; break;
  case 3: h = 1.0 - std::sqrt(r) - r * std::sin(10.0 * std::numbers::pi * f1); break;
  }
  return {f1, g * h};
}

// DTLZ1 and DTLZ2 with m objectives over n = m - 1 + k variables.
inline std::vector<double> dtlz(int variant, std::span<const double> x, std::size_t m) {
  if (variant != 1 && variant != 2) throw ConfigError("DTLZ variant must be 1 or 2");
  if (m < 2 || x.size() < m) {
    throw ConfigError("DTLZ needs n = m - 1 + k variables with k >= 1 (n = " + std::to_string(x.size()) +
                      ", m = " + std::to_string(m) + ")");
  }
  detail::check_unit_box(x, "DTLZ");
  double g = 0.0;
  for (std::size_t i = m - 1; i < x.size(); ++i) {
    double const d = x[i] - 0.5;
    g += variant == 1 ? d * d - std::cos(20.0 * std::numbers::pi * d) : d * d;
  }
  if (variant == 1) g = 100.0 * (static_cast<double>(x.size() - m + 1) + g);
  std::vector<double> f(m);
  double const half_pi = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    double v = variant == 1 ? 0.5 * (1.0 + g) : 1.0 + g;
    for (std::size_t j = 0; j + 1 + i < m; ++j) v *= variant == 1 ? x[j] : std::cos(x[j] * half_pi);
    if (i > 0) {
      double const xi = x[m - 1 - i];
      v *= variant == 1 ? 1.0 - xi : std::sin(xi * half_pi);
    }
    f[i] = v;
  }
  return f;
}

struct KnapsackOutcome {
  double value;
  double weight;
  ConstraintRecord constraints;
};

// Bi-objective 0/1 knapsack: total value (maximized) and total weight
// (minimized); overweight solutions are infeasible by the excess.
inline KnapsackOutcome knapsack(std::span<const std::uint8_t> bits, std::span<const double> weights,
                                std::span<const double> values, double capacity) {
  if (weights.size() != values.size() || bits.size() != weights.size()) {
    throw DimensionError("knapsack bits, weights and values must have equal lengths");
  }
  if (!(capacity > 0.0)) throw ConfigError("knapsack capacity must be positive");
  double v = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      v += values[i];
      w += weights[i];
    }
  }
  return {v, w, ConstraintRecord::from_degree(std::max(0.0, w - capacity))};
}

class ZdtProblem final : public Problem {
public:
  ZdtProblem(int variant, std::size_t n) : variant_(variant), spec_(EncodingSpec::real(n, 0.0, 1.0)) {
    if (variant < 1 || variant > 3) throw ConfigError("ZDT variant must be 1, 2 or 3");
    if (n < 2) throw ConfigError("ZDT needs at least two variables");
  }
  std::string id() const override { return "zdt" + std::to_string(variant_); }
  EncodingSpec const& encoding() const override { return spec_; }
  std::vector<ObjectiveInfo> objectives() const override { return {{id() + ".f1"}, {id() + ".f2"}}; }
  void evaluate(Genotype const& g, std::span<double> out) const override {
    auto const f = zdt(variant_, real_genes(g));
    out[0] = f[0];
    out[1] = f[1];
  }

private:
  int variant_;
  EncodingSpec spec_;
};

class DtlzProblem final : public Problem {
public:
  DtlzProblem(int variant, std::size_t m, std::size_t k)
      : variant_(variant), m_(m), spec_(EncodingSpec::real(m - 1 + k, 0.0, 1.0)) {
    if (variant != 1 && variant != 2) throw ConfigError("DTLZ variant must be 1 or 2");
    if (m < 2 || k < 1) throw ConfigError("DTLZ needs m >= 2 and k >= 1");
  }
  std::string id() const override { return "dtlz" + std::to_string(variant_) + "-m" + std::to_string(m_); }
  EncodingSpec const& encoding() const override { return spec_; }
  std::vector<ObjectiveInfo> objectives() const override {
    std::vector<ObjectiveInfo> out;
    for (std::size_t i = 0; i < m_; ++i) out.push_back({"dtlz.f" + std::to_string(i + 1)});
    return out;
  }
  void evaluate(Genotype const& g, std::span<double> out) const override {
    auto const f = dtlz(variant_, real_genes(g), m_);
    std::copy(f.begin(), f.end(), out.begin());
  }

private:
  int variant_;
  std::size_t m_;
  EncodingSpec spec_;
};

// Random instance: integer weights and values in [10, 100], capacity half the
// total weight.
class KnapsackProblem final : public Problem {
public:
  KnapsackProblem(std::size_t items, std::uint64_t instance_seed) : spec_(EncodingSpec::binary(items)) {
    if (items == 0) throw ConfigError("knapsack needs at least one item");
    Rng rng(instance_seed);
    double total = 0.0;
    for (std::size_t i = 0; i < items; ++i) {
      weights_.push_back(10.0 + static_cast<double>(rng.index(91)));
      values_.push_back(10.0 + static_cast<double>(rng.index(91)));
      total += weights_.back();
    }
    capacity_ = total / 2.0;
  }

  KnapsackProblem(std::vector<double> weights, std::vector<double> values, double capacity)
      : spec_(EncodingSpec::binary(weights.size())), weights_(std::move(weights)), values_(std::move(values)),
        capacity_(capacity) {}

  std::string id() const override { return "knapsack"; }
  EncodingSpec const& encoding() const override { return spec_; }
  std::vector<ObjectiveInfo> objectives() const override {
    return {{"knapsack.value", true}, {"knapsack.weight", false}};
  }
  void evaluate(Genotype const& g, std::span<double> out) const override {
    auto const r = knapsack(std::get<BitString>(g).bits, weights_, values_, capacity_);
    out[0] = r.value;
    out[1] = r.weight;
  }
  ConstraintRecord constraints(Genotype const& g) const override {
    return knapsack(std::get<BitString>(g).bits, weights_, values_, capacity_).constraints;
  }
  bool constrained() const override { return true; }

  double capacity() const noexcept { return capacity_; }
  std::vector<double> const& weights() const noexcept { return weights_; }

private:
  EncodingSpec spec_;
  std::vector<double> weights_;
  std::vector<double> values_;
  double capacity_ = 0.0;
};

} // namespace momo
