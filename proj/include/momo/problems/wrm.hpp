#pragma once

#include <array>
#include <cmath>
#include <span>

#include "momo/problems/problem.hpp"

namespace momo {

// Water resource management (storm drainage planning): three decision
// variables, five minimized costs and seven inequality constraints. Constants
// are taken verbatim from the published formulation.
namespace wrm {

inline constexpr std::array<double, 3> lower{0.01, 0.01, 0.01};
inline constexpr std::array<double, 3> upper{0.45, 0.10, 0.10};
inline constexpr std::array<double, 7> limits{1.0, 1.0, 50000.0, 16000.0, 10000.0, 2000.0, 550.0};

namespace detail {
inline double inverse_product(std::span<const double> x) {
  if (x.size() != 3) throw DimensionError("WRM takes exactly three variables");
  double const p = x[0] * x[1];
  if (p == 0.0) throw DomainError("WRM is undefined for x1 * x2 = 0");
  return 1.0 / p;
}
} // namespace detail

inline std::array<double, 5> objectives(std::span<const double> x) {
  double const inv = detail::inverse_product(x);
  double const x1 = x[0], x2 = x[1], x3 = x[2];
  return {
      106780.37 * (x2 + x3) + 61704.67,
      3000.00 * x1,
      30570.00 * 0.02289 * x2 / std::pow(0.06 * 2289.0, 0.65),
      250.00 * 2289.00 * std::exp(-39.75 * x2 + 9.90 * x3 + 2.74),
      25.00 * (1.39 * inv) + 4940.0 * x3 + 2.74,
  };
}

// Left-hand sides of g1..g7 before moving the limits to the right.
inline std::array<double, 7> constraint_lhs(std::span<const double> x) {
  double const inv = detail::inverse_product(x);
  double const x3 = x[2];
  return {
      0.00139 * inv + 4.94 * x3 - 0.08,
      0.000306 * inv + 1.082 * x3 - 0.0986,
      12.307 * inv + 49408.24 * x3 + 4051.02,
      2.098 * inv + 8046.33 * x3 - 696.71,
      2.138 * inv + 7883.39 * x3 - 705.04,
      0.417 * inv + 1721.26 * x3 - 136.54,
      0.164 * inv + 631.13 * x3 - 54.48,
  };
}

// g_i = lhs_i - limit_i, feasible when every g_i <= 0.
inline std::array<double, 7> constraint_values(std::span<const double> x) {
  auto g = constraint_lhs(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= limits[i];
  return g;
}

} // namespace wrm

inline ConstraintRecord wrm_constraints(std::span<const double> x) {
  auto const g = wrm::constraint_values(x);
  return ConstraintRecord::from_violations(g);
}

class WrmProblem final : public Problem {
public:
  WrmProblem()
      : spec_(EncodingSpec::real({wrm::lower.begin(), wrm::lower.end()}, {wrm::upper.begin(), wrm::upper.end()})) {}

  std::string id() const override { return "wrm"; }
  EncodingSpec const& encoding() const override { return spec_; }
  std::vector<ObjectiveInfo> objectives() const override {
    return {{"wrm.f1"}, {"wrm.f2"}, {"wrm.f3"}, {"wrm.f4"}, {"wrm.f5"}};
  }
  void evaluate(Genotype const& g, std::span<double> out) const override {
    auto const f = wrm::objectives(real_genes(g));
    std::copy(f.begin(), f.end(), out.begin());
  }
  ConstraintRecord constraints(Genotype const& g) const override { return wrm_constraints(real_genes(g)); }
  bool constrained() const override { return true; }

private:
  EncodingSpec spec_;
};

} // namespace momo
