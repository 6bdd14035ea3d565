#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "momo/core/error.hpp"

namespace momo {

struct ObjectiveBounds {
  double lower;
  double upper;
};

// Per-objective optimization direction. Comparisons everywhere in the library
// run in minimization orientation: maximized components are negated at the
// comparator boundary, never in stored values.
class ObjectiveSense {
public:
  ObjectiveSense() = default;

  explicit ObjectiveSense(std::vector<bool> maximize,
                          std::vector<std::optional<ObjectiveBounds>> bounds = {})
      : maximize_(std::move(maximize)), bounds_(std::move(bounds)) {
    if (maximize_.size() < 2) {
      throw DimensionError("at least two objectives are required");
    }
    if (bounds_.empty()) {
      bounds_.resize(maximize_.size());
    }
    if (bounds_.size() != maximize_.size()) {
      throw DimensionError("objective bounds length differs from number of objectives");
    }
    for (auto const& b : bounds_) {
      if (b && !(b->lower < b->upper)) {
        throw ConfigError("objective bounds must satisfy lower < upper");
      }
    }
  }

  static ObjectiveSense minimize(std::size_t m) { return ObjectiveSense(std::vector<bool>(m, false)); }

  std::size_t size() const noexcept { return maximize_.size(); }
  bool maximized(std::size_t k) const { return maximize_.at(k); }
  std::vector<bool> const& flags() const noexcept { return maximize_; }
  std::optional<ObjectiveBounds> bounds(std::size_t k) const { return bounds_.at(k); }

  double orient(std::size_t k, double v) const { return maximize_[k] ? -v : v; }

  std::vector<double> orient(std::span<const double> values) const {
    if (values.size() != maximize_.size()) {
      throw DimensionError("objective vector length " + std::to_string(values.size()) + " != " +
                           std::to_string(maximize_.size()));
    }
    std::vector<double> out(values.begin(), values.end());
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (maximize_[k]) out[k] = -out[k];
    }
    return out;
  }

  bool operator==(ObjectiveSense const& o) const { return maximize_ == o.maximize_; }

private:
  std::vector<bool> maximize_;
  std::vector<std::optional<ObjectiveBounds>> bounds_;
};

namespace aux {
inline constexpr std::string_view rank = "rank";
inline constexpr std::string_view crowding = "crowding";
inline constexpr std::string_view strength = "strength";
inline constexpr std::string_view raw = "raw";
inline constexpr std::string_view density = "density";
inline constexpr std::string_view fitness = "fitness";
inline constexpr std::string_view grid_rank = "gr";
inline constexpr std::string_view grid_crowding = "gcd";
inline constexpr std::string_view grid_point_distance = "gcpd";
inline constexpr std::string_view hype = "hype";
} // namespace aux

// Objective values plus strategy-owned annotations.
class MOFitness {
public:
  MOFitness() = default;
  explicit MOFitness(std::vector<double> v) : values(std::move(v)) {}

  std::vector<double> values;
  std::optional<double> scalar_quality;

  void set_aux(std::string_view key, double v) {
    auto it = find(key);
    if (it != aux_.end()) {
      it->second = v;
    } else {
      aux_.emplace_back(std::string(key), v);
    }
  }

  std::optional<double> aux(std::string_view key) const {
    auto it = std::find_if(aux_.begin(), aux_.end(), [&](auto const& kv) { return kv.first == key; });
    if (it == aux_.end()) return std::nullopt;
    return it->second;
  }

  // Grid coordinates are stored as a vector property (GrEA).
  std::vector<double> grid;

  void clear_aux() {
    aux_.clear();
    grid.clear();
    scalar_quality.reset();
  }

  std::vector<std::pair<std::string, double>> const& aux_entries() const noexcept { return aux_; }

private:
  std::vector<std::pair<std::string, double>>::iterator find(std::string_view key) {
    return std::find_if(aux_.begin(), aux_.end(), [&](auto const& kv) { return kv.first == key; });
  }

  std::vector<std::pair<std::string, double>> aux_;
};

// Aggregate constraint satisfaction. Feasible exactly when the degree of
// infeasibility is zero.
class ConstraintRecord {
public:
  ConstraintRecord() = default;

  static ConstraintRecord from_degree(double degree) {
    if (!(degree >= 0.0)) {
      throw DomainError("degree of infeasibility must be a nonnegative real");
    }
    ConstraintRecord r;
    r.degree_ = degree;
    return r;
  }

  // Sum of positive parts of g_i, where each constraint is normalized to g_i <= 0.
  static ConstraintRecord from_violations(std::span<const double> g) {
    double total = 0.0;
    for (double v : g) {
      if (v > 0.0) total += v;
    }
    return from_degree(total);
  }

  bool feasible() const noexcept { return degree_ == 0.0; }
  double degree_of_infeasibility() const noexcept { return degree_; }

  bool operator==(ConstraintRecord const&) const = default;

private:
  double degree_ = 0.0;
};

} // namespace momo
