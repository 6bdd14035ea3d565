#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>

#include "momo/core/error.hpp"

namespace momo {

// Named numeric parameters of a registry component (strategy, problem, operator).
class Params {
public:
  Params() = default;
  Params(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  void set(std::string const& key, double v) { values_[key] = v; }
  bool has(std::string const& key) const { return values_.count(key) != 0; }

  double get(std::string const& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  std::size_t get_count(std::string const& key, std::size_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    double const v = it->second;
    if (!(v >= 0.0) || v != std::floor(v)) {
      throw ConfigError("parameter '" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
  }

  std::map<std::string, double> const& values() const noexcept { return values_; }
  bool operator==(Params const&) const = default;

private:
  std::map<std::string, double> values_;
};

} // namespace momo
