#pragma once

#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "momo/core/params.hpp"
#include "momo/problems/benchmarks.hpp"
#include "momo/problems/wrm.hpp"

namespace momo {

struct RegistryEntry {
  std::string id;
  std::vector<std::string> params;
};

inline std::vector<RegistryEntry> problem_catalog() {
  return {
      {"dtlz1", {"k", "objectives"}},
      {"dtlz2", {"k", "objectives"}},
      {"knapsack", {"instance-seed", "items"}},
      {"wrm", {}},
      {"zdt1", {"variables"}},
      {"zdt2", {"variables"}},
      {"zdt3", {"variables"}},
  };
}

// Resolves ids such as "wrm", "zdt1", "dtlz2" or "dtlz2-m5" (objective count
// in the id) to a problem instance.
inline std::shared_ptr<const Problem> make_problem(std::string const& id, Params const& params = {}) {
  if (id == "wrm") return std::make_shared<WrmProblem>();
  std::smatch m;
  static std::regex const zdt_re("zdt([123])");
  static std::regex const dtlz_re("dtlz([12])(?:-m([0-9]+))?");
  if (std::regex_match(id, m, zdt_re)) {
    return std::make_shared<ZdtProblem>(std::stoi(m[1]), params.get_count("variables", 30));
  }
  if (std::regex_match(id, m, dtlz_re)) {
    int const variant = std::stoi(m[1]);
    std::size_t objectives = m[2].matched ? std::stoul(m[2]) : params.get_count("objectives", 3);
    std::size_t const k = params.get_count("k", variant == 1 ? 5 : 10);
    return std::make_shared<DtlzProblem>(variant, objectives, k);
  }
  if (id == "knapsack") {
    return std::make_shared<KnapsackProblem>(params.get_count("items", 30), params.get_count("instance-seed", 1));
  }
  throw ConfigError("unknown problem '" + id + "'");
}

} // namespace momo
