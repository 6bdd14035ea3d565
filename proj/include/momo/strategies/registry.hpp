#pragma once

#include <memory>
#include <string>
#include <vector>

#include "momo/strategies/grea.hpp"
#include "momo/strategies/hype.hpp"
#include "momo/strategies/ibea.hpp"
#include "momo/strategies/moead.hpp"
#include "momo/strategies/nsga2.hpp"
#include "momo/strategies/nsga3.hpp"
#include "momo/strategies/smpso.hpp"
#include "momo/strategies/spea2.hpp"

namespace momo {

enum class EngineKind { ea, pso };

inline std::string to_string(EngineKind k) { return k == EngineKind::ea ? "ea" : "pso"; }

struct StrategyEntry {
  std::string id;
  EngineKind engine;
  std::vector<std::string> params;
};

inline std::vector<StrategyEntry> strategy_catalog() {
  return {
      {"grea", EngineKind::ea, {"divisions"}},
      {"hype", EngineKind::ea, {"reference", "sampling-size"}},
      {"ibea", EngineKind::ea, {"kappa"}},
      {"moead", EngineKind::ea, {"delta", "max-replacements", "neighborhood-size"}},
      {"nsga2", EngineKind::ea, {}},
      {"nsga3", EngineKind::ea, {"divisions"}},
      {"smpso", EngineKind::pso, {"archive-size", "eta"}},
      {"spea2", EngineKind::ea, {}},
  };
}

inline StrategyEntry const& strategy_entry(std::string const& id) {
  static auto const catalog = strategy_catalog();
  for (auto const& e : catalog) {
    if (e.id == id) return e;
  }
  throw ConfigError("unknown strategy '" + id + "'");
}

namespace detail {

inline void check_strategy_params(StrategyEntry const& e, Params const& p) {
  for (auto const& [key, value] : p.values()) {
    if (std::find(e.params.begin(), e.params.end(), key) == e.params.end()) {
      throw ConfigError("strategy '" + e.id + "' has no parameter '" + key + "'");
    }
  }
}

} // namespace detail

inline std::unique_ptr<Strategy> make_strategy(std::string const& id, Params const& p = {}) {
  auto const& e = strategy_entry(id);
  if (e.engine != EngineKind::ea) throw ConfigError("strategy '" + id + "' is not an evolutionary strategy");
  detail::check_strategy_params(e, p);
  if (id == "nsga2") return std::make_unique<Nsga2>();
  if (id == "spea2") return std::make_unique<Spea2>();
  if (id == "ibea") return std::make_unique<Ibea>(p.get("kappa", default_ibea_kappa));
  if (id == "moead") {
    MoeadOptions o;
    o.neighborhood_size = p.get_count("neighborhood-size", o.neighborhood_size);
    o.max_replacements = p.get_count("max-replacements", o.max_replacements);
    o.delta = p.get("delta", o.delta);
    return std::make_unique<Moead>(o);
  }
  if (id == "nsga3") return std::make_unique<Nsga3>(p.get_count("divisions", 0));
  if (id == "grea") return std::make_unique<Grea>(p.get_count("divisions", default_grea_divisions));
  if (id == "hype") {
    return std::make_unique<Hype>(p.get_count("sampling-size", default_hype_samples),
                                  p.get("reference", default_hype_reference));
  }
  throw ConfigError("unknown strategy '" + id + "'");
}

inline std::unique_ptr<Smpso> make_swarm_strategy(std::string const& id, Params const& p = {}) {
  auto const& e = strategy_entry(id);
  if (e.engine != EngineKind::pso) throw ConfigError("strategy '" + id + "' is not a swarm strategy");
  detail::check_strategy_params(e, p);
  std::optional<std::size_t> archive;
  if (p.has("archive-size")) archive = p.get_count("archive-size", 0);
  return std::make_unique<Smpso>(archive, p.get("eta", default_eta_mutation));
}

} // namespace momo
