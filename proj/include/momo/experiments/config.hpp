#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "momo/core/params.hpp"
#include "momo/experiments/xml.hpp"
#include "momo/indicators/indicators.hpp"
#include "momo/problems/registry.hpp"
#include "momo/strategies/registry.hpp"
#include "momo/variation/reproduction.hpp"

namespace momo {

struct ObjectiveSpec {
  std::string type;
  bool maximize = false;
  bool operator==(ObjectiveSpec const&) const = default;
};

struct OperatorSpec {
  std::string type;
  double probability = 1.0;
  Params params;
  bool operator==(OperatorSpec const&) const = default;
};

enum class ReporterKind { pareto_front, comparison };

inline std::string to_string(ReporterKind k) {
  return k == ReporterKind::pareto_front ? "pareto-front-reporter" : "comparison-reporter";
}

struct ReporterSpec {
  ReporterKind kind = ReporterKind::pareto_front;
  std::string title;
  std::optional<std::size_t> number_of_algorithms;
  std::optional<std::size_t> number_of_executions;
  std::vector<std::string> indicators;
  // Generations between indicator rows; unset means a single row at the end.
  std::optional<std::size_t> frequency;
  std::optional<std::vector<double>> reference_point;
  bool operator==(ReporterSpec const&) const = default;
};

struct ExperimentConfig {
  std::string id;
  std::string algorithm = "ea";
  std::string strategy;
  Params strategy_params;
  std::string problem;
  Params problem_params;
  EvaluationMode mode = EvaluationMode::sequential;
  std::size_t workers = 0;
  // Empty selects every objective of the problem, minimized unless the
  // problem declares otherwise.
  std::vector<ObjectiveSpec> objectives;
  std::optional<OperatorSpec> recombinator;
  std::optional<OperatorSpec> mutator;
  std::size_t population_size = 0;
  std::optional<std::size_t> max_generations;
  std::optional<std::size_t> max_evaluations;
  std::vector<std::uint64_t> seeds;
  std::vector<ReporterSpec> reporters;

  bool operator==(ExperimentConfig const&) const = default;
};

inline std::vector<std::string> recombinator_params(std::string const& id) {
  if (id == "blx-alpha") return {"alpha"};
  if (id == "sbx") return {"eta"};
  return {};
}

inline std::vector<std::string> mutator_params(std::string const& id) {
  if (id == "polynomial") return {"eta"};
  return {};
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trim(std::string const& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool safe_name(std::string const& s) {
  if (s.empty() || s == "." || s == "..") return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) return false;
  }
  return true;
}

// Walks the document keeping the element path for error messages.
class ConfigReader {
public:
  explicit ConfigReader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::string const& what, xml::Node const& at, std::string const& path) const {
    throw ConfigError(source_ + ": " + path + ": " + what, at.line);
  }

  double number(std::string const& text, xml::Node const& at, std::string const& path) const {
    auto const t = trim(text);
    char* end = nullptr;
    errno = 0;
    double const v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
      fail("'" + t + "' is not a finite number", at, path);
    }
    return v;
  }

  std::size_t count(std::string const& text, xml::Node const& at, std::string const& path) const {
    double const v = number(text, at, path);
    if (v < 0.0 || v != std::floor(v) || v > 1e15) fail("'" + trim(text) + "' is not a nonnegative integer", at, path);
    return static_cast<std::size_t>(v);
  }

  std::uint64_t seed(std::string const& text, xml::Node const& at, std::string const& path) const {
    auto const t = trim(text);
    char* end = nullptr;
    errno = 0;
    auto const v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
      fail("'" + t + "' is not a valid seed", at, path);
    }
    return v;
  }

  double probability(xml::Node const& n, std::string const& key, std::string const& path) const {
    auto const a = n.attribute(key);
    if (!a) fail("missing attribute " + key, n, path);
    double const p = number(*a, n, path + "/@" + key);
    if (p < 0.0 || p > 1.0) fail(key + " must lie in [0, 1]", n, path);
    return p;
  }

  bool boolean(std::string const& text, xml::Node const& at, std::string const& path) const {
    auto const t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    fail("expected true or false, got '" + t + "'", at, path);
  }

  std::string required_attr(xml::Node const& n, std::string const& key, std::string const& path) const {
    auto a = n.attribute(key);
    if (!a || trim(*a).empty()) fail("missing attribute " + key, n, path);
    return trim(*a);
  }

  void allow_attrs(xml::Node const& n, std::set<std::string> const& allowed, std::string const& path) const {
    for (auto const& [k, v] : n.attributes) {
      if (!allowed.count(k)) fail("unknown attribute " + k, n, path);
    }
  }

  void leaf(xml::Node const& n, std::string const& path) const {
    if (!n.children.empty()) fail("unexpected element " + n.children.front().name, n.children.front(), path + "/" + n.children.front().name);
  }

  // Child elements named after the parameters; anything else is rejected.
  Params params(xml::Node const& n, std::vector<std::string> const& allowed, std::set<std::string> const& skip,
                std::string const& path) const {
    Params out;
    for (auto const& c : n.children) {
      if (skip.count(c.name)) continue;
      auto const cpath = path + "/" + c.name;
      if (std::find(allowed.begin(), allowed.end(), c.name) == allowed.end()) fail("unknown element", c, cpath);
      if (out.has(c.name)) fail("duplicate element", c, cpath);
      leaf(c, cpath);
      out.set(c.name, number(c.text, c, cpath));
    }
    return out;
  }

  std::string const& source() const noexcept { return source_; }

private:
  std::string source_;
};

inline std::string problem_family(std::string const& id) {
  auto const dash = id.find("-m");
  return dash == std::string::npos ? id : id.substr(0, dash);
}

inline std::vector<std::string> problem_params(std::string const& id) {
  auto const family = problem_family(id);
  for (auto const& e : problem_catalog()) {
    if (e.id == family) return e.params;
  }
  return {};
}

inline OperatorSpec read_operator(ConfigReader const& r, xml::Node const& n, std::string const& prob_key,
                                  bool recombinator, std::string const& path) {
  OperatorSpec op;
  op.type = r.required_attr(n, "type", path);
  auto const ids = recombinator ? recombinator_ids() : mutator_ids();
  if (std::find(ids.begin(), ids.end(), op.type) == ids.end()) r.fail("unknown operator '" + op.type + "'", n, path);
  op.probability = r.probability(n, prob_key, path);
  auto const allowed = recombinator ? recombinator_params(op.type) : mutator_params(op.type);
  for (auto const& [k, v] : n.attributes) {
    if (k == "type" || k == prob_key) continue;
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) r.fail("unknown attribute " + k, n, path);
    op.params.set(k, r.number(v, n, path + "/@" + k));
  }
  r.leaf(n, path);
  return op;
}

inline ReporterSpec read_listener(ConfigReader const& r, xml::Node const& n, std::string const& path) {
  r.allow_attrs(n, {"type"}, path);
  auto const type = r.required_attr(n, "type", path);
  ReporterSpec rep;
  if (type == "pareto-front-reporter") {
    rep.kind = ReporterKind::pareto_front;
  } else if (type == "comparison-reporter") {
    rep.kind = ReporterKind::comparison;
  } else {
    r.fail("unknown listener '" + type + "'", n, path);
  }
  std::set<std::string> seen;
  for (auto const& c : n.children) {
    auto const cpath = path + "/" + c.name;
    if (!seen.insert(c.name).second) r.fail("duplicate element", c, cpath);
    bool const comparison = rep.kind == ReporterKind::comparison;
    if (c.name == "report-title") {
      r.leaf(c, cpath);
      rep.title = trim(c.text);
      if (!safe_name(rep.title)) r.fail("report title must be a plain directory name", c, cpath);
    } else if (comparison && c.name == "number-of-algorithms") {
      r.leaf(c, cpath);
      rep.number_of_algorithms = r.count(c.text, c, cpath);
    } else if (comparison && c.name == "number-of-executions") {
      r.leaf(c, cpath);
      rep.number_of_executions = r.count(c.text, c, cpath);
    } else if (comparison && c.name == "frequency") {
      r.leaf(c, cpath);
      rep.frequency = r.count(c.text, c, cpath);
      if (*rep.frequency == 0) r.fail("frequency must be at least 1", c, cpath);
    } else if (comparison && c.name == "reference-point") {
      r.leaf(c, cpath);
      std::vector<double> ref;
      std::string token;
      std::string const text = c.text + ",";
      for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
          if (!token.empty()) ref.push_back(r.number(token, c, cpath));
          token.clear();
        } else {
          token += ch;
        }
      }
      if (ref.empty()) r.fail("empty reference point", c, cpath);
      rep.reference_point = std::move(ref);
    } else if (comparison && c.name == "indicators") {
      for (auto const& i : c.children) {
        auto const ipath = cpath + "/" + i.name;
        if (i.name != "indicator") r.fail("unknown element", i, ipath);
        r.allow_attrs(i, {"type"}, ipath);
        r.leaf(i, ipath);
        auto const id = r.required_attr(i, "type", ipath);
        if (!indicator::is_unary(id)) r.fail("unknown unary indicator '" + id + "'", i, ipath);
        if (std::find(rep.indicators.begin(), rep.indicators.end(), id) != rep.indicators.end()) {
          r.fail("duplicate indicator '" + id + "'", i, ipath);
        }
        rep.indicators.push_back(id);
      }
      if (rep.indicators.empty()) r.fail("at least one indicator is required", c, cpath);
    } else {
      r.fail("unknown element", c, cpath);
    }
  }
  if (rep.title.empty()) r.fail("missing element report-title", n, path);
  if (rep.kind == ReporterKind::comparison && rep.indicators.empty()) r.fail("missing element indicators", n, path);
  return rep;
}

inline void read_seeds(ConfigReader const& r, xml::Node const& n, std::string const& path,
                       std::vector<std::uint64_t>& seeds, bool nested) {
  r.allow_attrs(n, {"type", "seed", "multi"}, path);
  if (auto t = n.attribute("type"); t && *t != "mt19937-64") r.fail("unknown random generator '" + *t + "'", n, path);
  if (auto s = n.attribute("seed")) {
    r.leaf(n, path);
    seeds.push_back(r.seed(*s, n, path + "/@seed"));
    return;
  }
  if (nested) r.fail("missing attribute seed", n, path);
  for (auto const& c : n.children) {
    auto const cpath = path + "/" + c.name;
    if (c.name != "rand-gen-factory") r.fail("unknown element", c, cpath);
    read_seeds(r, c, cpath, seeds, true);
  }
  if (seeds.empty()) r.fail("at least one seed is required", n, path);
}

} // namespace detail

// Cross-checks ids, parameters and dimensions; throws ConfigError.
inline void validate(ExperimentConfig const& c) {
  if (!detail::safe_name(c.id)) throw ConfigError("configuration id '" + c.id + "' must be a plain directory name");
  auto const& entry = strategy_entry(c.strategy);
  if (to_string(entry.engine) != c.algorithm) {
    throw ConfigError("strategy '" + c.strategy + "' needs algorithm-type '" + to_string(entry.engine) + "'");
  }
  if (c.algorithm == "ea") {
    make_strategy(c.strategy, c.strategy_params);
  } else {
    make_swarm_strategy(c.strategy, c.strategy_params);
  }
  auto const problem = make_problem(c.problem, c.problem_params);
  auto const objs = problem->objectives();
  for (auto const& o : c.objectives) {
    auto it = std::find_if(objs.begin(), objs.end(), [&](ObjectiveInfo const& i) { return i.id == o.type; });
    if (it == objs.end()) throw ConfigError("problem '" + c.problem + "' has no objective '" + o.type + "'");
  }
  std::size_t const m = c.objectives.empty() ? objs.size() : c.objectives.size();
  if (m < 2) throw ConfigError("at least two objectives are required");
  auto const kind = problem->encoding().kind;
  if (c.algorithm == "pso") {
    if (c.recombinator || c.mutator) throw ConfigError("the swarm engine takes no recombinator or mutator");
    if (kind != Encoding::real) throw ConfigError("the swarm engine requires a real-encoded problem");
  }
  if (c.recombinator && !make_recombinator(c.recombinator->type, c.recombinator->probability, c.recombinator->params)->accepts(kind)) {
    throw ConfigError("recombinator '" + c.recombinator->type + "' does not accept " + to_string(kind) + " encodings");
  }
  if (c.mutator && !make_mutator(c.mutator->type, c.mutator->probability, c.mutator->params)->accepts(kind)) {
    throw ConfigError("mutator '" + c.mutator->type + "' does not accept " + to_string(kind) + " encodings");
  }
  if (c.population_size == 0) throw ConfigError("population-size must be positive");
  if (c.population_size < 2 && c.algorithm == "ea") throw ConfigError("population-size must be at least 2");
  if (!c.max_generations && !c.max_evaluations) throw ConfigError("max-of-generations or max-of-evaluations is required");
  if (c.seeds.empty()) throw ConfigError("at least one seed is required");
  for (auto const& r : c.reporters) {
    if (r.reference_point && r.reference_point->size() != m) {
      throw ConfigError("reference point has " + std::to_string(r.reference_point->size()) + " values for " +
                        std::to_string(m) + " objectives");
    }
  }
}

// Parses a configuration document. `default_id` names the configuration when
// the root carries no id attribute.
inline ExperimentConfig parse_config_text(std::string const& text, std::string const& source,
                                          std::string const& default_id) {
  detail::ConfigReader r(source);
  auto const root = xml::parse(text, source);
  std::string const rpath = root.name;
  if (root.name != "experiment") r.fail("root element must be experiment", root, rpath);
  r.allow_attrs(root, {"id"}, rpath);
  ExperimentConfig c;
  c.id = root.attribute("id") ? detail::trim(*root.attribute("id")) : default_id;
  if (!detail::safe_name(c.id)) r.fail("configuration id '" + c.id + "' must be a plain directory name", root, rpath);

  xml::Node const* process = nullptr;
  for (auto const& ch : root.children) {
    if (ch.name != "process") r.fail("unknown element", ch, rpath + "/" + ch.name);
    if (process) r.fail("duplicate element", ch, rpath + "/" + ch.name);
    process = &ch;
  }
  if (!process) r.fail("missing element process", root, rpath);
  std::string const ppath = rpath + "/process";
  r.allow_attrs(*process, {"algorithm-type"}, ppath);
  c.algorithm = r.required_attr(*process, "algorithm-type", ppath);
  if (c.algorithm != "ea" && c.algorithm != "pso") r.fail("unknown algorithm-type '" + c.algorithm + "'", *process, ppath);

  std::set<std::string> seen;
  bool have_seeds = false;
  bool have_strategy = false;
  bool have_evaluator = false;
  bool have_population = false;
  for (auto const& ch : process->children) {
    auto const path = ppath + "/" + ch.name;
    if (ch.name != "listener" && !seen.insert(ch.name).second) r.fail("duplicate element", ch, path);
    if (ch.name == "mo-strategy") {
      r.allow_attrs(ch, {"type"}, path);
      c.strategy = r.required_attr(ch, "type", path);
      StrategyEntry entry;
      try {
        entry = strategy_entry(c.strategy);
      } catch (ConfigError const& e) {
        r.fail(e.what(), ch, path);
      }
      c.strategy_params = r.params(ch, entry.params, {}, path);
      have_strategy = true;
    } else if (ch.name == "evaluator") {
      r.allow_attrs(ch, {"type", "mode", "workers"}, path);
      c.problem = r.required_attr(ch, "type", path);
      auto const mode = ch.attribute("mode").value_or("sequential");
      if (mode == "sequential") {
        c.mode = EvaluationMode::sequential;
      } else if (mode == "parallel") {
        c.mode = EvaluationMode::parallel;
      } else {
        r.fail("unknown evaluator mode '" + mode + "'", ch, path);
      }
      if (auto w = ch.attribute("workers")) c.workers = r.count(*w, ch, path + "/@workers");
      c.problem_params = r.params(ch, detail::problem_params(c.problem), {"objectives"}, path);
      for (auto const& o : ch.children) {
        if (o.name != "objectives") continue;
        auto const opath = path + "/objectives";
        if (!c.objectives.empty()) r.fail("duplicate element", o, opath);
        for (auto const& obj : o.children) {
          auto const objpath = opath + "/" + obj.name;
          if (obj.name != "objective") r.fail("unknown element", obj, objpath);
          r.allow_attrs(obj, {"type", "maximize"}, objpath);
          r.leaf(obj, objpath);
          ObjectiveSpec spec;
          spec.type = r.required_attr(obj, "type", objpath);
          if (auto mx = obj.attribute("maximize")) spec.maximize = r.boolean(*mx, obj, objpath + "/@maximize");
          c.objectives.push_back(spec);
        }
        if (c.objectives.empty()) r.fail("objectives must list at least one objective", o, opath);
      }
      have_evaluator = true;
    } else if (ch.name == "recombinator") {
      c.recombinator = detail::read_operator(r, ch, "rec-prob", true, path);
    } else if (ch.name == "mutator") {
      c.mutator = detail::read_operator(r, ch, "mut-prob", false, path);
    } else if (ch.name == "population-size") {
      r.allow_attrs(ch, {}, path);
      r.leaf(ch, path);
      c.population_size = r.count(ch.text, ch, path);
      if (c.population_size == 0) r.fail("population-size must be positive", ch, path);
      have_population = true;
    } else if (ch.name == "max-of-generations") {
      r.allow_attrs(ch, {}, path);
      r.leaf(ch, path);
      c.max_generations = r.count(ch.text, ch, path);
    } else if (ch.name == "max-of-evaluations") {
      r.allow_attrs(ch, {}, path);
      r.leaf(ch, path);
      c.max_evaluations = r.count(ch.text, ch, path);
    } else if (ch.name == "rand-gen-factory") {
      detail::read_seeds(r, ch, path, c.seeds, false);
      have_seeds = true;
    } else if (ch.name == "listener") {
      c.reporters.push_back(detail::read_listener(r, ch, path));
    } else {
      r.fail("unknown element", ch, path);
    }
  }
  if (!have_strategy) r.fail("missing element mo-strategy", *process, ppath);
  if (!have_evaluator) r.fail("missing element evaluator", *process, ppath);
  if (!have_population) r.fail("missing element population-size", *process, ppath);
  if (!c.max_generations && !c.max_evaluations) r.fail("missing element max-of-generations", *process, ppath);
  if (!have_seeds) r.fail("missing element rand-gen-factory", *process, ppath);
  try {
    validate(c);
  } catch (ConfigError const& e) {
    r.fail(e.what(), *process, ppath);
  }
  return c;
}

inline ExperimentConfig parse_config(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path, std::filesystem::path(path).stem().string());
}

inline xml::Node to_xml(ExperimentConfig const& c) {
  using detail::format_double;
  xml::Node root{"experiment", {}, {}, {}, 0};
  root.set("id", c.id);
  auto& p = root.add("process");
  p.set("algorithm-type", c.algorithm);
  auto& s = p.add("mo-strategy");
  s.set("type", c.strategy);
  for (auto const& [k, v] : c.strategy_params.values()) s.add(k).text = format_double(v);
  auto& e = p.add("evaluator");
  e.set("type", c.problem);
  e.set("mode", c.mode == EvaluationMode::parallel ? "parallel" : "sequential");
  if (c.workers) e.set("workers", std::to_string(c.workers));
  for (auto const& [k, v] : c.problem_params.values()) e.add(k).text = format_double(v);
  if (!c.objectives.empty()) {
    auto& os = e.add("objectives");
    for (auto const& o : c.objectives) os.add("objective").set("type", o.type).set("maximize", o.maximize ? "true" : "false");
  }
  auto op = [&](OperatorSpec const& spec, std::string const& name, std::string const& prob) {
    auto& n = p.add(name);
    n.set("type", spec.type);
    n.set(prob, format_double(spec.probability));
    for (auto const& [k, v] : spec.params.values()) n.set(k, format_double(v));
  };
  if (c.recombinator) op(*c.recombinator, "recombinator", "rec-prob");
  if (c.mutator) op(*c.mutator, "mutator", "mut-prob");
  p.add("population-size").text = std::to_string(c.population_size);
  if (c.max_generations) p.add("max-of-generations").text = std::to_string(*c.max_generations);
  if (c.max_evaluations) p.add("max-of-evaluations").text = std::to_string(*c.max_evaluations);
  auto& seeds = p.add("rand-gen-factory");
  seeds.set("multi", "true");
  for (auto v : c.seeds) seeds.add("rand-gen-factory").set("type", "mt19937-64").set("seed", std::to_string(v));
  for (auto const& r : c.reporters) {
    auto& l = p.add("listener");
    l.set("type", to_string(r.kind));
    l.add("report-title").text = r.title;
    if (r.number_of_algorithms) l.add("number-of-algorithms").text = std::to_string(*r.number_of_algorithms);
    if (r.number_of_executions) l.add("number-of-executions").text = std::to_string(*r.number_of_executions);
    if (r.frequency) l.add("frequency").text = std::to_string(*r.frequency);
    if (r.reference_point) {
      std::string text;
      for (auto v : *r.reference_point) text += (text.empty() ? "" : ",") + format_double(v);
      l.add("reference-point").text = text;
    }
    if (!r.indicators.empty()) {
      auto& is = l.add("indicators");
      for (auto const& i : r.indicators) is.add("indicator").set("type", i);
    }
  }
  return root;
}

inline std::string serialize(ExperimentConfig const& c) { return xml::to_string(to_xml(c)); }

// FNV-1a over the canonical serialization.
inline std::uint64_t config_hash(ExperimentConfig const& c) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace momo
