#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "momo/algorithms/engine.hpp"
#include "momo/experiments/config.hpp"
#include "momo/experiments/csv.hpp"

namespace momo {

struct RunRecord {
  std::size_t config_index = 0;
  std::string config_id;
  std::uint64_t config_hash = 0;
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;
  Population front;
  std::vector<std::filesystem::path> outputs;
  std::size_t generations = 0;
  std::size_t evaluations = 0;
  double wall_seconds = 0.0;
  std::optional<std::string> error;

  bool ok() const noexcept { return !error; }
};

struct ExperimentOptions {
  std::filesystem::path out_dir = "reports";
  std::size_t jobs = 1;
};

inline std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::filesystem::path run_dir(std::filesystem::path const& out, std::string const& title,
                                     std::string const& config_id) {
  return out / title / config_id;
}

inline std::filesystem::path front_file(std::filesystem::path const& out, std::string const& title,
                                        std::string const& config_id, std::size_t seed_index) {
  return run_dir(out, title, config_id) / ("pf-seed" + std::to_string(seed_index) + ".csv");
}

inline std::filesystem::path indicators_file(std::filesystem::path const& out, std::string const& title,
                                             std::string const& config_id, std::size_t seed_index) {
  return run_dir(out, title, config_id) / ("indicators-seed" + std::to_string(seed_index) + ".csv");
}

inline std::filesystem::path meta_file(std::filesystem::path const& out, std::string const& title,
                                       std::string const& config_id, std::size_t seed_index) {
  return run_dir(out, title, config_id) / ("run-meta-seed" + std::to_string(seed_index) + ".txt");
}

// Evaluator restricted to the configured objectives.
inline Evaluator make_evaluator(ExperimentConfig const& c) {
  auto problem = make_problem(c.problem, c.problem_params);
  if (c.objectives.empty()) return Evaluator(problem, c.mode, c.workers);
  auto const objs = problem->objectives();
  std::vector<std::size_t> selected;
  std::vector<bool> maximize;
  for (auto const& o : c.objectives) {
    auto it = std::find_if(objs.begin(), objs.end(), [&](ObjectiveInfo const& i) { return i.id == o.type; });
    if (it == objs.end()) throw ConfigError("problem '" + c.problem + "' has no objective '" + o.type + "'");
    selected.push_back(static_cast<std::size_t>(it - objs.begin()));
    maximize.push_back(o.maximize);
  }
  return Evaluator(problem, std::move(selected), std::move(maximize), c.mode, c.workers);
}

inline csv::Table front_table(Population const& front, std::size_t variables, std::size_t objectives) {
  csv::Table t;
  for (std::size_t i = 0; i < variables; ++i) t.header.push_back("var_" + std::to_string(i));
  for (std::size_t k = 0; k < objectives; ++k) t.header.push_back("obj_" + std::to_string(k));
  for (auto const& s : front) {
    auto row = decision_values(s.genotype);
    auto const& f = s.objectives();
    row.insert(row.end(), f.begin(), f.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Periodic unary indicator rows of one run. The hypervolume reference point is
// the configured one or the componentwise nadir of all feasible points seen so
// far, pushed outwards by 10% of its magnitude.
class IndicatorRecorder {
public:
  IndicatorRecorder(ReporterSpec spec, std::size_t objectives) : spec_(std::move(spec)) {
    table_.header = {"generation", "evaluations"};
    for (auto const& id : spec_.indicators) table_.header.push_back(id);
    nadir_.assign(objectives, -std::numeric_limits<double>::infinity());
  }

  void observe(AlgorithmState const& st, bool last) {
    for (auto const* set : {&st.population, &st.archive}) {
      for (auto const& s : *set) {
        if (!s.evaluated() || !s.constraints.feasible()) continue;
        auto const o = st.sense.orient(s.objectives());
        for (std::size_t k = 0; k < o.size(); ++k) nadir_[k] = std::max(nadir_[k], o[k]);
      }
    }
    bool const due = spec_.frequency && st.generation % *spec_.frequency == 0;
    if (!due && !last) return;
    if (!table_.rows.empty() && table_.rows.back()[0] == static_cast<double>(st.generation)) return;
    std::vector<double> row{static_cast<double>(st.generation), static_cast<double>(st.evaluations)};
    auto const front = st.front();
    std::vector<Point> pts;
    for (auto const& s : front) pts.push_back(st.sense.orient(s.objectives()));
    for (auto const& id : spec_.indicators) row.push_back(value(id, pts, st.sense));
    table_.rows.push_back(std::move(row));
  }

  csv::Table const& table() const noexcept { return table_; }

private:
  double value(std::string const& id, std::vector<Point> const& pts, ObjectiveSense const& sense) const {
    if (pts.empty()) return 0.0;
    Front f{pts};
    if (id == "hypervolume") {
      Point ref;
      if (spec_.reference_point) {
        ref = sense.orient(*spec_.reference_point);
      } else {
        ref = nadir_;
        for (auto& r : ref) r += 0.1 * std::abs(r);
      }
      auto const inside = hv::inside(pts, ref);
      return momo::hypervolume(inside, ref).value;
    }
    return indicator::unary(id, f);
  }

  ReporterSpec spec_;
  csv::Table table_;
  std::vector<double> nadir_;
};

namespace detail {

inline std::string meta_text(ExperimentConfig const& c, RunRecord const& r, Evaluator const& ev) {
  std::ostringstream os;
  os << "config-id=" << c.id << "\n";
  os << "config-hash=" << hex(r.config_hash) << "\n";
  os << "strategy=" << c.strategy << "\n";
  os << "problem=" << c.problem << "\n";
  os << "seed-index=" << r.seed_index << "\n";
  os << "seed=" << r.seed << "\n";
  os << "generations=" << r.generations << "\n";
  os << "evaluations=" << r.evaluations << "\n";
  os << "maximize=";
  auto const& max = ev.sense().flags();
  for (std::size_t k = 0; k < max.size(); ++k) os << (k ? "," : "") << (max[k] ? 1 : 0);
  os << "\n";
  for (auto const& rep : c.reporters) {
    if (rep.kind != ReporterKind::comparison) continue;
    if (rep.number_of_algorithms) os << "expected-algorithms=" << *rep.number_of_algorithms << "\n";
    if (rep.number_of_executions) os << "expected-executions=" << *rep.number_of_executions << "\n";
    break;
  }
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_seconds);
  os << "wall-time-seconds=" << wall << "\n";
  os << "status=" << (r.error ? "error" : "ok") << "\n";
  if (r.error) os << "error=" << *r.error << "\n";
  return os.str();
}

} // namespace detail

// Runs one (configuration, seed) pair and writes its reporter outputs.
inline RunRecord run_single(ExperimentConfig const& c, std::size_t seed_index, ExperimentOptions const& opt,
                            std::size_t config_index = 0) {
  if (seed_index >= c.seeds.size()) throw ConfigError("seed index out of range for " + c.id);
  RunRecord rec;
  rec.config_index = config_index;
  rec.config_id = c.id;
  rec.config_hash = config_hash(c);
  rec.seed_index = seed_index;
  rec.seed = c.seeds[seed_index];
  auto const start = std::chrono::steady_clock::now();
  auto evaluator = make_evaluator(c);
  std::size_t const m = evaluator.sense().size();
  std::size_t const n = evaluator.problem().encoding().length;

  std::vector<std::pair<ReporterSpec const*, IndicatorRecorder>> recorders;
  for (auto const& rep : c.reporters) {
    if (rep.kind == ReporterKind::comparison) recorders.emplace_back(&rep, IndicatorRecorder(rep, m));
  }
  RunSettings settings;
  settings.population_size = c.population_size;
  settings.stop.max_generations = c.max_generations;
  settings.stop.max_evaluations = c.max_evaluations;
  if (!recorders.empty()) {
    settings.progress = [&](AlgorithmState const& st, bool last) {
      for (auto& [spec, r] : recorders) r.observe(st, last);
    };
  }

  Rng rng(rec.seed);
  AlgorithmState state;
  try {
    if (c.algorithm == "pso") {
      auto s = make_swarm_strategy(c.strategy, c.strategy_params);
      state = run_pso(evaluator, *s, settings, rng);
    } else {
      auto s = make_strategy(c.strategy, c.strategy_params);
      std::unique_ptr<Recombinator> rec_op;
      std::unique_ptr<Mutator> mut_op;
      if (c.recombinator) rec_op = make_recombinator(c.recombinator->type, c.recombinator->probability, c.recombinator->params);
      if (c.mutator) mut_op = make_mutator(c.mutator->type, c.mutator->probability, c.mutator->params);
      state = run_ea(evaluator, *s, rec_op.get(), mut_op.get(), settings, rng);
    }
    rec.front = state.front();
  } catch (std::exception const& e) {
    rec.error = e.what();
  }
  rec.generations = state.generation;
  rec.evaluations = state.evaluations;
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> titles;
  for (auto const& rep : c.reporters) {
    if (std::find(titles.begin(), titles.end(), rep.title) == titles.end()) titles.push_back(rep.title);
    if (rec.error) continue;
    if (rep.kind == ReporterKind::pareto_front) {
      auto const path = front_file(opt.out_dir, rep.title, c.id, seed_index);
      csv::write(path, front_table(rec.front, n, m));
      rec.outputs.push_back(path);
    }
  }
  if (!rec.error) {
    for (auto const& [spec, r] : recorders) {
      auto const path = indicators_file(opt.out_dir, spec->title, c.id, seed_index);
      csv::write(path, r.table());
      rec.outputs.push_back(path);
    }
  }
  for (auto const& t : titles) {
    auto const path = meta_file(opt.out_dir, t, c.id, seed_index);
    csv::write_text(path, detail::meta_text(c, rec, evaluator));
    rec.outputs.push_back(path);
  }
  return rec;
}

// Executes every (config, seed) pair on up to `jobs` worker threads. Records
// come back ordered by (config index, seed index); a failed run carries its
// error and does not stop the others.
inline std::vector<RunRecord> run_experiment(std::vector<ExperimentConfig> const& configs,
                                             ExperimentOptions const& opt) {
  for (auto const& c : configs) validate(c);
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    for (std::size_t k = 0; k < configs[i].seeds.size(); ++k) tasks.emplace_back(i, k);
  }
  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      auto const [ci, si] = tasks[t];
      try {
        records[t] = run_single(configs[ci], si, opt, ci);
      } catch (std::exception const& e) {
        RunRecord r;
        r.config_index = ci;
        r.config_id = configs[ci].id;
        r.seed_index = si;
        r.seed = configs[ci].seeds[si];
        r.error = e.what();
        records[t] = std::move(r);
      }
    }
  };
  std::size_t const jobs = std::max<std::size_t>(1, std::min(opt.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

// Replaces the seeds of every configuration with a comma-separated list, e.g.
// the value of MOMO_SEED_OVERRIDE.
inline void override_seeds(std::vector<ExperimentConfig>& configs, std::string const& list) {
  std::vector<std::uint64_t> seeds;
  std::string token;
  for (char ch : list + ",") {
    if (ch == ',') {
      auto const t = detail::trim(token);
      token.clear();
      if (t.empty()) continue;
      char* end = nullptr;
      auto const v = std::strtoull(t.c_str(), &end, 10);
      if (t[0] == '-' || end != t.c_str() + t.size()) throw ConfigError("invalid seed override '" + t + "'");
      seeds.push_back(v);
    } else {
      token += ch;
    }
  }
  if (seeds.empty()) throw ConfigError("empty seed override");
  for (auto& c : configs) c.seeds = seeds;
}

} // namespace momo
