#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "momo/experiments/csv.hpp"
#include "momo/indicators/front.hpp"
#include "momo/indicators/indicators.hpp"
#include "momo/postprocess/statistics.hpp"
#include "momo/postprocess/svg.hpp"

namespace momo {

namespace fs = std::filesystem;

// Non-dominated union of the run fronts of one algorithm.
inline Front merge_runs_pf(std::vector<Front> const& runs, std::string const& algorithm) {
  if (runs.empty()) throw DomainError("no run fronts for algorithm " + algorithm);
  auto merged = build_reference_front(runs);
  merged.label = algorithm;
  return merged;
}

// Binary indicators of the comparison table, in row order, with their labels.
inline std::vector<std::pair<std::string, std::string>> table_indicators() {
  return {{"eps_mult", "I_eps"}, {"eps_add", "I_eps+"}, {"gen_spread", "Delta_S"},
          {"gd", "GD"},          {"igd", "IGD"},       {"max_pf_error", "ME"}};
}

inline std::vector<std::string> unary_report_indicators() { return {"hypervolume", "spacing"}; }

struct IndicatorTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cells;
  std::vector<std::size_t> best;
};

struct PipelineContext {
  fs::path experiment_dir;
  fs::path report_dir;
  std::vector<std::string> algorithms;
  std::vector<bool> maximize;
  std::map<std::string, std::vector<Front>> runs;
  std::map<std::string, Front> merged;
  std::optional<Front> reference;
  std::map<std::string, Front> scaled;
  std::optional<Front> scaled_reference;
  // indicator -> algorithm -> final value per run
  std::map<std::string, std::map<std::string, std::vector<double>>> unary;
  std::optional<IndicatorTable> table;
  std::map<std::string, KruskalResult> kruskal;
  std::vector<fs::path> artifacts;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::size_t> objective_columns(csv::Table const& t) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i].rfind("obj_", 0) == 0) cols.push_back(i);
  }
  return cols;
}

inline Front read_front(fs::path const& path, std::vector<bool> const& maximize, std::string const& label) {
  auto const t = csv::read(path);
  auto const cols = objective_columns(t);
  if (cols.empty()) throw IoError(path.string() + ": no objective columns");
  Front f{{}, maximize, label};
  for (auto const& row : t.rows) {
    Point p;
    for (auto c : cols) p.push_back(row[c]);
    f.points.push_back(std::move(p));
  }
  return f;
}

inline csv::Table front_csv(Front const& f, std::size_t m) {
  csv::Table t;
  for (std::size_t k = 0; k < m; ++k) t.header.push_back("obj_" + std::to_string(k));
  t.rows = f.points;
  return t;
}

inline std::map<std::string, std::string> read_meta(fs::path const& path) {
  std::map<std::string, std::string> out;
  std::istringstream in(csv::read_text(path));
  std::string line;
  while (std::getline(in, line)) {
    auto const eq = line.find('=');
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

// Files "<prefix><k><suffix>" in a directory, ordered by k.
inline std::vector<fs::path> indexed_files(fs::path const& dir, std::string const& prefix, std::string const& suffix) {
  std::vector<std::pair<std::size_t, fs::path>> found;
  std::regex const re(prefix + "([0-9]+)" + std::regex_replace(suffix, std::regex(R"(\.)"), R"(\.)"));
  for (auto const& e : fs::directory_iterator(dir)) {
    std::smatch m;
    auto const name = e.path().filename().string();
    if (e.is_regular_file() && std::regex_match(name, m, re)) found.emplace_back(std::stoul(m[1]), e.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto& [k, p] : found) out.push_back(p);
  return out;
}

inline void write_artifact(PipelineContext& ctx, fs::path const& path, std::string const& text) {
  csv::write_text(path, text);
  ctx.artifacts.push_back(path);
}

// Oriented copies of the fronts scaled by the extremes of the oriented
// reference front.
inline std::vector<Front> oriented_scaled(std::vector<Front> const& fronts, Front const& reference) {
  Front ref{reference.oriented()};
  std::vector<Front> oriented;
  for (auto const& f : fronts) oriented.push_back(Front{f.oriented(), {}, f.label});
  return scale_fronts(oriented, ref).fronts;
}

} // namespace detail

// Discovers algorithms (sub-directories holding pf-seed<k>.csv files) and the
// objective directions recorded in the run metadata.
inline PipelineContext make_context(fs::path const& experiment_dir, fs::path const& report_dir) {
  if (!fs::is_directory(experiment_dir)) throw IoError("experiment directory " + experiment_dir.string() + " not found");
  PipelineContext ctx;
  ctx.experiment_dir = experiment_dir;
  ctx.report_dir = report_dir;
  std::set<std::string> names;
  for (auto const& e : fs::directory_iterator(experiment_dir)) {
    if (!e.is_directory()) continue;
    if (!detail::indexed_files(e.path(), "pf-seed", ".csv").empty()) names.insert(e.path().filename().string());
  }
  ctx.algorithms.assign(names.begin(), names.end());
  if (ctx.algorithms.empty()) throw IoError("no run fronts found under " + experiment_dir.string());
  std::optional<std::size_t> expected_algorithms;
  for (auto const& a : ctx.algorithms) {
    auto const metas = detail::indexed_files(experiment_dir / a, "run-meta-seed", ".txt");
    for (auto const& mpath : metas) {
      auto const meta = detail::read_meta(mpath);
      if (auto it = meta.find("maximize"); it != meta.end() && ctx.maximize.empty()) {
        std::istringstream in(it->second);
        std::string flag;
        while (std::getline(in, flag, ',')) ctx.maximize.push_back(flag == "1");
      }
      if (auto it = meta.find("expected-algorithms"); it != meta.end()) expected_algorithms = std::stoul(it->second);
      if (auto it = meta.find("expected-executions"); it != meta.end()) {
        auto const runs = detail::indexed_files(experiment_dir / a, "pf-seed", ".csv").size();
        if (runs != std::stoul(it->second)) {
          ctx.warnings.push_back(a + ": expected " + it->second + " executions, found " + std::to_string(runs));
        }
      }
      break;
    }
  }
  if (expected_algorithms && *expected_algorithms != ctx.algorithms.size()) {
    ctx.warnings.push_back("expected " + std::to_string(*expected_algorithms) + " algorithms, found " +
                           std::to_string(ctx.algorithms.size()));
  }
  return ctx;
}

// Chain-of-responsibility element: does its step, then hands over.
class Handler {
public:
  virtual ~Handler() = default;
  virtual std::string id() const = 0;

  void set_successor(std::shared_ptr<Handler> next) { next_ = std::move(next); }
  Handler* successor() const noexcept { return next_.get(); }

  void process(PipelineContext& ctx) {
    run(ctx);
    if (next_) next_->process(ctx);
  }

protected:
  virtual void run(PipelineContext& ctx) = 0;

private:
  std::shared_ptr<Handler> next_;
};

namespace detail {

inline std::size_t objective_count(PipelineContext const& ctx, Front const& f) {
  if (!f.empty()) return f.dimension();
  return ctx.maximize.size();
}

inline void require_runs(PipelineContext& ctx) {
  for (auto const& a : ctx.algorithms) {
    if (ctx.runs.count(a)) continue;
    std::vector<Front> fronts;
    for (auto const& p : indexed_files(ctx.experiment_dir / a, "pf-seed", ".csv")) {
      fronts.push_back(read_front(p, ctx.maximize, a));
    }
    ctx.runs[a] = std::move(fronts);
  }
}

inline void require_merged(PipelineContext& ctx) {
  for (auto const& a : ctx.algorithms) {
    if (ctx.merged.count(a)) continue;
    auto const path = ctx.report_dir / ("merged-" + a + ".csv");
    if (!fs::exists(path)) throw StateError("missing merged front of " + a + ": run the merge step first");
    ctx.merged[a] = read_front(path, ctx.maximize, a);
  }
}

inline void require_reference(PipelineContext& ctx) {
  if (ctx.reference) return;
  auto const path = ctx.report_dir / "reference-pf.csv";
  if (!fs::exists(path)) throw StateError("missing reference front: run the reference step first");
  ctx.reference = read_front(path, ctx.maximize, "reference");
}

inline void require_scaled(PipelineContext& ctx) {
  if (!ctx.scaled_reference) {
    auto const path = ctx.report_dir / "scaled-reference-pf.csv";
    if (!fs::exists(path)) throw StateError("missing scaled reference front: run the scale step first");
    ctx.scaled_reference = read_front(path, {}, "reference");
  }
  for (auto const& a : ctx.algorithms) {
    if (ctx.scaled.count(a)) continue;
    auto const path = ctx.report_dir / ("scaled-" + a + ".csv");
    if (!fs::exists(path)) throw StateError("missing scaled front of " + a + ": run the scale step first");
    ctx.scaled[a] = read_front(path, {}, a);
  }
}

// Final hypervolume and spacing of every run, on fronts scaled by the
// reference front so that runs are comparable; hypervolume uses 1.1 per
// objective as reference point.
inline void require_unary(PipelineContext& ctx) {
  auto const ids = unary_report_indicators();
  bool complete = true;
  for (auto const& id : ids) complete = complete && ctx.unary.count(id);
  if (complete) return;
  auto const path = ctx.report_dir / "unary-indicators.csv";
  if (!ctx.reference && !fs::exists(ctx.report_dir / "reference-pf.csv") && fs::exists(path)) {
    auto const t = csv::read(path);
    auto const alg = t.column("algorithm");
    for (auto const& row : t.rows) {
      auto const idx = static_cast<std::size_t>(row[alg]);
      if (idx >= ctx.algorithms.size()) throw IoError(path.string() + ": algorithm index out of range");
      for (auto const& id : ids) ctx.unary[id][ctx.algorithms[idx]].push_back(row[t.column(id)]);
    }
    return;
  }
  require_reference(ctx);
  require_runs(ctx);
  std::size_t const m = objective_count(ctx, *ctx.reference);
  Point const ref(m, 1.1);
  HypervolumeOptions opt;
  opt.samples = 100000;
  for (auto const& a : ctx.algorithms) {
    auto const scaled = oriented_scaled(ctx.runs.at(a), *ctx.reference);
    for (auto const& f : scaled) {
      double hv = 0.0, sp = 0.0;
      if (!f.empty()) {
        hv = momo::hypervolume(hv::inside(f.points, ref), ref, opt).value;
        sp = indicator::spacing(f);
      }
      ctx.unary["hypervolume"][a].push_back(hv);
      ctx.unary["spacing"][a].push_back(sp);
    }
  }
}

} // namespace detail

class MergeHandler final : public Handler {
public:
  std::string id() const override { return "merge"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_runs(ctx);
    for (auto const& a : ctx.algorithms) {
      auto merged = merge_runs_pf(ctx.runs.at(a), a);
      if (merged.empty()) throw StateError("algorithm " + a + " has no solutions in any run");
      auto const m = merged.dimension();
      detail::write_artifact(ctx, ctx.report_dir / ("merged-" + a + ".csv"), csv::format(detail::front_csv(merged, m)));
      ctx.merged[a] = std::move(merged);
    }
  }
};

class ReferenceHandler final : public Handler {
public:
  std::string id() const override { return "reference"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_merged(ctx);
    std::vector<Front> fronts;
    for (auto const& a : ctx.algorithms) fronts.push_back(ctx.merged.at(a));
    ctx.reference = build_reference_front(fronts);
    auto const m = ctx.reference->dimension();
    detail::write_artifact(ctx, ctx.report_dir / "reference-pf.csv", csv::format(detail::front_csv(*ctx.reference, m)));
  }
};

// Min-max scaling (in minimization orientation) by the reference extremes.
class ScaleHandler final : public Handler {
public:
  std::string id() const override { return "scale"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_merged(ctx);
    detail::require_reference(ctx);
    std::vector<Front> fronts;
    for (auto const& a : ctx.algorithms) fronts.push_back(ctx.merged.at(a));
    fronts.push_back(*ctx.reference);
    auto scaled = detail::oriented_scaled(fronts, *ctx.reference);
    auto const m = ctx.reference->dimension();
    for (std::size_t i = 0; i < ctx.algorithms.size(); ++i) {
      auto const& a = ctx.algorithms[i];
      scaled[i].label = a;
      detail::write_artifact(ctx, ctx.report_dir / ("scaled-" + a + ".csv"), csv::format(detail::front_csv(scaled[i], m)));
      ctx.scaled[a] = scaled[i];
    }
    ctx.scaled_reference = scaled.back();
    detail::write_artifact(ctx, ctx.report_dir / "scaled-reference-pf.csv",
                           csv::format(detail::front_csv(scaled.back(), m)));
  }
};

class BoxplotHandler final : public Handler {
public:
  std::string id() const override { return "boxplot"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_unary(ctx);
    csv::Table t;
    t.header = {"algorithm", "run"};
    for (auto const& id : unary_report_indicators()) t.header.push_back(id);
    for (std::size_t i = 0; i < ctx.algorithms.size(); ++i) {
      auto const& a = ctx.algorithms[i];
      auto const n = ctx.unary.at("hypervolume").at(a).size();
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> row{static_cast<double>(i), static_cast<double>(r)};
        for (auto const& id : unary_report_indicators()) row.push_back(ctx.unary.at(id).at(a)[r]);
        t.rows.push_back(std::move(row));
      }
    }
    detail::write_artifact(ctx, ctx.report_dir / "unary-indicators.csv", csv::format(t));
    for (auto const& id : unary_report_indicators()) {
      std::vector<std::pair<std::string, std::vector<double>>> groups;
      for (auto const& a : ctx.algorithms) {
        auto const& v = ctx.unary.at(id).at(a);
        if (v.empty()) throw StateError("algorithm " + a + " has no runs for " + id);
        groups.emplace_back(a, v);
      }
      detail::write_artifact(ctx, ctx.report_dir / ("boxplot-" + id + ".svg"), svg::boxplot(groups, id));
    }
  }
};

class ParallelCoordinatesHandler final : public Handler {
public:
  std::string id() const override { return "parallel"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_scaled(ctx);
    for (auto const& a : ctx.algorithms) {
      detail::write_artifact(ctx, ctx.report_dir / ("parallel-" + a + ".svg"),
                             svg::parallel_coordinates(ctx.scaled.at(a).points, a));
    }
  }
};

inline IndicatorTable binary_indicator_table(std::vector<std::string> const& algorithms,
                                             std::map<std::string, Front> const& scaled, Front const& reference) {
  IndicatorTable t;
  t.columns = algorithms;
  auto shifted = [](Front f) {
    for (auto& p : f.points) {
      for (auto& v : p) v += 1.0;
    }
    return f;
  };
  for (auto const& [id, label] : table_indicators()) {
    t.rows.push_back(label);
    std::vector<double> row;
    for (auto const& a : algorithms) {
      auto const& f = scaled.at(a);
      // The multiplicative epsilon needs positive values: shift [0, 1] to [1, 2].
      row.push_back(id == "eps_mult" ? indicator::binary(id, shifted(f), shifted(reference))
                                     : indicator::binary(id, f, reference));
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] < row[best]) best = j;
    }
    t.best.push_back(best);
    t.cells.push_back(std::move(row));
  }
  return t;
}

class IndicatorsHandler final : public Handler {
public:
  std::string id() const override { return "indicators"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_scaled(ctx);
    ctx.table = binary_indicator_table(ctx.algorithms, ctx.scaled, *ctx.scaled_reference);
    auto const& t = *ctx.table;
    std::string out = "indicator";
    for (auto const& c : t.columns) out += "," + c;
    out += ",best\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      out += t.rows[i];
      for (double v : t.cells[i]) out += "," + csv::number(v);
      out += "," + t.columns[t.best[i]] + "\n";
    }
    detail::write_artifact(ctx, ctx.report_dir / "indicators.csv", out);
    std::ostringstream html;
    html << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Binary indicators</title>\n"
         << "<style>table{border-collapse:collapse}td,th{border:1px solid #999;padding:4px 8px;text-align:right}"
         << ".best{font-weight:bold}</style></head><body>\n<table>\n<tr><th>indicator</th>";
    for (auto const& c : t.columns) html << "<th>" << c << "</th>";
    html << "</tr>\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      html << "<tr><th>" << t.rows[i] << "</th>";
      for (std::size_t j = 0; j < t.columns.size(); ++j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4e", t.cells[i][j]);
        html << (j == t.best[i] ? "<td class=\"best\">" : "<td>") << buf << "</td>";
      }
      html << "</tr>\n";
    }
    html << "</table>\n</body></html>\n";
    detail::write_artifact(ctx, ctx.report_dir / "indicators.html", html.str());
  }
};

class KruskalHandler final : public Handler {
public:
  std::string id() const override { return "kruskal"; }

protected:
  void run(PipelineContext& ctx) override {
    detail::require_unary(ctx);
    std::ostringstream out;
    for (auto const& id : unary_report_indicators()) {
      std::vector<std::vector<double>> groups;
      for (auto const& a : ctx.algorithms) groups.push_back(ctx.unary.at(id).at(a));
      auto const r = kruskal_wallis(groups);
      ctx.kruskal[id] = r;
      out << "indicator=" << id << " H=" << csv::number(r.h) << " df=" << r.df << " p=" << csv::number(r.p) << "\n";
    }
    detail::write_artifact(ctx, ctx.report_dir / "kruskal.txt", out.str());
  }
};

inline std::vector<std::string> handler_ids() {
  return {"merge", "reference", "scale", "boxplot", "parallel", "indicators", "kruskal"};
}

inline std::shared_ptr<Handler> make_handler(std::string const& id) {
  if (id == "merge") return std::make_shared<MergeHandler>();
  if (id == "reference") return std::make_shared<ReferenceHandler>();
  if (id == "scale") return std::make_shared<ScaleHandler>();
  if (id == "boxplot") return std::make_shared<BoxplotHandler>();
  if (id == "parallel") return std::make_shared<ParallelCoordinatesHandler>();
  if (id == "indicators") return std::make_shared<IndicatorsHandler>();
  if (id == "kruskal") return std::make_shared<KruskalHandler>();
  throw ConfigError("unknown handler '" + id + "'");
}

// "default" or a comma-separated list of handler ids, linked in order.
inline std::shared_ptr<Handler> build_chain(std::string const& spec) {
  std::vector<std::string> ids;
  if (spec == "default") {
    ids = handler_ids();
  } else {
    std::istringstream in(spec);
    std::string id;
    while (std::getline(in, id, ',')) {
      auto const b = id.find_first_not_of(' ');
      auto const e = id.find_last_not_of(' ');
      if (b == std::string::npos) throw ConfigError("empty handler id in chain '" + spec + "'");
      ids.push_back(id.substr(b, e - b + 1));
    }
  }
  if (ids.empty()) throw ConfigError("empty handler chain");
  std::set<std::string> seen;
  std::shared_ptr<Handler> head, tail;
  for (auto const& id : ids) {
    if (!seen.insert(id).second) throw ConfigError("handler '" + id + "' appears twice in the chain");
    auto h = make_handler(id);
    if (tail) {
      tail->set_successor(h);
    } else {
      head = h;
    }
    tail = h;
  }
  return head;
}

// Runs the chain over an experiment directory (<out>/<title>) and writes the
// artifacts to `report_dir`, which defaults to the experiment directory.
inline PipelineContext run_pipeline(fs::path const& experiment_dir, std::string const& chain = "default",
                                    std::optional<fs::path> report_dir = std::nullopt) {
  auto head = build_chain(chain);
  auto ctx = make_context(experiment_dir, report_dir.value_or(experiment_dir));
  head->process(ctx);
  return ctx;
}

} // namespace momo
