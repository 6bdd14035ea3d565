#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "momo/experiments/config.hpp"
#include "momo/experiments/runner.hpp"
#include "momo/indicators/indicators.hpp"
#include "momo/postprocess/pipeline.hpp"
#include "momo/problems/registry.hpp"
#include "momo/strategies/registry.hpp"
#include "momo/variation/reproduction.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_failed_runs = 1;
constexpr int exit_usage = 2;

int finish(int code, std::string const& detail) {
  if (code == 0) {
    std::cout << "status=ok" << (detail.empty() ? "" : " " + detail) << "\n";
  } else {
    std::cout << "status=error code=" << code << (detail.empty() ? "" : " " + detail) << "\n";
  }
  std::cout.flush();
  return code;
}

// Config files named on the command line; directories contribute their *.xml
// files in name order.
std::vector<fs::path> collect_configs(std::vector<std::string> const& paths, std::vector<std::string>& errors) {
  std::vector<fs::path> out;
  for (auto const& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (auto const& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".xml") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.emplace_back(p);
    } else {
      errors.push_back(p + ": no such file or directory");
    }
  }
  return out;
}

std::vector<momo::ExperimentConfig> load_configs(std::vector<fs::path> const& files, std::vector<std::string>& errors) {
  std::vector<momo::ExperimentConfig> configs;
  for (auto const& f : files) {
    try {
      auto c = momo::parse_config(f.string());
      momo::validate(c);
      configs.push_back(std::move(c));
    } catch (std::exception const& e) {
      errors.push_back(e.what());
    }
  }
  return configs;
}

int cmd_validate(std::vector<std::string> const& paths) {
  std::vector<std::string> errors;
  auto const files = collect_configs(paths, errors);
  auto const configs = load_configs(files, errors);
  for (auto const& e : errors) std::cerr << "error: " << e << "\n";
  if (files.empty() && errors.empty()) return finish(exit_usage, "message=\"no configuration files found\"");
  if (!errors.empty()) return finish(exit_usage, "invalid=" + std::to_string(errors.size()));
  for (auto const& c : configs) std::cout << c.id << " hash=" << momo::hex(momo::config_hash(c)) << "\n";
  return finish(0, "configs=" + std::to_string(configs.size()));
}

int cmd_run(std::vector<std::string> const& paths, std::string const& out, std::size_t jobs) {
  std::vector<std::string> errors;
  auto const files = collect_configs(paths, errors);
  auto configs = load_configs(files, errors);
  if (char const* env = std::getenv("MOMO_SEED_OVERRIDE"); env && *env) {
    try {
      momo::override_seeds(configs, env);
    } catch (std::exception const& e) {
      errors.push_back(std::string("MOMO_SEED_OVERRIDE: ") + e.what());
    }
  }
  for (auto const& e : errors) std::cerr << "error: " << e << "\n";
  if (!errors.empty()) return finish(exit_usage, "invalid=" + std::to_string(errors.size()));
  if (configs.empty()) return finish(exit_usage, "message=\"no configuration files found\"");

  momo::ExperimentOptions opt;
  opt.out_dir = out;
  opt.jobs = std::max<std::size_t>(1, jobs);
  auto const records = momo::run_experiment(configs, opt);
  std::size_t failed = 0;
  for (auto const& r : records) {
    if (r.ok()) {
      std::cout << r.config_id << " seed=" << r.seed << " generations=" << r.generations
                << " evaluations=" << r.evaluations << " front=" << r.front.size() << "\n";
    } else {
      ++failed;
      std::cerr << "run failed: " << r.config_id << " seed=" << r.seed << ": " << *r.error << "\n";
    }
  }
  auto const summary = "configs=" + std::to_string(configs.size()) + " runs=" + std::to_string(records.size()) +
                       " failed=" + std::to_string(failed);
  return finish(failed ? exit_failed_runs : 0, summary);
}

bool holds_runs(fs::path const& dir) {
  for (auto const& e : fs::directory_iterator(dir)) {
    if (!e.is_directory()) continue;
    for (auto const& f : fs::directory_iterator(e.path())) {
      auto const name = f.path().filename().string();
      if (name.rfind("pf-seed", 0) == 0 && f.path().extension() == ".csv") return true;
    }
  }
  return false;
}

// DIR is either one experiment (<out>/<title>) or a run output root holding
// several of them.
int cmd_postprocess(std::string const& dir, std::string const& chain, std::string const& out) {
  if (!fs::is_directory(dir)) {
    std::cerr << "error: " << dir << ": no such directory\n";
    return finish(exit_usage, "message=\"experiment directory not found\"");
  }
  try {
    momo::build_chain(chain);
  } catch (momo::ConfigError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finish(exit_usage, "message=\"invalid chain\"");
  }
  std::vector<std::pair<fs::path, fs::path>> jobs;
  fs::path const report_root = out.empty() ? fs::path(dir) : fs::path(out);
  if (holds_runs(dir)) {
    jobs.emplace_back(dir, report_root);
  } else {
    std::vector<fs::path> subs;
    for (auto const& e : fs::directory_iterator(dir)) {
      if (e.is_directory() && holds_runs(e.path())) subs.push_back(e.path());
    }
    std::sort(subs.begin(), subs.end());
    for (auto const& s : subs) jobs.emplace_back(s, report_root / s.filename());
  }
  if (jobs.empty()) {
    std::cerr << "error: no run fronts under " << dir << "\n";
    return finish(exit_usage, "message=\"no experiment outputs found\"");
  }
  std::size_t artifacts = 0;
  for (auto const& [exp, report] : jobs) {
    try {
      auto const ctx = momo::run_pipeline(exp, chain, report);
      for (auto const& w : ctx.warnings) std::cerr << "warning: " << exp.filename().string() << ": " << w << "\n";
      for (auto const& a : ctx.artifacts) std::cout << a.string() << "\n";
      artifacts += ctx.artifacts.size();
    } catch (std::exception const& e) {
      std::cerr << "error: " << exp.string() << ": " << e.what() << "\n";
      return finish(1, "experiment=" + exp.filename().string());
    }
  }
  return finish(0, "experiments=" + std::to_string(jobs.size()) + " artifacts=" + std::to_string(artifacts));
}

std::string joined(std::vector<std::string> const& items) {
  std::string s;
  for (auto const& i : items) s += " " + i;
  return s;
}

int cmd_list(std::string const& kind) {
  std::vector<std::string> lines;
  if (kind == "strategies") {
    for (auto const& e : momo::strategy_catalog()) lines.push_back(e.id + " engine=" + momo::to_string(e.engine) + joined(e.params));
  } else if (kind == "problems") {
    for (auto const& e : momo::problem_catalog()) lines.push_back(e.id + joined(e.params));
  } else if (kind == "indicators") {
    for (auto const& id : momo::indicator::unary_ids()) lines.push_back(id + " unary");
    for (auto const& id : momo::indicator::binary_ids()) lines.push_back(id + " binary");
  } else if (kind == "operators") {
    for (auto const& id : momo::recombinator_ids()) {
      lines.push_back(id + " recombinator rec-prob" + joined(momo::recombinator_params(id)));
    }
    for (auto const& id : momo::mutator_ids()) lines.push_back(id + " mutator mut-prob" + joined(momo::mutator_params(id)));
  } else {
    std::cerr << "error: unknown kind '" << kind << "' (strategies, problems, indicators, operators)\n";
    return finish(exit_usage, "message=\"unknown kind\"");
  }
  std::sort(lines.begin(), lines.end());
  for (auto const& l : lines) std::cout << l << "\n";
  return finish(0, "count=" + std::to_string(lines.size()));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"momo: multi-objective metaheuristic experiments"};
  app.require_subcommand(1);

  std::vector<std::string> run_paths;
  std::string run_out = "reports";
  std::size_t jobs = 1;
  auto* run = app.add_subcommand("run", "Execute experiment configurations");
  run->add_option("paths", run_paths, "Config files or directories")->required();
  run->add_option("--out", run_out, "Output directory");
  run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  std::string post_dir, chain = "default", post_out;
  auto* post = app.add_subcommand("postprocess", "Build reports from run outputs");
  post->add_option("dir", post_dir, "Experiment directory")->required();
  post->add_option("--chain", chain, "default or comma-separated handler ids");
  post->add_option("--out", post_out, "Report directory (defaults to DIR)");

  std::string kind;
  auto* list = app.add_subcommand("list", "List registered components");
  list->add_option("kind", kind, "strategies, problems, indicators or operators")->required();

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Parse and check configurations");
  validate->add_option("paths", validate_paths, "Config files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    if (app.exit(e) == 0) return finish(0, "");
    return finish(exit_usage, "message=\"invalid arguments\"");
  }

  try {
    if (*run) return cmd_run(run_paths, run_out, jobs);
    if (*post) return cmd_postprocess(post_dir, chain, post_out);
    if (*list) return cmd_list(kind);
    return cmd_validate(validate_paths);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finish(1, "");
  }
}
