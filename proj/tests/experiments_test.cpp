#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "momo/experiments/runner.hpp"

using namespace momo;
namespace fs = std::filesystem;

namespace {

std::string const configs_dir = MOMO_CONFIG_DIR;

fs::path scratch(std::string const& name) {
  auto const p = fs::temp_directory_path() / ("momo-experiments-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string small_config(std::string const& id, std::string const& strategy = "nsga2", std::string const& extra = {},
                         std::string const& listeners = {}) {
  std::string const algo = strategy == "smpso" ? "pso" : "ea";
  std::string const ops = algo == "pso" ? ""
                                        : "<recombinator type=\"sbx\" rec-prob=\"0.9\" eta=\"15\"/>\n"
                                          "<mutator type=\"polynomial\" mut-prob=\"1\"/>\n";
  std::string const reps = listeners.empty() ? "<listener type=\"pareto-front-reporter\">"
                                               "<report-title>T</report-title></listener>\n"
                                             : listeners;
  return "<experiment id=\"" + id + "\">\n<process algorithm-type=\"" + algo + "\">\n<mo-strategy type=\"" + strategy +
         "\"/>\n<evaluator type=\"zdt1\"><variables>6</variables></evaluator>\n" + ops +
         "<population-size>12</population-size>\n<max-of-generations>10</max-of-generations>\n" + extra +
         "<rand-gen-factory multi=\"true\">\n<rand-gen-factory seed=\"11\"/>\n<rand-gen-factory seed=\"22\"/>\n"
         "<rand-gen-factory seed=\"33\"/>\n</rand-gen-factory>\n" +
         reps + "</process>\n</experiment>\n";
}

std::string error_of(std::string const& text) {
  try {
    parse_config_text(text, "cfg.xml", "cfg");
  } catch (ConfigError const& e) {
    return e.what();
  }
  return {};
}

std::string slurp(fs::path const& p) { return csv::read_text(p); }

} // namespace

TEST(ParseConfig, ListingStyleHypeFile) {
  auto const c = parse_config(configs_dir + "/wrm/hype.xml");
  EXPECT_EQ(c.id, "hype");
  EXPECT_EQ(c.algorithm, "ea");
  EXPECT_EQ(c.strategy, "hype");
  EXPECT_EQ(c.strategy_params.get("sampling-size", 0), 10000.0);
  ASSERT_TRUE(c.recombinator);
  EXPECT_EQ(c.recombinator->type, "blx-alpha");
  EXPECT_EQ(c.recombinator->probability, 0.9);
  ASSERT_TRUE(c.mutator);
  EXPECT_EQ(c.mutator->type, "polynomial");
  EXPECT_EQ(c.mutator->probability, 0.15);
  EXPECT_EQ(c.population_size, 100u);
  EXPECT_EQ(c.max_generations, 500u);
  EXPECT_EQ(c.seeds.size(), 10u);
  ASSERT_EQ(c.objectives.size(), 5u);
  EXPECT_EQ(c.objectives[0].type, "wrm.f1");
  EXPECT_FALSE(c.objectives[4].maximize);
  ASSERT_EQ(c.reporters.size(), 2u);
  EXPECT_EQ(c.reporters[1].kind, ReporterKind::comparison);
  EXPECT_EQ(c.reporters[1].title, "WRMExperiment");
  EXPECT_EQ(c.reporters[1].number_of_algorithms, 4u);
  EXPECT_EQ(c.reporters[1].number_of_executions, 10u);
  EXPECT_EQ(c.reporters[1].indicators, (std::vector<std::string>{"hypervolume", "spacing"}));
}

TEST(ParseConfig, ShippedConfigsRoundTrip) {
  for (auto const* name : {"grea", "hype", "nsga3", "smpso"}) {
    auto const c = parse_config(configs_dir + "/wrm/" + std::string(name) + ".xml");
    auto const again = parse_config_text(serialize(c), "round-trip", "other");
    EXPECT_EQ(again, c) << name;
    EXPECT_EQ(serialize(again), serialize(c)) << name;
  }
}

TEST(ParseConfig, HashIgnoresFormatting) {
  auto const a = parse_config_text(small_config("a"), "a.xml", "a");
  std::string text = small_config("a");
  std::string spaced;
  for (char ch : text) spaced += ch == '\n' ? std::string("\n\n   ") : std::string(1, ch);
  auto const b = parse_config_text(spaced, "b.xml", "b");
  EXPECT_EQ(a, b);
  EXPECT_EQ(config_hash(a), config_hash(b));
  auto c = a;
  c.population_size = 14;
  EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(ParseConfig, DefaultIdIsFileStem) {
  std::string text = small_config("x");
  text.replace(text.find(" id=\"x\""), 7, "");
  auto const c = parse_config_text(text, "dir/my-run.xml", "my-run");
  EXPECT_EQ(c.id, "my-run");
}

TEST(ParseConfig, MissingPopulationSizeNamesTheElement) {
  std::string text = small_config("a");
  text.replace(text.find("<population-size>12</population-size>"), 38, "");
  auto const msg = error_of(text);
  EXPECT_NE(msg.find("population-size"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line"), std::string::npos) << msg;
}

TEST(ParseConfig, UnknownElementReportsPathAndLine) {
  std::string text = small_config("a", "nsga2", "<colour>blue</colour>\n");
  try {
    parse_config_text(text, "cfg.xml", "cfg");
    FAIL() << "expected a configuration error";
  } catch (ConfigError const& e) {
    EXPECT_NE(std::string(e.what()).find("experiment/process/colour"), std::string::npos) << e.what();
    ASSERT_TRUE(e.line());
    EXPECT_EQ(*e.line(), 9u);
  }
}

TEST(ParseConfig, Rejections) {
  EXPECT_NE(error_of("<experiment><process"), "");
  EXPECT_NE(error_of(small_config("a", "no-such-strategy")).find("unknown strategy"), std::string::npos);
  std::string text = small_config("a");
  text.replace(text.find("rec-prob=\"0.9\""), 14, "rec-prob=\"1.5\"");
  EXPECT_NE(error_of(text).find("rec-prob"), std::string::npos);
  text = small_config("a");
  text.replace(text.find("<variables>6</variables>"), 24, "<variables>six</variables>");
  EXPECT_NE(error_of(text).find("variables"), std::string::npos);
  text = small_config("a");
  text.replace(text.find("<mo-strategy type=\"nsga2\"/>"), 27, "<mo-strategy type=\"nsga2\"><kappa>1</kappa></mo-strategy>");
  EXPECT_NE(error_of(text).find("mo-strategy/kappa"), std::string::npos);
  text = small_config("a");
  text.replace(text.find("algorithm-type=\"ea\""), 19, "algorithm-type=\"pso\"");
  EXPECT_NE(error_of(text).find("algorithm-type"), std::string::npos);
  auto const listener = "<listener type=\"comparison-reporter\"><report-title>T</report-title><indicators>"
                        "<indicator type=\"igd\"/></indicators></listener>\n";
  EXPECT_NE(error_of(small_config("a", "nsga2", {}, listener)).find("igd"), std::string::npos);
  auto const bad_ref = "<listener type=\"comparison-reporter\"><report-title>T</report-title><indicators>"
                       "<indicator type=\"hypervolume\"/></indicators><reference-point>1,2,3</reference-point>"
                       "</listener>\n";
  EXPECT_NE(error_of(small_config("a", "nsga2", {}, bad_ref)).find("reference point"), std::string::npos);
  text = small_config("a");
  text.replace(text.find("<rand-gen-factory multi"), 0, "<max-of-evaluations>-3</max-of-evaluations>\n");
  EXPECT_NE(error_of(text).find("max-of-evaluations"), std::string::npos);
  text = small_config("a");
  text.replace(text.find("<evaluator type=\"zdt1\">"), 23, "<evaluator type=\"zdt1\" mode=\"sometimes\">");
  EXPECT_NE(error_of(text).find("mode"), std::string::npos);
  EXPECT_NE(error_of(small_config("../up")).find("directory name"), std::string::npos);
}

TEST(ParseConfig, SwarmConfigRejectsOperators) {
  std::string text = small_config("a", "smpso");
  text.replace(text.find("<population-size>"), 0, "<mutator type=\"polynomial\" mut-prob=\"0.1\"/>\n");
  EXPECT_NE(error_of(text).find("recombinator or mutator"), std::string::npos);
}

TEST(FrontTable, HeaderAndEmptyFront) {
  auto const t = front_table({}, 3, 5);
  EXPECT_EQ(csv::format(t), "var_0,var_1,var_2,obj_0,obj_1,obj_2,obj_3,obj_4\n");
}

TEST(Csv, SeventeenDigitsRoundTrip) {
  auto const dir = scratch("csv");
  Rng rng(3);
  csv::Table t;
  t.header = {"a", "b"};
  for (int i = 0; i < 200; ++i) t.rows.push_back({rng.uniform(-1e6, 1e6), std::ldexp(rng.uniform(), -900)});
  csv::write(dir / "t.csv", t);
  auto const back = csv::read(dir / "t.csv");
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(RunExperiment, RecordsOrderedAndFilesWritten) {
  auto const dir = scratch("order");
  std::vector<ExperimentConfig> configs{parse_config_text(small_config("first"), "a", "a"),
                                        parse_config_text(small_config("second", "spea2"), "b", "b")};
  ExperimentOptions opt;
  opt.out_dir = dir;
  opt.jobs = 3;
  auto const records = run_experiment(configs, opt);
  ASSERT_EQ(records.size(), 6u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_TRUE(records[i].ok()) << records[i].error.value_or("");
    EXPECT_EQ(records[i].config_index, i / 3);
    EXPECT_EQ(records[i].seed_index, i % 3);
    EXPECT_EQ(records[i].evaluations, 12u * 11u);
    auto const pf = front_file(dir, "T", records[i].config_id, records[i].seed_index);
    ASSERT_TRUE(fs::exists(pf));
    auto const table = csv::read(pf);
    EXPECT_EQ(table.header.size(), 8u);
    ASSERT_EQ(table.rows.size(), records[i].front.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      EXPECT_EQ(table.rows[r][6], records[i].front[r].objectives()[0]);
      EXPECT_EQ(table.rows[r][7], records[i].front[r].objectives()[1]);
    }
    EXPECT_TRUE(fs::exists(meta_file(dir, "T", records[i].config_id, records[i].seed_index)));
  }
  EXPECT_EQ(records[4].seed, 22u);
}

TEST(RunExperiment, OutputsIndependentOfJobsAndEvaluatorMode) {
  auto base = parse_config_text(small_config("c"), "c", "c");
  auto parallel = base;
  parallel.mode = EvaluationMode::parallel;
  parallel.workers = 3;
  ExperimentOptions one;
  one.out_dir = scratch("jobs1");
  ExperimentOptions four;
  four.out_dir = scratch("jobs4");
  four.jobs = 4;
  run_experiment({base}, one);
  run_experiment({parallel}, four);
  for (std::size_t k = 0; k < 3; ++k) {
    auto const a = slurp(front_file(one.out_dir, "T", "c", k));
    auto const b = slurp(front_file(four.out_dir, "T", "c", k));
    EXPECT_EQ(a, b) << "seed " << k;
    EXPECT_GT(a.size(), 60u);
  }
  run_experiment({base}, one);
  EXPECT_EQ(slurp(front_file(one.out_dir, "T", "c", 0)), slurp(front_file(four.out_dir, "T", "c", 0)));
}

TEST(RunExperiment, FailingRunDoesNotAbortSiblings) {
  auto const dir = scratch("fail");
  std::vector<ExperimentConfig> configs{parse_config_text(small_config("good"), "a", "a"),
                                        parse_config_text(small_config("bad"), "b", "b")};
  fs::create_directories(dir / "T");
  std::ofstream(dir / "T" / "bad") << "not a directory";
  ExperimentOptions opt;
  opt.out_dir = dir;
  opt.jobs = 2;
  auto const records = run_experiment(configs, opt);
  ASSERT_EQ(records.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(records[i].ok());
  for (std::size_t i = 3; i < 6; ++i) {
    EXPECT_FALSE(records[i].ok());
    EXPECT_EQ(records[i].config_id, "bad");
  }
}

TEST(IndicatorReporter, FrequencyRowsAndFiniteValues) {
  auto const periodic = "<listener type=\"comparison-reporter\"><report-title>T</report-title>"
                        "<frequency>3</frequency><indicators><indicator type=\"hypervolume\"/>"
                        "<indicator type=\"spacing\"/><indicator type=\"onvg\"/></indicators></listener>\n";
  auto const final_only = "<listener type=\"comparison-reporter\"><report-title>U</report-title>"
                          "<indicators><indicator type=\"hypervolume\"/><indicator type=\"spacing\"/>"
                          "</indicators></listener>\n";
  auto const dir = scratch("indicators");
  auto c = parse_config_text(small_config("r", "nsga2", {}, std::string(periodic) + final_only), "r", "r");
  c.seeds.resize(1);
  ExperimentOptions opt;
  opt.out_dir = dir;
  auto const rec = run_single(c, 0, opt);
  ASSERT_TRUE(rec.ok()) << *rec.error;
  auto const t = csv::read(indicators_file(dir, "T", "r", 0));
  EXPECT_EQ(t.header, (std::vector<std::string>{"generation", "evaluations", "hypervolume", "spacing", "onvg"}));
  std::vector<double> gens;
  for (auto const& row : t.rows) {
    gens.push_back(row[0]);
    for (double v : row) EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(row[2], 0.0);
  }
  EXPECT_EQ(gens, (std::vector<double>{0, 3, 6, 9, 10}));
  auto const u = csv::read(indicators_file(dir, "U", "r", 0));
  ASSERT_EQ(u.rows.size(), 1u);
  EXPECT_EQ(u.rows[0][0], 10.0);
  EXPECT_EQ(u.rows[0][1], 132.0);
}

TEST(IndicatorReporter, FiftyOneRowsForFrequencyTenOver500Generations) {
  ReporterSpec spec;
  spec.kind = ReporterKind::comparison;
  spec.indicators = {"spacing"};
  spec.frequency = 10;
  IndicatorRecorder r(spec, 2);
  AlgorithmState st;
  st.sense = ObjectiveSense::minimize(2);
  for (std::size_t g = 0; g <= 500; ++g) {
    st.generation = g;
    r.observe(st, g == 500);
  }
  EXPECT_EQ(r.table().rows.size(), 51u);
}

TEST(SeedOverride, ReplacesEverySeedList) {
  std::vector<ExperimentConfig> configs{parse_config_text(small_config("a"), "a", "a")};
  override_seeds(configs, "5, 6");
  EXPECT_EQ(configs[0].seeds, (std::vector<std::uint64_t>{5, 6}));
  EXPECT_THROW(override_seeds(configs, "x"), ConfigError);
  EXPECT_THROW(override_seeds(configs, ""), ConfigError);
}
