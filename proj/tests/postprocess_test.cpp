#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "momo/postprocess/pipeline.hpp"

using namespace momo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const& name) {
  auto dir = fs::temp_directory_path() / ("momo-post-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_run(fs::path const& dir, std::size_t k, std::vector<std::vector<double>> const& pts) {
  fs::create_directories(dir);
  std::ofstream out(dir / ("pf-seed" + std::to_string(k) + ".csv"));
  std::size_t const m = pts.empty() ? 2 : pts.front().size();
  out << "var_0";
  for (std::size_t j = 0; j < m; ++j) out << ",obj_" << j;
  out << "\n";
  for (auto const& p : pts) {
    out << "0.5";
    for (double v : p) out << "," << csv::number(v);
    out << "\n";
  }
  std::ofstream meta(dir / ("run-meta-seed" + std::to_string(k) + ".txt"));
  meta << "maximize=0,0\nexpected-algorithms=2\nexpected-executions=3\nstatus=ok\n";
}

// Two algorithms, three runs each, on a 2-objective linear front.
fs::path synthetic_experiment(std::string const& name, std::uint64_t seed = 3) {
  auto dir = scratch(name) / "Exp";
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::string alg : {"alpha", "beta"}) {
    double const offset = alg == "alpha" ? 0.0 : 0.2;
    for (std::size_t k = 0; k < 3; ++k) {
      std::vector<std::vector<double>> pts;
      for (int i = 0; i < 8; ++i) {
        double const x = u(gen);
        pts.push_back({x + offset * u(gen), 1.0 - x + offset * u(gen)});
      }
      write_run(dir / alg, k, Front::nondominated(pts).points);
    }
  }
  return dir;
}

double h_oracle(std::vector<std::vector<double>> const& groups) {
  std::vector<double> all;
  for (auto const& g : groups) all.insert(all.end(), g.begin(), g.end());
  auto rank = [&](double v) {
    double less = 0, equal = 0;
    for (double w : all) {
      less += w < v;
      equal += w == v;
    }
    return less + (equal + 1) / 2;
  };
  double const n = static_cast<double>(all.size());
  double const mean = (n + 1) / 2;
  double num = 0, den = 0;
  for (auto const& g : groups) {
    double s = 0;
    for (double v : g) {
      s += rank(v);
      den += (rank(v) - mean) * (rank(v) - mean);
    }
    double const gm = s / static_cast<double>(g.size());
    num += static_cast<double>(g.size()) * (gm - mean) * (gm - mean);
  }
  return den == 0 ? 0.0 : (n - 1) * num / den;
}

bool dominates(std::vector<double> const& a, std::vector<double> const& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    strict = strict || a[k] < b[k];
  }
  return strict;
}

} // namespace

TEST(Kruskal, ThreeSeparatedGroups) {
  auto r = kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  EXPECT_NEAR(r.h, 7.2, 1e-12);
  EXPECT_EQ(r.df, 2u);
  EXPECT_NEAR(r.p, 0.02732, 1e-5);
  EXPECT_NEAR(r.p, std::exp(-3.6), 1e-12);
}

TEST(Kruskal, IdenticalGroups) {
  auto r = kruskal_wallis({{1, 2, 3}, {1, 2, 3}});
  EXPECT_NEAR(r.h, 0.0, 1e-12);
  EXPECT_NEAR(r.p, 1.0, 1e-12);
  auto c = kruskal_wallis({{4, 4}, {4, 4, 4}});
  EXPECT_EQ(c.h, 0.0);
  EXPECT_EQ(c.p, 1.0);
}

TEST(Kruskal, MatchesRankVarianceOracleWithTies) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> val(0, 4), size(1, 3), groups(2, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<double>> g(groups(gen));
    std::size_t total = 0;
    for (auto& grp : g) {
      grp.resize(size(gen));
      for (auto& v : grp) v = val(gen);
      total += grp.size();
    }
    if (total < 3 || total > 6) continue;
    auto const r = kruskal_wallis(g);
    double const h = h_oracle(g);
    ASSERT_NEAR(r.h, h, 1e-9);
    double const p = g.size() == 2 ? std::erfc(std::sqrt(h / 2)) : std::exp(-h / 2);
    ASSERT_NEAR(r.p, p, 1e-9);
  }
}

TEST(Kruskal, PermutationNullDistribution) {
  // Shuffling labels of untied data: E[H] = k - 1, and the chi-square tail
  // should track the permutation tail at six per group.
  std::mt19937_64 gen(17);
  std::vector<double> pool(18);
  std::iota(pool.begin(), pool.end(), 1.0);
  std::vector<std::vector<double>> observed{{1, 2, 4, 7, 9, 10}, {3, 5, 6, 8, 12, 15}, {11, 13, 14, 16, 17, 18}};
  double const h_obs = kruskal_wallis(observed).h;
  int const shuffles = 20000;
  double sum = 0, sum_sq = 0;
  int tail = 0;
  for (int s = 0; s < shuffles; ++s) {
    std::shuffle(pool.begin(), pool.end(), gen);
    std::vector<std::vector<double>> g{{pool.begin(), pool.begin() + 6},
                                       {pool.begin() + 6, pool.begin() + 12},
                                       {pool.begin() + 12, pool.end()}};
    double const h = kruskal_wallis(g).h;
    ASSERT_NEAR(h, h_oracle(g), 1e-9);
    sum += h;
    sum_sq += h * h;
    tail += h >= h_obs - 1e-12;
  }
  double const mean = sum / shuffles;
  double const se = std::sqrt((sum_sq / shuffles - mean * mean) / shuffles);
  EXPECT_NEAR(mean, 2.0, 4 * se);
  double const p_perm = static_cast<double>(tail) / shuffles;
  double const p_chi = kruskal_wallis(observed).p;
  EXPECT_NEAR(p_chi, p_perm, 4 * std::sqrt(p_perm * (1 - p_perm) / shuffles) + 0.01);
}

TEST(Kruskal, Rejections) {
  EXPECT_THROW(kruskal_wallis({{1, 2, 3}}), DomainError);
  EXPECT_THROW(kruskal_wallis({{1, 2}, {}}), DomainError);
  EXPECT_THROW(kruskal_wallis({{1}, {2}}), DomainError);
  EXPECT_THROW(kruskal_wallis({{1, NAN}, {2}}), DomainError);
}

TEST(Svg, BoxOfConstantGroup) {
  auto b = svg::box_stats({2.5, 2.5, 2.5, 2.5});
  EXPECT_EQ(b.q1, 2.5);
  EXPECT_EQ(b.median, 2.5);
  EXPECT_EQ(b.q3, 2.5);
  EXPECT_EQ(b.whisker_low, 2.5);
  EXPECT_EQ(b.whisker_high, 2.5);
  EXPECT_TRUE(b.outliers.empty());
  auto doc = svg::boxplot({{"a", {2.5, 2.5}}, {"b", {1.0, 2.0, 3.0}}}, "t");
  EXPECT_NE(doc.find("data-label=\"a\""), std::string::npos);
  EXPECT_EQ(doc.find("nan"), std::string::npos);
}

TEST(Svg, QuartilesAndOutliers) {
  auto b = svg::box_stats({1, 2, 3, 4, 100});
  EXPECT_DOUBLE_EQ(b.q1, 2);
  EXPECT_DOUBLE_EQ(b.median, 3);
  EXPECT_DOUBLE_EQ(b.q3, 4);
  EXPECT_DOUBLE_EQ(b.whisker_high, 4);
  ASSERT_EQ(b.outliers.size(), 1u);
  EXPECT_EQ(b.outliers[0], 100);
}

TEST(Svg, SingleSolutionParallelPlot) {
  auto doc = svg::parallel_coordinates({{0.1, 0.2, 0.3}}, "one");
  std::size_t lines = 0;
  for (auto pos = doc.find("<polyline"); pos != std::string::npos; pos = doc.find("<polyline", pos + 1)) ++lines;
  EXPECT_EQ(lines, 1u);
  EXPECT_NE(doc.find("obj_2"), std::string::npos);
  EXPECT_EQ(doc.find("nan"), std::string::npos);
}

TEST(Merge, MatchesBruteForce) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> v(0, 5), count(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Front> runs(3);
    std::vector<std::vector<double>> all;
    for (auto& f : runs) {
      int const n = count(gen);
      for (int i = 0; i < n; ++i) {
        std::vector<double> p{double(v(gen)), double(v(gen)), double(v(gen))};
        f.points.push_back(p);
        all.push_back(p);
      }
    }
    std::set<std::vector<double>> expected;
    for (auto const& p : all) {
      bool dominated = false;
      for (auto const& q : all) dominated = dominated || dominates(q, p);
      if (!dominated) expected.insert(p);
    }
    auto merged = merge_runs_pf(runs, "x");
    std::set<std::vector<double>> got(merged.points.begin(), merged.points.end());
    ASSERT_EQ(got.size(), merged.size());
    ASSERT_EQ(got, expected);
    EXPECT_EQ(merged.label, "x");
  }
  EXPECT_THROW(merge_runs_pf({}, "x"), DomainError);
}

TEST(Chain, ParsesAndRejects) {
  auto head = build_chain("default");
  std::vector<std::string> ids;
  for (Handler* h = head.get(); h; h = h->successor()) ids.push_back(h->id());
  EXPECT_EQ(ids, handler_ids());
  auto two = build_chain("merge, reference");
  EXPECT_EQ(two->id(), "merge");
  EXPECT_EQ(two->successor()->id(), "reference");
  EXPECT_EQ(two->successor()->successor(), nullptr);
  EXPECT_THROW(build_chain("merge,bogus"), ConfigError);
  EXPECT_THROW(build_chain("merge,merge"), ConfigError);
  EXPECT_THROW(build_chain(""), ConfigError);
}

TEST(Pipeline, DefaultChainProducesReports) {
  auto dir = synthetic_experiment("full");
  auto ctx = run_pipeline(dir);
  EXPECT_EQ(ctx.algorithms, (std::vector<std::string>{"alpha", "beta"}));
  for (auto f : {"merged-alpha.csv", "merged-beta.csv", "reference-pf.csv", "scaled-alpha.csv",
                 "scaled-reference-pf.csv", "unary-indicators.csv", "boxplot-hypervolume.svg", "boxplot-spacing.svg",
                 "parallel-alpha.svg", "indicators.csv", "indicators.html", "kruskal.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  ASSERT_TRUE(ctx.table);
  // The offset algorithm is worse on every distance-like indicator.
  auto const row = [&](std::string const& label) {
    auto it = std::find(ctx.table->rows.begin(), ctx.table->rows.end(), label);
    return static_cast<std::size_t>(it - ctx.table->rows.begin());
  };
  EXPECT_EQ(ctx.table->best[row("IGD")], 0u);
  EXPECT_EQ(ctx.table->best[row("I_eps+")], 0u);
  for (auto const& [id, r] : ctx.kruskal) {
    EXPECT_GE(r.p, 0.0);
    EXPECT_LE(r.p, 1.0);
  }
  auto const text = csv::read_text(dir / "kruskal.txt");
  EXPECT_NE(text.find("indicator=hypervolume H="), std::string::npos);
  EXPECT_TRUE(ctx.warnings.empty());
}

TEST(Pipeline, SingleHandlerAndIdempotentRerun) {
  auto dir = synthetic_experiment("single");
  auto ctx = run_pipeline(dir, "merge");
  EXPECT_EQ(ctx.artifacts.size(), 2u);
  EXPECT_FALSE(fs::exists(dir / "reference-pf.csv"));
  auto const first = csv::read_text(dir / "merged-alpha.csv");

  run_pipeline(dir);
  auto const a = csv::read_text(dir / "indicators.csv");
  auto const k = csv::read_text(dir / "kruskal.txt");
  run_pipeline(dir);
  EXPECT_EQ(csv::read_text(dir / "merged-alpha.csv"), first);
  EXPECT_EQ(csv::read_text(dir / "indicators.csv"), a);
  EXPECT_EQ(csv::read_text(dir / "kruskal.txt"), k);
}

TEST(Pipeline, LaterStepsReuseEarlierArtifacts) {
  auto dir = synthetic_experiment("staged");
  run_pipeline(dir, "merge,reference");
  run_pipeline(dir, "scale");
  auto ctx = run_pipeline(dir, "indicators");
  EXPECT_TRUE(ctx.table);
  EXPECT_EQ(ctx.artifacts.size(), 2u);
}

TEST(Pipeline, MissingUpstreamArtifactNamesStep) {
  auto dir = synthetic_experiment("missing");
  try {
    run_pipeline(dir, "reference");
    FAIL();
  } catch (StateError const& e) {
    EXPECT_NE(std::string(e.what()).find("merge"), std::string::npos);
  }
  run_pipeline(dir, "merge");
  try {
    run_pipeline(dir, "scale");
    FAIL();
  } catch (StateError const& e) {
    EXPECT_NE(std::string(e.what()).find("reference"), std::string::npos);
  }
}

TEST(Pipeline, SeparateReportDirectory) {
  auto dir = synthetic_experiment("outdir");
  auto out = dir.parent_path() / "reports-elsewhere";
  run_pipeline(dir, "default", out);
  EXPECT_TRUE(fs::exists(out / "indicators.csv"));
  EXPECT_FALSE(fs::exists(dir / "indicators.csv"));
}

TEST(Pipeline, CountMismatchWarns) {
  auto dir = synthetic_experiment("count");
  fs::remove(dir / "beta" / "pf-seed2.csv");
  auto ctx = run_pipeline(dir, "merge");
  ASSERT_EQ(ctx.warnings.size(), 1u);
  EXPECT_NE(ctx.warnings[0].find("beta"), std::string::npos);
}

TEST(Pipeline, EmptyExperimentIsAnError) {
  auto dir = scratch("empty");
  EXPECT_THROW(run_pipeline(dir), IoError);
  EXPECT_THROW(run_pipeline(dir / "nope"), IoError);
}

TEST(Pipeline, AllRunsEmptyIsAnError) {
  auto dir = scratch("allempty") / "Exp";
  write_run(dir / "alpha", 0, {});
  write_run(dir / "beta", 0, {{0.0, 1.0}});
  EXPECT_THROW(run_pipeline(dir, "merge"), StateError);
}
