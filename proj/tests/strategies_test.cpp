#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "momo/strategies/registry.hpp"

using namespace momo;

namespace {

Solution evaluated(std::vector<double> f, double degree = 0.0, double tag = 0.0) {
  Solution s;
  s.genotype = RealVector{{tag}};
  s.fitness = MOFitness(std::move(f));
  s.constraints = ConstraintRecord::from_degree(degree);
  return s;
}

Population random_population(Rng& rng, std::size_t n, std::size_t m, double infeasible_share = 0.0,
                             double tag_base = 0.0) {
  Population pop;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> f(m);
    for (auto& v : f) v = rng.uniform(0.0, 10.0);
    double const degree = rng.uniform() < infeasible_share ? rng.uniform(0.1, 5.0) : 0.0;
    pop.push_back(evaluated(f, degree, tag_base + static_cast<double>(i)));
  }
  return pop;
}

double tag(Solution const& s) { return std::get<RealVector>(s.genotype).genes[0]; }

// Oracle: repeatedly strip the non-dominated set.
std::vector<std::size_t> peel_ranks(std::vector<std::vector<double>> const& pts) {
  std::vector<std::size_t> rank(pts.size(), 0);
  std::size_t assigned = 0;
  for (std::size_t r = 1; assigned < pts.size(); ++r) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        if (j == i || rank[j]) continue;
        bool le = true, lt = false;
        for (std::size_t k = 0; k < pts[i].size(); ++k) {
          le = le && pts[j][k] <= pts[i][k];
          lt = lt || pts[j][k] < pts[i][k];
        }
        dominated = le && lt;
      }
      if (!dominated) layer.push_back(i);
    }
    for (auto i : layer) rank[i] = r;
    assigned += layer.size();
  }
  return rank;
}

// Oracle for HypE: sum over subsets S containing a (|S| = i <= k) of
// alpha_i times the volume dominated by exactly S, by inclusion-exclusion.
double hype_oracle(std::vector<std::vector<double>> const& pts, std::vector<double> const& ref, std::size_t k,
                   std::size_t a) {
  std::size_t const n = pts.size();
  auto corner_volume = [&](unsigned mask) {
    double v = 1.0;
    for (std::size_t d = 0; d < ref.size(); ++d) {
      double worst = -1e300;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) worst = std::max(worst, pts[i][d]);
      }
      v *= ref[d] - worst;
    }
    return v;
  };
  double total = 0.0;
  for (unsigned s = 1; s < (1u << n); ++s) {
    if (!(s >> a & 1u)) continue;
    auto const i = static_cast<std::size_t>(__builtin_popcount(s));
    if (i > k) continue;
    double alpha = 1.0 / static_cast<double>(i);
    for (std::size_t l = 1; l < i; ++l) alpha *= static_cast<double>(k - l) / static_cast<double>(n - l);
    unsigned const others = ((1u << n) - 1) & ~s;
    double exact = 0.0;
    for (unsigned u = others;; u = (u - 1) & others) {
      double const v = corner_volume(s | u);
      exact += __builtin_popcount(u) % 2 ? -v : v;
      if (u == 0) break;
    }
    total += alpha * exact;
  }
  return total;
}

std::vector<std::string> ea_ids() { return {"grea", "hype", "ibea", "moead", "nsga2", "nsga3", "spea2"}; }

struct Round {
  Population survivors;
  Population parents;
};

Round one_round(std::string const& id, Population pop, Population offspring, std::size_t m, std::uint64_t seed) {
  auto strategy = make_strategy(id);
  Rng rng(seed);
  strategy->bind(ObjectiveSense::minimize(m), pop.size(), rng);
  auto archive = strategy->initialize(pop, rng);
  strategy->assign_fitness(pop, archive, rng);
  Round r;
  r.parents = strategy->mating_selection(pop, archive, rng);
  r.survivors = strategy->environmental_selection(pop, offspring, archive, rng);
  return r;
}

} // namespace

TEST(Nsga2, RankAndCrowdingExamples) {
  auto const sense = ObjectiveSense::minimize(2);
  Population pop{evaluated({1, 1}), evaluated({2, 2}), evaluated({1.5, 0.5})};
  nsga2_rank_and_crowd(pop, sense);
  EXPECT_EQ(*pop[0].mo().aux(aux::rank), 1.0);
  EXPECT_EQ(*pop[1].mo().aux(aux::rank), 2.0);
  EXPECT_EQ(*pop[2].mo().aux(aux::rank), 1.0);

  Population line{evaluated({0, 1}), evaluated({0.5, 0.5}), evaluated({1, 0})};
  nsga2_rank_and_crowd(line, sense);
  EXPECT_TRUE(std::isinf(*line[0].mo().aux(aux::crowding)));
  EXPECT_DOUBLE_EQ(*line[1].mo().aux(aux::crowding), 2.0);
  EXPECT_TRUE(std::isinf(*line[2].mo().aux(aux::crowding)));

  Population one{evaluated({3, 3})};
  nsga2_rank_and_crowd(one, sense);
  EXPECT_EQ(*one[0].mo().aux(aux::rank), 1.0);
  EXPECT_TRUE(std::isinf(*one[0].mo().aux(aux::crowding)));
}

TEST(Nsga2, RanksMatchBruteForcePeeling) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t const m = 2 + rng.index(4);
    std::size_t const n = 1 + rng.index(100);
    Population pop;
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> f(m);
      for (auto& v : f) v = static_cast<double>(rng.index(5));
      pts.push_back(f);
      pop.push_back(evaluated(f));
    }
    nsga2_rank_and_crowd(pop, ObjectiveSense::minimize(m));
    auto const expected = peel_ranks(pts);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(*pop[i].mo().aux(aux::rank), static_cast<double>(expected[i]));
  }
}

TEST(Spea2, StrengthRawExamples) {
  auto const sense = ObjectiveSense::minimize(2);
  Population pop{evaluated({0, 0}), evaluated({1, 1}), evaluated({2, 2}), evaluated({3, 3})};
  spea2_fitness(pop, sense);
  EXPECT_EQ(*pop[0].mo().aux(aux::strength), 3.0);
  EXPECT_EQ(*pop[0].mo().aux(aux::raw), 0.0);
  // chain: raw(d) = 3 + 2 + 1
  EXPECT_EQ(*pop[3].mo().aux(aux::raw), 6.0);

  Population chain{evaluated({0, 0}), evaluated({1, 1}), evaluated({2, 2})};
  spea2_fitness(chain, sense);
  EXPECT_EQ(*chain[2].mo().aux(aux::raw), 3.0);

  Population nd{evaluated({0, 1}), evaluated({1, 0})};
  spea2_fitness(nd, sense);
  for (auto const& s : nd) {
    EXPECT_EQ(*s.mo().aux(aux::raw), 0.0);
    EXPECT_LT(*s.mo().aux(aux::fitness), 1.0);
  }
}

TEST(Spea2, TruncationDropsTheMostCrowded) {
  std::vector<std::vector<double>> pts{{0, 1}, {0.5, 0.5}, {0.51, 0.49}, {1, 0}};
  auto const kept = spea2_truncate(pts, {0, 1, 2, 3}, 3);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_TRUE(std::find(kept.begin(), kept.end(), 0u) != kept.end());
  EXPECT_TRUE(std::find(kept.begin(), kept.end(), 3u) != kept.end());
}

TEST(Ibea, FitnessExamplesAndErrors) {
  Population one{evaluated({1, 2})};
  ibea_fitness(one, ObjectiveSense::minimize(2), 0.05);
  EXPECT_EQ(*one[0].mo().aux(aux::fitness), 0.0);
  EXPECT_THROW(Ibea(0.0), ConfigError);
  EXPECT_THROW(make_strategy("ibea", {{"kappa", -1.0}}), ConfigError);
}

TEST(Ibea, IncrementalRemovalMatchesRecomputation) {
  Rng rng(22);
  for (int t = 0; t < 30; ++t) {
    std::size_t const m = 2 + rng.index(3);
    std::size_t const n = 3 + rng.index(25);
    std::vector<std::vector<double>> pts(n, std::vector<double>(m));
    for (auto& p : pts) {
      for (auto& v : p) v = rng.uniform(-5.0, 5.0);
    }
    double const kappa = 0.05;
    IbeaFitness fit(pts, kappa);

    // Oracle built from scratch: normalization and scaling constant c fixed
    // on the full set, fitness summed over survivors only.
    std::vector<double> lo(m, 1e300), hi(m, -1e300);
    for (auto const& p : pts) {
      for (std::size_t k = 0; k < m; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    auto eps = [&](std::size_t a, std::size_t b) {
      double e = -1e300;
      for (std::size_t k = 0; k < m; ++k) e = std::max(e, (pts[a][k] - pts[b][k]) / (hi[k] - lo[k]));
      return e;
    };
    double c = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b) c = std::max(c, std::abs(eps(a, b)));
      }
    }
    std::vector<bool> alive(n, true);
    for (std::size_t left = n; left > 1; --left) {
      for (std::size_t x = 0; x < n; ++x) {
        if (!alive[x]) continue;
        double expect = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
          if (alive[y] && y != x) expect -= std::exp(-eps(y, x) / (c * kappa));
        }
        ASSERT_NEAR(fit.fitness(x), expect, 1e-9 * std::max(1.0, std::abs(expect)));
      }
      auto const w = fit.worst();
      fit.remove(w);
      alive[w] = false;
    }
  }
}

TEST(Ibea, RemovalOrderInvariantUnderCommonScaling) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> pts(12, std::vector<double>(3));
    for (auto& p : pts) {
      for (auto& v : p) v = rng.uniform();
    }
    auto scaled = pts;
    for (auto& p : scaled) {
      for (auto& v : p) v *= 37.5;
    }
    IbeaFitness a(pts, 0.05), b(scaled, 0.05);
    for (int r = 0; r < 10; ++r) {
      auto const wa = a.worst();
      ASSERT_EQ(wa, b.worst());
      a.remove(wa);
      b.remove(wa);
    }
  }
}

TEST(Tchebycheff, Examples) {
  EXPECT_DOUBLE_EQ(tchebycheff(std::vector{0.5, 0.5}, std::vector{1.0, 3.0}, std::vector{0.0, 0.0}), 1.5);
  EXPECT_EQ(tchebycheff(std::vector{0.3, 0.7}, std::vector{2.0, 4.0}, std::vector{2.0, 4.0}), 0.0);
  EXPECT_DOUBLE_EQ(tchebycheff(std::vector{1.0, 0.0}, std::vector{2.0, 1e6}, std::vector{0.0, 0.0}), 2.0);
}

TEST(DasDennis, Examples) {
  auto const unit = das_dennis(3, 1);
  ASSERT_EQ(unit.size(), 3u);
  std::set<std::vector<double>> s(unit.begin(), unit.end());
  EXPECT_TRUE(s.count({1, 0, 0}) && s.count({0, 1, 0}) && s.count({0, 0, 1}));
  EXPECT_EQ(das_dennis(3, 12).size(), 91u);
  for (std::size_t m = 2; m <= 6; ++m) {
    for (std::size_t p = 1; p <= 8; ++p) {
      auto const w = das_dennis(m, p);
      ASSERT_EQ(w.size(), binomial(m + p - 1, p));
      for (auto const& v : w) {
        double sum = 0.0;
        for (double x : v) {
          EXPECT_GE(x, 0.0);
          sum += x;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
    }
  }
  EXPECT_EQ(das_dennis_divisions(2, 100), 99u);
  EXPECT_EQ(das_dennis_divisions(5, 100), 4u);
}

TEST(WeightVectorSet, NeighboursSortedByDistance) {
  auto const w = WeightVectorSet::build(das_dennis(2, 9), 4);
  for (std::size_t i = 0; i < w.size(); ++i) {
    ASSERT_EQ(w.neighbors[i].size(), 4u);
    EXPECT_EQ(w.neighbors[i][0], i);
    for (std::size_t k = 1; k < 4; ++k) {
      EXPECT_LE(distance(w.weights[i], w.weights[w.neighbors[i][k - 1]]),
                distance(w.weights[i], w.weights[w.neighbors[i][k]]));
    }
  }
}

TEST(Nsga3, PerpendicularDistanceOnLineIsZero) {
  EXPECT_EQ(perpendicular_distance(std::vector{0.25, 0.25}, std::vector{0.5, 0.5}), 0.0);
  EXPECT_NEAR(perpendicular_distance(std::vector{1.0, 0.0}, std::vector{0.5, 0.5}), std::sqrt(0.5), 1e-15);
}

TEST(Nsga3, WholeFrontsFitMatchesNsga2) {
  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    auto pool = random_population(rng, 40, 3);
    auto const fronts = nondominated_fronts(orient(pool, ObjectiveSense::minimize(3)));
    std::size_t n = fronts[0].size();
    if (fronts.size() > 1) n += fronts[1].size();
    auto const refs = das_dennis(3, 4);
    Rng r(1);
    auto const chosen = nsga3_select(pool, ObjectiveSense::minimize(3), refs, n, r);
    std::set<std::size_t> expect(fronts[0].begin(), fronts[0].end());
    if (fronts.size() > 1) expect.insert(fronts[1].begin(), fronts[1].end());
    EXPECT_EQ(std::set<std::size_t>(chosen.begin(), chosen.end()), expect);
  }
}

TEST(Nsga3, TwoObjectiveSelectionKeepsExtremes) {
  Rng rng(25);
  for (int t = 0; t < 50; ++t) {
    std::size_t const n = 10;
    Population pool;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      double const x = rng.uniform();
      pool.push_back(evaluated({x, 1.0 - x}, 0.0, static_cast<double>(i)));
    }
    auto const refs = das_dennis(2, n - 1);
    auto const chosen = nsga3_environmental(pool, ObjectiveSense::minimize(2), refs, n, rng);
    ASSERT_EQ(chosen.size(), n);
    double lo = 2.0, hi = -1.0, got_lo = 2.0, got_hi = -1.0;
    for (auto const& s : pool) {
      lo = std::min(lo, s.objectives()[0]);
      hi = std::max(hi, s.objectives()[0]);
    }
    for (auto const& s : chosen) {
      got_lo = std::min(got_lo, s.objectives()[0]);
      got_hi = std::max(got_hi, s.objectives()[0]);
    }
    EXPECT_EQ(got_lo, lo);
    EXPECT_EQ(got_hi, hi);
  }
}

TEST(Nsga3, DegenerateHyperplaneFallsBack) {
  std::vector<std::vector<double>> pts{{0, 0}, {0, 0}, {0, 0}};
  auto const norm = nsga3_normalize(pts, {0, 1, 2});
  for (auto const& p : norm) {
    for (double v : p) EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(Grea, GridExamples) {
  auto const g = grea_make_grid({{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.2}}, 2);
  EXPECT_DOUBLE_EQ(g.lower[0], -0.25);
  EXPECT_DOUBLE_EQ(g.width[0], 0.75);
  EXPECT_EQ(g.coords[2][0], 1.0);
  auto const same = grea_make_grid({{0.1, 0.1}, {0.11, 0.12}, {1.0, 1.0}}, 2);
  EXPECT_EQ(same.coords[0], same.coords[1]);
  auto const flat = grea_make_grid({{1.0, 0.0}, {1.0, 1.0}}, 4);
  EXPECT_EQ(flat.coords[0][0], 0.0);
  EXPECT_EQ(flat.coords[1][0], 0.0);
}

TEST(Grea, GridDominanceImpliesParetoNonInferiority) {
  Rng rng(26);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::vector<double>> pts(20, std::vector<double>(2));
    for (auto& p : pts) {
      for (auto& v : p) v = rng.uniform();
    }
    auto const g = grea_make_grid(pts, 1 + rng.index(10));
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = 0; b < pts.size(); ++b) {
        if (grid_dominates(g.coords[a], g.coords[b])) {
          EXPECT_NE(dominates(pts[b], pts[a]), Dominance::a_dominates);
        }
      }
    }
  }
}

TEST(Grea, AuxComponents) {
  Population pop{evaluated({0.0, 1.0}), evaluated({0.05, 0.95}), evaluated({1.0, 0.0})};
  grea_grid(pop, ObjectiveSense::minimize(2), 4);
  EXPECT_EQ(pop[0].mo().grid, pop[1].mo().grid);
  EXPECT_EQ(*pop[0].mo().aux(aux::grid_rank), pop[0].mo().grid[0] + pop[0].mo().grid[1]);
  // Members sharing a cell are each other's neighbours: GCD = M - 0.
  EXPECT_EQ(*pop[0].mo().aux(aux::grid_crowding), 2.0);
  EXPECT_EQ(*pop[2].mo().aux(aux::grid_crowding), 0.0);
  EXPECT_GE(*pop[1].mo().aux(aux::grid_point_distance), 0.0);
}

TEST(Hype, ExactExamples) {
  std::vector<double> const ref{1.0, 1.0};
  EXPECT_DOUBLE_EQ(hype_exact({{0.0, 0.0}}, ref, 1)[0], 1.0);
  auto const f = hype_exact({{0.25, 0.75}, {0.75, 0.25}}, ref, 1);
  EXPECT_DOUBLE_EQ(f[0], f[1]);
  // k = 1: exclusive contribution, 0.1875 - 0.0625.
  EXPECT_DOUBLE_EQ(f[0], 0.125);
  EXPECT_THROW(hype_exact({{1.0, 0.5}}, ref, 1), ConfigError);
}

TEST(Hype, ExactMatchesSubsetOracle) {
  Rng rng(27);
  for (int t = 0; t < 60; ++t) {
    std::size_t const m = 2 + rng.index(2);
    std::size_t const n = 1 + rng.index(6);
    std::vector<std::vector<double>> pts(n, std::vector<double>(m));
    for (auto& p : pts) {
      for (auto& v : p) v = static_cast<double>(rng.index(8)) / 8.0;
    }
    std::vector<double> const ref(m, 1.2);
    for (std::size_t k = 1; k <= n; ++k) {
      auto const f = hype_exact(pts, ref, k);
      for (std::size_t a = 0; a < n; ++a) ASSERT_NEAR(f[a], hype_oracle(pts, ref, k, a), 1e-12);
    }
  }
}

TEST(Hype, MonteCarloWithinThreeSigmaOfExact) {
  Rng rng(28);
  int inside = 0, total = 0;
  std::size_t const samples = 10000;
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<double>> pts;
    std::size_t const n = 2 + rng.index(6);
    for (std::size_t i = 0; i < n; ++i) {
      double const x = rng.uniform();
      pts.push_back({x, 1.0 - std::sqrt(x)});
    }
    std::vector<double> const ref{1.1, 1.1};
    auto const exact = hype_exact(pts, ref, 1);
    HypeSampler sampler(pts, ref, samples, rng);
    auto const mc = sampler.fitness(std::vector<bool>(n, true), 1);
    double box = 1.0;
    for (std::size_t d = 0; d < 2; ++d) {
      double lo = 1e300;
      for (auto const& p : pts) lo = std::min(lo, p[d]);
      box *= ref[d] - lo;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double const q = exact[i] / box;
      double const sigma = box * std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
      ++total;
      if (std::abs(mc[i] - exact[i]) <= 3.0 * sigma + 1e-15) ++inside;
    }
  }
  EXPECT_GE(static_cast<double>(inside) / total, 0.97);
}

TEST(Hype, SamplerReductionMatchesNaiveRemoval) {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    std::size_t const n = 8 + rng.index(25);
    std::vector<std::vector<double>> pts(n, std::vector<double>(4));
    for (auto& p : pts) {
      for (auto& v : p) v = rng.uniform();
    }
    std::vector<double> const ref(4, 1.2);
    HypeSampler sampler(pts, ref, 2000, rng);
    std::size_t const keep = 1 + rng.index(n - 1);
    std::vector<bool> alive(n, true);
    for (std::size_t left = n; left > keep; --left) {
      auto const fit = sampler.fitness(alive, left - keep);
      std::size_t worst = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (alive[i] && (worst == n || fit[i] < fit[worst] - 1e-12)) worst = i;
      }
      alive[worst] = false;
    }
    EXPECT_EQ(sampler.reduce(keep), alive) << "trial " << t;
  }
}

TEST(Smpso, LeaderAndPersonalBest) {
  Smpso s;
  s.bind(ObjectiveSense::minimize(2), 3, EncodingSpec::real(2, 0.0, 1.0));
  Rng rng(29);
  auto swarm = init_population(EncodingSpec::real(2, 0.0, 1.0), 3, rng, true);
  swarm[0].fitness = MOFitness({0.0, 0.0});
  swarm[1].fitness = MOFitness({1.0, 1.0});
  swarm[2].fitness = MOFitness({2.0, 2.0});
  s.initialize(swarm);
  ASSERT_EQ(s.archive().size(), 1u);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(s.select_leader(rng), 0u);

  // New position dominating pbest replaces it; a dominated one never does.
  auto& p = std::get<Particle>(swarm[1].genotype);
  p.position = {0.9, 0.9};
  swarm[1].fitness = MOFitness({0.5, 0.5});
  auto& q = std::get<Particle>(swarm[2].genotype);
  auto const before = q.best_position;
  q.position = {0.1, 0.1};
  swarm[2].fitness = MOFitness({3.0, 3.0});
  s.update_bests(swarm, rng);
  EXPECT_EQ(p.best_position, (std::vector{0.9, 0.9}));
  EXPECT_EQ(q.best_position, before);
  EXPECT_THROW(s.bind(ObjectiveSense::minimize(2), 3, EncodingSpec::binary(4)), ConfigError);
}

TEST(Registry, StrategyIds) {
  std::vector<std::string> ids;
  for (auto const& e : strategy_catalog()) ids.push_back(e.id);
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  for (auto const& id : {"nsga2", "spea2", "ibea", "moead", "nsga3", "grea", "hype", "smpso"}) {
    EXPECT_TRUE(std::find(ids.begin(), ids.end(), id) != ids.end()) << id;
  }
  EXPECT_THROW(make_strategy("smpso"), ConfigError);
  EXPECT_THROW(make_swarm_strategy("nsga2"), ConfigError);
  EXPECT_THROW(make_strategy("paes"), ConfigError);
  EXPECT_THROW(make_strategy("nsga2", {{"kappa", 1.0}}), ConfigError);
  EXPECT_EQ(make_strategy("hype", {{"sampling-size", 500}})->id(), "hype");
}

TEST(StrategyContract, SizeElitismAndDeterminism) {
  Rng rng(30);
  for (auto const& id : ea_ids()) {
    for (int t = 0; t < 20; ++t) {
      std::size_t const m = 2 + rng.index(4);
      std::size_t const n = 4 + 2 * rng.index(10);
      auto pop = random_population(rng, n, m, 0.0, 0.0);
      auto off = random_population(rng, n, m, 0.0, 1000.0);
      // Plant a solution dominating everything else in P or P''.
      std::vector<double> best(m, -1.0);
      auto& host = rng.bernoulli(0.5) ? pop : off;
      host[rng.index(host.size())] = evaluated(best, 0.0, -1.0);
      std::uint64_t const seed = rng.next();
      auto const a = one_round(id, pop, off, m, seed);
      auto const b = one_round(id, pop, off, m, seed);
      ASSERT_EQ(a.survivors.size(), n) << id;
      ASSERT_EQ(a.parents.size(), n) << id;
      bool kept = std::any_of(a.survivors.begin(), a.survivors.end(), [](Solution const& s) { return tag(s) == -1.0; });
      EXPECT_TRUE(kept) << id << " dropped the dominating solution";
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_EQ(tag(a.survivors[i]), tag(b.survivors[i])) << id;
        ASSERT_EQ(tag(a.parents[i]), tag(b.parents[i])) << id;
      }
    }
  }
}

TEST(StrategyContract, NoInfeasibleSurvivorWhileEnoughFeasible) {
  Rng rng(31);
  for (auto const& id : ea_ids()) {
    if (id == "moead") continue;
    for (int t = 0; t < 20; ++t) {
      std::size_t const m = 2 + rng.index(3);
      std::size_t const n = 10;
      auto pop = random_population(rng, n, m, 0.4, 0.0);
      auto off = random_population(rng, n, m, 0.4, 1000.0);
      std::size_t feasible = 0;
      for (auto const* set : {&pop, &off}) {
        for (auto const& s : *set) feasible += s.constraints.feasible() ? 1 : 0;
      }
      auto const r = one_round(id, pop, off, m, rng.next());
      if (feasible >= n) {
        for (auto const& s : r.survivors) EXPECT_TRUE(s.constraints.feasible()) << id;
      } else {
        std::size_t kept = 0;
        for (auto const& s : r.survivors) kept += s.constraints.feasible() ? 1 : 0;
        EXPECT_EQ(kept, feasible) << id;
      }
    }
  }
}
