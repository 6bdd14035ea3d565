#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "momo/strategies/strategy.hpp"

namespace momo {

inline constexpr std::size_t default_hype_samples = 10000;
inline constexpr double default_hype_reference = 1.2;

// alpha[i] = (1/i) prod_{l=1}^{i-1} (k - l) / (n - l) for i = 1..k.
inline std::vector<double> hype_alpha(std::size_t k, std::size_t n) {
  std::vector<double> a(k + 1, 0.0);
  for (std::size_t i = 1; i <= k; ++i) {
    double v = 1.0 / static_cast<double>(i);
    for (std::size_t l = 1; l < i; ++l) v *= static_cast<double>(k - l) / static_cast<double>(n - l);
    a[i] = v;
  }
  return a;
}

namespace detail {

inline void check_hype_reference(std::vector<std::vector<double>> const& points, std::span<const double> ref) {
  for (auto const& p : points) {
    check_same_length(p.size(), ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      if (!(p[k] < ref[k])) throw ConfigError("HypE reference point must be worse than every point in every objective");
    }
  }
}

} // namespace detail

// Exact HypE fitness with k removals. Space is cut into cells by the distinct
// point coordinates; each cell dominated by i <= k points gives alpha[i] times
// its volume to each of them.
inline std::vector<double> hype_exact(std::vector<std::vector<double>> const& points, std::span<const double> ref,
                                      std::size_t k) {
  std::size_t const n = points.size();
  std::vector<double> fit(n, 0.0);
  if (n == 0 || k == 0) return fit;
  detail::check_hype_reference(points, ref);
  k = std::min(k, n);
  std::size_t const m = ref.size();
  auto const alpha = hype_alpha(k, n);

  std::vector<std::vector<double>> edges(m);
  std::vector<std::vector<std::size_t>> rank(n, std::vector<std::size_t>(m));
  std::vector<std::size_t> stride(m);
  std::size_t cells = 1;
  for (std::size_t d = 0; d < m; ++d) {
    auto& e = edges[d];
    for (auto const& p : points) e.push_back(p[d]);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    for (std::size_t i = 0; i < n; ++i) {
      rank[i][d] = static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), points[i][d]) - e.begin());
    }
    e.push_back(ref[d]);
    stride[d] = cells;
    cells *= e.size() - 1;
  }
  auto flat = [&](std::vector<std::size_t> const& r) {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < m; ++d) idx += r[d] * stride[d];
    return idx;
  };
  // Number of points weakly dominating each cell's lower corner: prefix sums.
  std::vector<std::uint32_t> count(cells, 0);
  for (auto const& r : rank) ++count[flat(r)];
  for (std::size_t d = 0; d < m; ++d) {
    std::size_t const len = edges[d].size() - 1;
    for (std::size_t c = 0; c < cells; ++c) {
      if ((c / stride[d]) % len != 0) count[c] += count[c - stride[d]];
    }
  }
  std::vector<double> contrib(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t const i = count[c];
    if (i >= 1 && i <= k) {
      double vol = alpha[i];
      for (std::size_t d = 0; d < m; ++d) {
        std::size_t const j = (c / stride[d]) % (edges[d].size() - 1);
        vol *= edges[d][j + 1] - edges[d][j];
      }
      contrib[c] = vol;
    }
  }
  // Each point collects every cell in its dominated orthant: suffix sums.
  for (std::size_t d = 0; d < m; ++d) {
    std::size_t const len = edges[d].size() - 1;
    for (std::size_t c = cells; c-- > 0;) {
      if ((c / stride[d]) % len != len - 1) contrib[c] += contrib[c + stride[d]];
    }
  }
  for (std::size_t i = 0; i < n; ++i) fit[i] = contrib[flat(rank[i])];
  return fit;
}

// Monte Carlo samples drawn once in the box [ideal, ref], each remembering
// which points dominate it, so that repeated fitness queries after removals
// reuse the same samples.
class HypeSampler {
public:
  HypeSampler(std::vector<std::vector<double>> const& points, std::span<const double> ref, std::size_t samples,
              Rng& rng)
      : n_(points.size()) {
    if (samples == 0) throw ConfigError("HypE sampling-size must be positive");
    if (n_ == 0) return;
    detail::check_hype_reference(points, ref);
    std::size_t const m = ref.size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    for (auto const& p : points) {
      for (std::size_t d = 0; d < m; ++d) lo[d] = std::min(lo[d], p[d]);
    }
    double box = 1.0;
    for (std::size_t d = 0; d < m; ++d) box *= ref[d] - lo[d];
    weight_ = box / static_cast<double>(samples);
    std::vector<double> flat;
    flat.reserve(n_ * m);
    for (auto const& p : points) flat.insert(flat.end(), p.begin(), p.end());
    std::vector<double> s(m);
    std::vector<std::uint32_t> hit;
    for (std::size_t t = 0; t < samples; ++t) {
      for (std::size_t d = 0; d < m; ++d) s[d] = rng.uniform(lo[d], ref[d]);
      hit.clear();
      for (std::size_t i = 0; i < n_; ++i) {
        double const* p = &flat[i * m];
        std::size_t d = 0;
        while (d < m && p[d] <= s[d]) ++d;
        if (d == m) hit.push_back(static_cast<std::uint32_t>(i));
      }
      if (!hit.empty()) dominators_.push_back(hit);
    }
  }

  // Fitness of the members flagged in `alive` with k removals.
  std::vector<double> fitness(std::vector<bool> const& alive, std::size_t k) const {
    std::vector<double> fit(n_, 0.0);
    std::size_t const n = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), true));
    if (n == 0 || k == 0) return fit;
    k = std::min(k, n);
    auto const alpha = hype_alpha(k, n);
    for (auto const& list : dominators_) {
      std::size_t i = 0;
      for (auto p : list) i += alive[p] ? 1 : 0;
      if (i == 0 || i > k) continue;
      double const w = alpha[i] * weight_;
      for (auto p : list) {
        if (alive[p]) fit[p] += w;
      }
    }
    return fit;
  }

  // Greedy reduction to `keep` members: repeatedly drops the member with the
  // lowest fitness for k = alive - keep (first index on ties). Per-member
  // histograms of the alive-dominator counts of its samples make each step
  // O(n k). A sample whose count exceeds k never contributes again, since k
  // shrinks by one per step and the count by at most one.
  std::vector<bool> reduce(std::size_t keep) const {
    std::vector<bool> alive(n_, true);
    if (keep >= n_) return alive;
    std::size_t const bins = n_ + 1;
    std::vector<std::vector<std::uint32_t>> covers(n_);
    std::vector<std::uint32_t> count(dominators_.size());
    std::vector<std::uint32_t> hist(n_ * bins, 0);
    for (std::size_t s = 0; s < dominators_.size(); ++s) {
      auto const c = static_cast<std::uint32_t>(dominators_[s].size());
      count[s] = c;
      for (auto p : dominators_[s]) {
        covers[p].push_back(static_cast<std::uint32_t>(s));
        ++hist[p * bins + c];
      }
    }
    for (std::size_t left = n_; left > keep; --left) {
      std::size_t const k = left - keep;
      auto const alpha = hype_alpha(k, left);
      std::size_t worst = n_;
      double worst_fit = 0.0;
      for (std::size_t p = 0; p < n_; ++p) {
        if (!alive[p]) continue;
        double f = 0.0;
        auto const* h = &hist[p * bins];
        for (std::size_t c = 1; c <= k; ++c) f += alpha[c] * static_cast<double>(h[c]);
        f *= weight_;
        if (worst == n_ || f < worst_fit) {
          worst = p;
          worst_fit = f;
        }
      }
      alive[worst] = false;
      for (auto s : covers[worst]) {
        auto const c = count[s]--;
        if (c > k) continue;
        for (auto q : dominators_[s]) {
          if (!alive[q]) continue;
          --hist[q * bins + c];
          ++hist[q * bins + c - 1];
        }
      }
    }
    return alive;
  }

private:
  std::size_t n_;
  double weight_ = 0.0;
  std::vector<std::vector<std::uint32_t>> dominators_;
};

// Exact for up to three objectives, Monte Carlo otherwise.
inline std::vector<double> hype_fitness(std::vector<std::vector<double>> const& points, std::span<const double> ref,
                                        std::size_t k, std::size_t samples, Rng& rng) {
  if (points.empty()) return {};
  if (ref.size() <= 3) return hype_exact(points, ref, k);
  HypeSampler sampler(points, ref, samples, rng);
  return sampler.fitness(std::vector<bool>(points.size(), true), k);
}

// Min-max normalization within the set; zero-range objectives map to 0.
inline std::vector<std::vector<double>> normalize_unit(std::vector<std::vector<double>> pts) {
  if (pts.empty()) return pts;
  std::size_t const m = pts.front().size();
  for (std::size_t d = 0; d < m; ++d) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto const& p : pts) {
      lo = std::min(lo, p[d]);
      hi = std::max(hi, p[d]);
    }
    for (auto& p : pts) p[d] = hi > lo ? (p[d] - lo) / (hi - lo) : 0.0;
  }
  return pts;
}

// Objectives are normalized to [0, 1] within the set under consideration and
// measured against a reference of `reference` in every normalized objective.
// Mating uses fitness over P with k = |P|; replacement fills by fronts and
// removes the lowest-fitness member of the critical front one at a time,
// recomputing fitness with k = (remaining removals).
class Hype final : public Strategy {
public:
  explicit Hype(std::size_t samples = default_hype_samples, double reference = default_hype_reference)
      : samples_(samples), reference_(reference) {
    if (samples_ == 0) throw ConfigError("HypE sampling-size must be positive");
    if (!(reference_ > 1.0)) throw ConfigError("HypE reference must exceed 1 in normalized space");
  }

  std::string id() const override { return "hype"; }
  std::size_t samples() const noexcept { return samples_; }

  void assign_fitness(Population& pop, Population&, Rng& rng) override {
    auto const pts = normalize_unit(detail::oriented_points(pop, sense_));
    std::vector<double> const ref(sense_.size(), reference_);
    auto const f = hype_fitness(pts, ref, pop.size(), samples_, rng);
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i].mo().set_aux(aux::hype, f[i]);
  }

  Population mating_selection(Population const& pop, Population const&, Rng& rng) override {
    require_bound();
    return detail::tournament_parents(
        pop, population_size_,
        [&](std::size_t i, std::size_t j) {
          auto const p = detail::feasibility_preference(pop[i], pop[j]);
          if (p != Preference::indifferent) return p;
          double const a = detail::aux_or(pop[i], aux::hype, 0.0);
          double const b = detail::aux_or(pop[j], aux::hype, 0.0);
          if (a == b) return Preference::indifferent;
          return a > b ? Preference::first : Preference::second;
        },
        rng);
  }

  Population environmental_selection(Population const& pop, Population const& offspring, Population const&,
                                     Rng& rng) override {
    require_bound();
    auto all = detail::concat(pop, offspring);
    auto const set = orient(all, sense_);
    auto const fronts = nondominated_fronts(set);
    std::vector<std::size_t> chosen;
    for (auto const& front : fronts) {
      if (chosen.size() + front.size() <= population_size_) {
        chosen.insert(chosen.end(), front.begin(), front.end());
        if (chosen.size() == population_size_) break;
        continue;
      }
      auto const kept = reduce(set.f, front, population_size_ - chosen.size(), rng);
      chosen.insert(chosen.end(), kept.begin(), kept.end());
      break;
    }
    return detail::pick(all, chosen);
  }

private:
  std::vector<std::size_t> reduce(std::vector<std::vector<double>> const& f, std::vector<std::size_t> const& front,
                                  std::size_t keep, Rng& rng) const {
    std::vector<std::vector<double>> pts;
    for (auto i : front) pts.push_back(f[i]);
    pts = normalize_unit(std::move(pts));
    std::vector<double> const ref(sense_.size(), reference_);
    std::size_t const n = front.size();
    std::vector<bool> alive(n, true);
    std::optional<HypeSampler> sampler;
    if (ref.size() > 3) {
      sampler.emplace(pts, ref, samples_, rng);
      alive = sampler->reduce(keep);
    }
    for (std::size_t left = n; !sampler && left > keep; --left) {
      std::size_t const k = left - keep;
      std::vector<double> fit;
      if (sampler) {
        fit = sampler->fitness(alive, k);
      } else {
        std::vector<std::vector<double>> sub;
        std::vector<std::size_t> back;
        for (std::size_t i = 0; i < n; ++i) {
          if (alive[i]) {
            sub.push_back(pts[i]);
            back.push_back(i);
          }
        }
        auto const part = hype_exact(sub, ref, k);
        fit.assign(n, 0.0);
        for (std::size_t j = 0; j < back.size(); ++j) fit[back[j]] = part[j];
      }
      std::size_t worst = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (alive[i] && (worst == n || fit[i] < fit[worst])) worst = i;
      }
      alive[worst] = false;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i]) out.push_back(front[i]);
    }
    return out;
  }

  std::size_t samples_;
  double reference_;
};

} // namespace momo
