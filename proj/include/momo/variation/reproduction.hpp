#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "momo/core/params.hpp"
#include "momo/variation/operators.hpp"

namespace momo {

// Pairwise recombination applied with probability `probability()` per pair.
class Recombinator {
public:
  explicit Recombinator(double probability) : probability_(probability) {
    if (!(probability >= 0.0 && probability <= 1.0)) throw ConfigError("rec-prob must lie in [0, 1]");
  }
  virtual ~Recombinator() = default;

  virtual std::string id() const = 0;
  virtual bool accepts(Encoding e) const = 0;
  virtual std::pair<Genotype, Genotype> cross(Genotype const& a, Genotype const& b, EncodingSpec const& spec,
                                              Rng& rng) const = 0;

  double probability() const noexcept { return probability_; }

private:
  double probability_;
};

// Solution-level mutation: applied to a child with probability `probability()`;
// inside a chosen child each gene mutates with probability 1/n.
class Mutator {
public:
  explicit Mutator(double probability) : probability_(probability) {
    if (!(probability >= 0.0 && probability <= 1.0)) throw ConfigError("mut-prob must lie in [0, 1]");
  }
  virtual ~Mutator() = default;

  virtual std::string id() const = 0;
  virtual bool accepts(Encoding e) const = 0;
  virtual void mutate(Genotype& g, EncodingSpec const& spec, Rng& rng) const = 0;

  double probability() const noexcept { return probability_; }

private:
  double probability_;
};

namespace detail {
inline double gene_rate(EncodingSpec const& spec) { return 1.0 / static_cast<double>(spec.length); }
} // namespace detail

class BlxAlphaRecombinator final : public Recombinator {
public:
  BlxAlphaRecombinator(double prob, double alpha) : Recombinator(prob), alpha_(alpha) {
    if (!(alpha >= 0.0)) throw ConfigError("BLX alpha must be nonnegative");
  }
  std::string id() const override { return "blx-alpha"; }
  bool accepts(Encoding e) const override { return e == Encoding::real; }
  std::pair<Genotype, Genotype> cross(Genotype const& a, Genotype const& b, EncodingSpec const& spec,
                                      Rng& rng) const override {
    auto [c1, c2] = blx_alpha_crossover(real_genes(a), real_genes(b), alpha_, spec.lower, spec.upper, rng);
    return {RealVector{std::move(c1)}, RealVector{std::move(c2)}};
  }

private:
  double alpha_;
};

class SbxRecombinator final : public Recombinator {
public:
  SbxRecombinator(double prob, double eta) : Recombinator(prob), eta_(eta) {
    if (!(eta >= 0.0)) throw ConfigError("SBX distribution index must be nonnegative");
  }
  std::string id() const override { return "sbx"; }
  bool accepts(Encoding e) const override { return e == Encoding::real; }
  std::pair<Genotype, Genotype> cross(Genotype const& a, Genotype const& b, EncodingSpec const& spec,
                                      Rng& rng) const override {
    // The pair-level probability is applied by reproduce(); always cross here.
    auto [c1, c2] = sbx_crossover(real_genes(a), real_genes(b), 1.0, eta_, spec.lower, spec.upper, rng);
    return {RealVector{std::move(c1)}, RealVector{std::move(c2)}};
  }

private:
  double eta_;
};

class OnePointRecombinator final : public Recombinator {
public:
  using Recombinator::Recombinator;
  std::string id() const override { return "one-point"; }
  bool accepts(Encoding e) const override { return e != Encoding::real; }
  std::pair<Genotype, Genotype> cross(Genotype const& a, Genotype const& b, EncodingSpec const&,
                                      Rng& rng) const override {
    if (auto const* ba = std::get_if<BitString>(&a)) {
      auto [c1, c2] = one_point_crossover(ba->bits, std::get<BitString>(b).bits, rng);
      return {BitString{std::move(c1)}, BitString{std::move(c2)}};
    }
    auto const& ia = std::get<IntVector>(a).genes;
    auto const& ib = std::get<IntVector>(b).genes;
    IntVector c1{ia};
    IntVector c2{ib};
    if (ia.size() >= 2) {
      std::size_t const cut = 1 + rng.index(ia.size() - 1);
      for (std::size_t i = cut; i < ia.size(); ++i) std::swap(c1.genes[i], c2.genes[i]);
    }
    return {std::move(c1), std::move(c2)};
  }
};

class PolynomialMutator final : public Mutator {
public:
  PolynomialMutator(double prob, double eta) : Mutator(prob), eta_(eta) {
    if (!(eta > 0.0)) throw ConfigError("polynomial mutation index must be positive");
  }
  std::string id() const override { return "polynomial"; }
  bool accepts(Encoding e) const override { return e == Encoding::real; }
  void mutate(Genotype& g, EncodingSpec const& spec, Rng& rng) const override {
    auto& genes = real_genes(g);
    genes = polynomial_mutation(genes, detail::gene_rate(spec), eta_, spec.lower, spec.upper, rng);
  }

private:
  double eta_;
};

class BitFlipMutator final : public Mutator {
public:
  using Mutator::Mutator;
  std::string id() const override { return "bit-flip"; }
  bool accepts(Encoding e) const override { return e == Encoding::binary; }
  void mutate(Genotype& g, EncodingSpec const& spec, Rng& rng) const override {
    auto& bits = std::get<BitString>(g).bits;
    bits = bit_flip_mutation(bits, detail::gene_rate(spec), rng);
  }
};

class UniformIntMutator final : public Mutator {
public:
  using Mutator::Mutator;
  std::string id() const override { return "uniform-int"; }
  bool accepts(Encoding e) const override { return e == Encoding::integer; }
  void mutate(Genotype& g, EncodingSpec const& spec, Rng& rng) const override {
    auto& genes = std::get<IntVector>(g).genes;
    genes = uniform_int_mutation(genes, detail::gene_rate(spec), spec.lower, spec.upper, rng);
  }
};

inline std::vector<std::string> recombinator_ids() { return {"blx-alpha", "one-point", "sbx"}; }
inline std::vector<std::string> mutator_ids() { return {"bit-flip", "polynomial", "uniform-int"}; }

inline std::unique_ptr<Recombinator> make_recombinator(std::string const& id, double prob, Params const& p) {
  if (id == "blx-alpha") return std::make_unique<BlxAlphaRecombinator>(prob, p.get("alpha", 0.5));
  if (id == "sbx") return std::make_unique<SbxRecombinator>(prob, p.get("eta", default_eta_crossover));
  if (id == "one-point") return std::make_unique<OnePointRecombinator>(prob);
  throw ConfigError("unknown recombinator '" + id + "'");
}

inline std::unique_ptr<Mutator> make_mutator(std::string const& id, double prob, Params const& p) {
  if (id == "polynomial") return std::make_unique<PolynomialMutator>(prob, p.get("eta", default_eta_mutation));
  if (id == "bit-flip") return std::make_unique<BitFlipMutator>(prob);
  if (id == "uniform-int") return std::make_unique<UniformIntMutator>(prob);
  throw ConfigError("unknown mutator '" + id + "'");
}

// Recombines consecutive parent pairs and mutates the children. Returns one
// unevaluated child per parent; an odd trailing parent is copied and mutated.
inline Population reproduce(Population const& parents, EncodingSpec const& spec, Recombinator const* rec,
                            Mutator const* mut, Rng& rng) {
  Population children;
  children.reserve(parents.size());
  std::size_t i = 0;
  for (; i + 1 < parents.size(); i += 2) {
    Genotype a = parents[i].genotype;
    Genotype b = parents[i + 1].genotype;
    if (rec && rng.bernoulli(rec->probability())) {
      std::tie(a, b) = rec->cross(a, b, spec, rng);
    }
    children.push_back(Solution{std::move(a), std::nullopt, {}});
    children.push_back(Solution{std::move(b), std::nullopt, {}});
  }
  if (i < parents.size()) children.push_back(Solution{parents[i].genotype, std::nullopt, {}});
  if (mut) {
    for (auto& c : children) {
      if (rng.bernoulli(mut->probability())) mut->mutate(c.genotype, spec, rng);
    }
  }
  return children;
}

} // namespace momo
