#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "momo/core/error.hpp"
#include "momo/core/fitness.hpp"
#include "momo/core/solution.hpp"

namespace momo {

struct ObjectiveInfo {
  std::string id;
  bool maximize = false;
};

// A problem computes all of its objectives at once, in declaration order, plus
// an optional constraint record. Implementations must be pure and reentrant.
class Problem {
public:
  virtual ~Problem() = default;

  virtual std::string id() const = 0;
  virtual EncodingSpec const& encoding() const = 0;
  virtual std::vector<ObjectiveInfo> objectives() const = 0;
  virtual void evaluate(Genotype const& g, std::span<double> out) const = 0;
  virtual ConstraintRecord constraints(Genotype const&) const { return {}; }
  virtual bool constrained() const { return false; }
};

class EvaluationBudget {
public:
  explicit EvaluationBudget(std::optional<std::size_t> max = std::nullopt) : max_(max) {}

  std::size_t used() const noexcept { return used_.load(); }
  std::optional<std::size_t> max() const noexcept { return max_; }
  bool exhausted() const noexcept { return max_ && used() >= *max_; }
  void add(std::size_t n) noexcept { used_.fetch_add(n); }

private:
  std::atomic<std::size_t> used_{0};
  std::optional<std::size_t> max_;
};

enum class EvaluationMode { sequential, parallel };

// Fills fitness and constraint records of solutions for a problem, optionally
// restricted to (and reordered by) a subset of its objectives.
class Evaluator {
public:
  explicit Evaluator(std::shared_ptr<const Problem> problem, EvaluationMode mode = EvaluationMode::sequential,
                     std::size_t workers = 0)
      : problem_(std::move(problem)), mode_(mode), workers_(workers) {
    auto const objs = problem_->objectives();
    selected_.resize(objs.size());
    std::iota(selected_.begin(), selected_.end(), std::size_t{0});
    std::vector<bool> maximize;
    for (auto const& o : objs) maximize.push_back(o.maximize);
    sense_ = ObjectiveSense(std::move(maximize));
  }

  // Uses only the objectives at `selected` (problem indices), in that order,
  // with the given directions.
  Evaluator(std::shared_ptr<const Problem> problem, std::vector<std::size_t> selected, std::vector<bool> maximize,
            EvaluationMode mode = EvaluationMode::sequential, std::size_t workers = 0)
      : problem_(std::move(problem)), selected_(std::move(selected)), mode_(mode), workers_(workers) {
    auto const total = problem_->objectives().size();
    for (auto i : selected_) {
      if (i >= total) throw ConfigError("objective index out of range for problem " + problem_->id());
    }
    if (maximize.size() != selected_.size()) throw DimensionError("one direction per selected objective required");
    sense_ = ObjectiveSense(std::move(maximize));
  }

  Problem const& problem() const noexcept { return *problem_; }
  ObjectiveSense const& sense() const noexcept { return sense_; }
  EvaluationMode mode() const noexcept { return mode_; }
  std::size_t evaluations() const noexcept { return count_.load(); }

  void evaluate(std::span<Solution> solutions) {
    if (solutions.empty()) return;
    std::size_t threads = 1;
    if (mode_ == EvaluationMode::parallel) {
      threads = workers_ ? workers_ : std::max(1u, std::thread::hardware_concurrency());
      threads = std::min(threads, solutions.size());
    }
    if (threads <= 1) {
      for (std::size_t i = 0; i < solutions.size(); ++i) evaluate_one(solutions[i], i);
      return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::size_t> error_index(threads, solutions.size());
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t const chunk = (solutions.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        std::size_t const lo = t * chunk;
        std::size_t const hi = std::min(solutions.size(), lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          try {
            evaluate_one(solutions[i], i);
          } catch (...) {
            errors[t] = std::current_exception();
            error_index[t] = i;
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    // Report the lowest failing index, as the sequential path would.
    std::size_t first = threads;
    for (std::size_t t = 0; t < threads; ++t) {
      if (errors[t] && (first == threads || error_index[t] < error_index[first])) first = t;
    }
    if (first != threads) std::rethrow_exception(errors[first]);
  }

private:
  void evaluate_one(Solution& s, std::size_t index) {
    thread_local std::vector<double> buffer;
    buffer.assign(problem_->objectives().size(), 0.0);
    problem_->evaluate(s.genotype, buffer);
    MOFitness f;
    f.values.reserve(selected_.size());
    for (auto k : selected_) {
      if (!std::isfinite(buffer[k])) {
        throw EvaluationError("objective " + std::to_string(k) + " of " + problem_->id() + " is not finite", index);
      }
      f.values.push_back(buffer[k]);
    }
    s.constraints = problem_->constraints(s.genotype);
    s.fitness = std::move(f);
    count_.fetch_add(1);
  }

  std::shared_ptr<const Problem> problem_;
  std::vector<std::size_t> selected_;
  ObjectiveSense sense_;
  EvaluationMode mode_;
  std::size_t workers_;
  std::atomic<std::size_t> count_{0};
};

} // namespace momo
