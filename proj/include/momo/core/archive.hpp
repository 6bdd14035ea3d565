#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "momo/core/dominance.hpp"

namespace momo {

// Elitist store of mutually non-dominated solutions (P*) under constrained
// dominance. When a capacity is set, overflow is resolved by dropping the
// member with the smallest crowding distance.
class Archive {
public:
  Archive() = default;

  explicit Archive(ObjectiveSense sense, std::optional<std::size_t> capacity = std::nullopt)
      : sense_(std::move(sense)), capacity_(capacity) {
    if (capacity_ && *capacity_ == 0) throw ConfigError("archive capacity must be positive");
  }

  // Returns true when the candidate was admitted.
  bool insert(Solution candidate) {
    auto const fc = sense_.orient(candidate.objectives());
    std::vector<bool> evict(members_.size(), false);
    for (std::size_t i = 0; i < members_.size(); ++i) {
      auto const fm = sense_.orient(members_[i].objectives());
      switch (constrained_dominance(fm, members_[i].constraints, fc, candidate.constraints)) {
      case Dominance::a_dominates: return false;
      case Dominance::b_dominates: evict[i] = true; break;
      case Dominance::equal: return false;
      case Dominance::non_dominated:
        if (fm == fc) return false;
        break;
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (!evict[i]) {
        if (w != i) members_[w] = std::move(members_[i]);
        ++w;
      }
    }
    members_.resize(w);
    members_.push_back(std::move(candidate));
    if (capacity_ && members_.size() > *capacity_) truncate();
    return true;
  }

  template<typename Range>
  void insert_all(Range const& solutions) {
    for (auto const& s : solutions) insert(s);
  }

  std::vector<double> crowding() const {
    std::vector<std::vector<double>> pts;
    pts.reserve(members_.size());
    for (auto const& s : members_) pts.push_back(sense_.orient(s.objectives()));
    std::vector<std::size_t> all(members_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return crowding_distances(pts, all);
  }

  Population const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::optional<std::size_t> capacity() const noexcept { return capacity_; }
  ObjectiveSense const& sense() const noexcept { return sense_; }
  void clear() noexcept { members_.clear(); }

private:
  void truncate() {
    auto const d = crowding();
    auto const worst = static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  ObjectiveSense sense_;
  std::optional<std::size_t> capacity_;
  Population members_;
};

} // namespace momo
