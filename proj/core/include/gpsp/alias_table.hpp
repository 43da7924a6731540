#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpsp/rng.hpp"

namespace gpsp {

/// Walker/Vose alias table: O(n) construction, O(1) draws with probability
/// weights[i] / sum(weights).
class AliasTable {
 public:
  AliasTable() = default;
  /// Throws InvalidArgument on empty input, a negative or non-finite weight,
  /// or an all-zero weight vector.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  bool empty() const noexcept { return prob_.empty(); }

  std::uint32_t sample(Rng& rng) const {
    const auto column = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[column] ? column : alias_[column];
  }

  std::span<const double> prob() const noexcept { return prob_; }
  std::span<const std::uint32_t> alias() const noexcept { return alias_; }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace gpsp
