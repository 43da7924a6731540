#include "gpsp/alias_table.hpp"

#include <cmath>

#include "gpsp/error.hpp"

namespace gpsp {

AliasTable::AliasTable(std::span<const double> weights) {
  if (weights.empty()) throw InvalidArgument("alias table needs at least one weight");
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("alias table weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("alias table weights are all zero");

  const std::size_t n = weights.size();
  prob_.resize(n);
  alias_.resize(n);

  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }

  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (const auto l : large) {
    prob_[l] = 1.0;
    alias_[l] = l;
  }
  for (const auto s : small) {
    prob_[s] = 1.0;
    alias_[s] = s;
  }
}

}  // namespace gpsp
