#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace gpsp {

enum class LineOrder { First, Second, Both };

std::string_view to_string(LineOrder order);
LineOrder parse_line_order(std::string_view text);  // "1", "2" or "1+2"

/// Hyperparameters shared by the walk generator and both trainers.
struct TrainConfig {
  std::size_t dim = 128;
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 40;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double learning_rate = 0.025;     // decays linearly to min_learning_rate
  double min_learning_rate = 0.0001;
  std::uint64_t seed = 1;
  LineOrder line_order = LineOrder::Both;
  double line_samples_per_edge = 100.0;
  /// 1 gives bitwise-reproducible training. More threads train
  /// asynchronously (unsynchronized updates, last write wins).
  std::size_t threads = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

/// 256 for LINE (two 128-dim halves), 128 otherwise.
constexpr std::size_t kDeepWalkDim = 128;
constexpr std::size_t kLineDim = 256;

}  // namespace gpsp
