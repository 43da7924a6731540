#include "gpsp/train_config.hpp"

#include "gpsp/error.hpp"

namespace gpsp {

std::string_view to_string(LineOrder order) {
  switch (order) {
    case LineOrder::First: return "1";
    case LineOrder::Second: return "2";
    case LineOrder::Both: return "1+2";
  }
  return "?";
}

LineOrder parse_line_order(std::string_view text) {
  if (text == "1") return LineOrder::First;
  if (text == "2") return LineOrder::Second;
  if (text == "1+2" || text == "both" || text == "concat") return LineOrder::Both;
  throw InvalidArgument("line order must be 1, 2 or 1+2, got '" + std::string(text) + "'");
}

void TrainConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw InvalidArgument(std::string(name) + " must be positive");
  };
  positive(dim, "dim");
  positive(walks_per_node, "walks_per_node");
  positive(walk_length, "walk_length");
  positive(window, "window");
  positive(epochs, "epochs");
  positive(threads, "threads");
  if (negatives > 63) throw InvalidArgument("negatives must be at most 63");
  if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be positive");
  if (!(min_learning_rate >= 0.0) || min_learning_rate > learning_rate) {
    throw InvalidArgument("min_learning_rate must lie in [0, learning_rate]");
  }
  if (!(line_samples_per_edge > 0.0)) throw InvalidArgument("line_samples_per_edge must be positive");
  if (line_order == LineOrder::Both && dim % 2 != 0) {
    throw InvalidArgument("dim must be even when LINE orders are concatenated");
  }
}

}  // namespace gpsp
