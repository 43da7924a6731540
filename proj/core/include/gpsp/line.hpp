#pragma once

#include "gpsp/partition.hpp"
#include "gpsp/skipgram.hpp"
#include "gpsp/train_config.hpp"

namespace gpsp {

/// LINE trained by edge sampling. Edges are drawn from an alias table over
/// arc weights (undirected edges as two arcs); each draw is a positive pair
/// with `negatives` noise nodes from the out-degree^0.75 distribution.
///   order 1: σ(u_i·u_j), one shared vector table
///   order 2: σ(u_i·c_j), separate context table
///   both:    each order at dim/2, concatenated as [order 1 | order 2]
/// line_samples_per_edge * |E| samples per order, split into `epochs` equal
/// chunks for loss reporting; the learning rate decays linearly over all of
/// them. Emits a vector for every node of the subnetwork.
TrainResult train_line(const Subnetwork& subnet, const TrainConfig& cfg);

}  // namespace gpsp
