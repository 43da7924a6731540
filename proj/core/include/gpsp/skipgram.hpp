#pragma once

#include <vector>

#include "gpsp/alias_table.hpp"
#include "gpsp/embedding.hpp"
#include "gpsp/train_config.hpp"
#include "gpsp/walks.hpp"

namespace gpsp {

struct TrainResult {
  EmbeddingMatrix embeddings;
  std::vector<double> epoch_losses;  // mean loss per positive pair/sample
};

/// Noise distribution proportional to count^0.75 over indices with a
/// positive count.
AliasTable unigram_noise_table(std::span<const double> counts, double power = 0.75);

/// Skip-gram with negative sampling over a walk corpus. For every position a
/// window radius b is drawn uniformly from [1, window]; each (center,
/// context) pair within b is one positive example with `negatives` noise
/// targets drawn from the corpus unigram^0.75 distribution (draws equal to
/// the context are skipped). Input vectors start uniform in
/// [-0.5/dim, 0.5/dim], context vectors at zero; the learning rate decays
/// linearly over all epochs. Emits the input-side vectors for every node that
/// occurs in the corpus.
TrainResult train_skipgram(const WalkCorpus& corpus, const TrainConfig& cfg);

/// Walks plus skip-gram on a homogeneous subnetwork.
TrainResult train_deepwalk(const Subnetwork& subnet, const TrainConfig& cfg);

}  // namespace gpsp
