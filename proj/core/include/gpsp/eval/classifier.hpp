#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpsp/eval/metrics.hpp"

namespace gpsp::eval {

struct ClassifierOptions {
  double l2 = 1e-3;            // penalty on weights (bias excluded), per-sample loss scale
  std::size_t max_iter = 300;  // gradient-descent iterations per class
  double tolerance = 1e-6;     // stop when the gradient norm falls below this
};

/// One-vs-rest L2-regularized logistic regression over z-scored features.
class ClassifierModel {
 public:
  ClassifierModel() = default;

  std::size_t label_count() const noexcept { return label_count_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Classes that had no training example.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Per-class decision values.
  std::vector<double> scores(std::span<const double> features) const;
  /// Highest-scoring class, lowest index on ties.
  Label predict(std::span<const double> features) const;

 private:
  friend ClassifierModel train_classifier(const MatchedData&, std::span<const std::size_t>,
                                          const ClassifierOptions&);

  std::size_t dim_ = 0;
  std::size_t label_count_ = 0;
  std::vector<double> mean_;
  std::vector<double> inv_scale_;
  std::vector<double> weights_;  // label_count x (dim + 1), bias last
  std::vector<std::string> warnings_;
};

ClassifierModel train_classifier(const MatchedData& data, std::span<const std::size_t> train_rows,
                                 const ClassifierOptions& options = {});

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per class, round(fraction * n_c) seeded-random members go to training,
/// clamped so that a class with >= 2 members keeps one on each side.
Split stratified_split(std::span<const Label> labels, double train_fraction, std::uint64_t seed);

struct ClassificationResult {
  F1Scores scores;
  std::vector<Label> predicted;
  std::vector<Label> truth;
  std::vector<std::string> warnings;
};

/// Split, train, and score on the held-out rows. Throws InvalidArgument if
/// the fraction is outside (0, 1) or the training split has < 2 classes.
ClassificationResult classify(const MatchedData& data, double train_fraction, std::uint64_t seed,
                              const ClassifierOptions& options = {});

}  // namespace gpsp::eval
