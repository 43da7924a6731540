#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace gpsp {

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(1 + exp(x)) without overflow.
inline double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

/// Negative-sampling loss shared by skip-gram and both LINE orders:
///   -log σ(s·p) - Σ_k log σ(-s·n_k)
/// where s is the source vector, p the positive target and n_k the negatives.
double negative_sampling_loss(std::span<const double> source, std::span<const double> positive,
                              std::span<const std::span<const double>> negatives);

struct NegativeSamplingGradient {
  double loss = 0.0;
  std::vector<double> source;
  std::vector<double> positive;
  std::vector<std::vector<double>> negatives;
};

/// Analytic gradient of negative_sampling_loss with every argument treated as
/// an independent variable.
NegativeSamplingGradient negative_sampling_gradient(
    std::span<const double> source, std::span<const double> positive,
    std::span<const std::span<const double>> negatives);

/// One gradient-descent step of size lr on negative_sampling_loss applied in
/// place. Rows may alias each other (e.g. first-order LINE where source and
/// targets share one table): all partial derivatives are taken at the old
/// values and their contributions are summed. scratch must hold 2 * dim.
/// Returns the loss before the step.
double negative_sampling_step(std::span<double> source, std::span<double> positive,
                              std::span<const std::span<double>> negatives, double lr,
                              std::span<double> scratch);

}  // namespace gpsp
