#include "gpsp/objectives.hpp"

#include <algorithm>

namespace gpsp {

namespace {

// Four running sums so the compiler can keep the loop in vector registers;
// the summation order is still fixed, so results stay reproducible.
double dot_span(std::span<const double> a, std::span<const double> b) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s2) + (s1 + s3);
}

}  // namespace

double negative_sampling_loss(std::span<const double> source, std::span<const double> positive,
                              std::span<const std::span<const double>> negatives) {
  // -log σ(x) = softplus(-x), -log σ(-x) = softplus(x)
  double loss = softplus(-dot_span(source, positive));
  for (const auto& neg : negatives) loss += softplus(dot_span(source, neg));
  return loss;
}

NegativeSamplingGradient negative_sampling_gradient(
    std::span<const double> source, std::span<const double> positive,
    std::span<const std::span<const double>> negatives) {
  const std::size_t dim = source.size();
  NegativeSamplingGradient g;
  g.loss = negative_sampling_loss(source, positive, negatives);
  g.source.assign(dim, 0.0);

  const double c_pos = sigmoid(dot_span(source, positive)) - 1.0;
  g.positive.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g.source[i] += c_pos * positive[i];
    g.positive[i] = c_pos * source[i];
  }
  for (const auto& neg : negatives) {
    const double c = sigmoid(dot_span(source, neg));
    auto& gn = g.negatives.emplace_back(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g.source[i] += c * neg[i];
      gn[i] = c * source[i];
    }
  }
  return g;
}

double negative_sampling_step(std::span<double> source, std::span<double> positive,
                              std::span<const std::span<double>> negatives, double lr,
                              std::span<double> scratch) {
  const std::size_t dim = source.size();
  double* old_source = scratch.data();
  double* grad_source = scratch.data() + dim;
  std::copy(source.begin(), source.end(), old_source);
  std::fill(grad_source, grad_source + dim, 0.0);

  // All coefficients and the source gradient come from the old values, before
  // any row is written.
  constexpr std::size_t kMaxTargets = 64;
  double coeff[kMaxTargets];
  const std::size_t targets = std::min(negatives.size() + 1, kMaxTargets);

  const double f_pos = dot_span(source, positive);
  double loss = softplus(-f_pos);
  coeff[0] = sigmoid(f_pos) - 1.0;
  for (std::size_t i = 0; i < dim; ++i) grad_source[i] += coeff[0] * positive[i];
  for (std::size_t k = 1; k < targets; ++k) {
    const auto& neg = negatives[k - 1];
    const double f = dot_span(source, neg);
    loss += softplus(f);
    coeff[k] = sigmoid(f);
    for (std::size_t i = 0; i < dim; ++i) grad_source[i] += coeff[k] * neg[i];
  }

  {
    const double g = -lr * coeff[0];
    for (std::size_t i = 0; i < dim; ++i) positive[i] += g * old_source[i];
  }
  for (std::size_t k = 1; k < targets; ++k) {
    const double g = -lr * coeff[k];
    auto& neg = negatives[k - 1];
    for (std::size_t i = 0; i < dim; ++i) neg[i] += g * old_source[i];
  }
  for (std::size_t i = 0; i < dim; ++i) source[i] -= lr * grad_source[i];
  return loss;
}

}  // namespace gpsp
