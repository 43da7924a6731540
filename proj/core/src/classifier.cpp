#include "gpsp/eval/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gpsp/error.hpp"
#include "gpsp/objectives.hpp"
#include "gpsp/rng.hpp"

namespace gpsp::eval {

namespace {

/// Binary logistic regression on standardized rows (bias as last feature),
/// labels in {-1, +1}. Gradient descent with Armijo backtracking; the step
/// grows after each accepted iteration.
std::vector<double> fit_binary(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                               const std::vector<double>& y, const ClassifierOptions& opt) {
  std::vector<double> w(cols, 0.0);
  std::vector<double> grad(cols);
  std::vector<double> trial(cols);
  std::vector<double> margin(rows);
  const double inv_n = 1.0 / static_cast<double>(rows);

  auto objective = [&](const std::vector<double>& weights, bool with_grad) {
    double loss = 0.0;
    if (with_grad) std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* xi = x.data() + i * cols;
      double z = 0.0;
      for (std::size_t j = 0; j < cols; ++j) z += xi[j] * weights[j];
      loss += softplus(-y[i] * z);
      if (with_grad) {
        const double c = -y[i] * sigmoid(-y[i] * z) * inv_n;
        for (std::size_t j = 0; j < cols; ++j) grad[j] += c * xi[j];
      }
    }
    loss *= inv_n;
    double reg = 0.0;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      reg += weights[j] * weights[j];
      if (with_grad) grad[j] += opt.l2 * weights[j];
    }
    return loss + 0.5 * opt.l2 * reg;
  };

  double step = 1.0;
  double f = objective(w, true);
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    double gnorm2 = 0.0;
    for (const double g : grad) gnorm2 += g * g;
    if (std::sqrt(gnorm2) < opt.tolerance) break;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      for (std::size_t j = 0; j < cols; ++j) trial[j] = w[j] - step * grad[j];
      const double ft = objective(trial, false);
      if (ft <= f - 0.5 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    w.swap(trial);
    f = objective(w, true);
    step *= 2.0;
  }
  return w;
}

}  // namespace

std::vector<double> ClassifierModel::scores(std::span<const double> features) const {
  if (features.size() != dim_) throw InvalidArgument("feature length does not match the model");
  std::vector<double> out(label_count_, 0.0);
  const std::size_t cols = dim_ + 1;
  for (std::size_t c = 0; c < label_count_; ++c) {
    const double* w = weights_.data() + c * cols;
    double z = w[dim_];
    for (std::size_t j = 0; j < dim_; ++j) z += (features[j] - mean_[j]) * inv_scale_[j] * w[j];
    out[c] = z;
  }
  return out;
}

Label ClassifierModel::predict(std::span<const double> features) const {
  const auto s = scores(features);
  return static_cast<Label>(std::max_element(s.begin(), s.end()) - s.begin());
}

ClassifierModel train_classifier(const MatchedData& data, std::span<const std::size_t> train_rows,
                                 const ClassifierOptions& options) {
  if (train_rows.empty()) throw InvalidArgument("empty training split");
  std::set<Label> present;
  for (const auto r : train_rows) present.insert(data.labels.at(r));
  if (present.size() < 2) throw InvalidArgument("training split needs at least two classes");

  ClassifierModel model;
  model.dim_ = data.dim;
  model.label_count_ = std::max<std::size_t>(data.label_count,
                                             static_cast<std::size_t>(*present.rbegin()) + 1);
  for (const auto l : data.labels) {
    model.label_count_ = std::max<std::size_t>(model.label_count_, static_cast<std::size_t>(l) + 1);
  }

  const std::size_t d = data.dim;
  const std::size_t n = train_rows.size();
  model.mean_.assign(d, 0.0);
  model.inv_scale_.assign(d, 1.0);
  for (const auto r : train_rows) {
    const auto x = data.row(r);
    for (std::size_t j = 0; j < d; ++j) model.mean_[j] += x[j];
  }
  for (auto& m : model.mean_) m /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (const auto r : train_rows) {
    const auto x = data.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      const double c = x[j] - model.mean_[j];
      var[j] += c * c;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    model.inv_scale_[j] = sd > 1e-12 ? 1.0 / sd : 0.0;
  }

  const std::size_t cols = d + 1;
  std::vector<double> x(n * cols);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = data.row(train_rows[i]);
    double* dst = x.data() + i * cols;
    for (std::size_t j = 0; j < d; ++j) dst[j] = (src[j] - model.mean_[j]) * model.inv_scale_[j];
    dst[d] = 1.0;
  }

  model.weights_.assign(model.label_count_ * cols, 0.0);
  std::vector<double> y(n);
  for (std::size_t c = 0; c < model.label_count_; ++c) {
    if (!present.contains(static_cast<Label>(c))) {
      model.warnings_.push_back("class " + std::to_string(c) + " absent from training split");
    }
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = data.labels[train_rows[i]] == static_cast<Label>(c) ? 1.0 : -1.0;
    }
    const auto w = fit_binary(x, n, cols, y, options);
    std::copy(w.begin(), w.end(), model.weights_.begin() + static_cast<std::ptrdiff_t>(c * cols));
  }
  return model;
}

Split stratified_split(std::span<const Label> labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  Label max_label = -1;
  for (const auto l : labels) max_label = std::max(max_label, l);
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(max_label + 1));
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  Split split;
  Rng rng(seed);
  for (auto& members : by_class) {
    if (members.empty()) continue;
    shuffle(members.begin(), members.end(), rng);
    auto take = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
    if (members.size() >= 2) take = std::clamp<std::size_t>(take, 1, members.size() - 1);
    split.train.insert(split.train.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(take), members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ClassificationResult classify(const MatchedData& data, double train_fraction, std::uint64_t seed,
                              const ClassifierOptions& options) {
  const auto split = stratified_split(data.labels, train_fraction, seed);
  if (split.test.empty()) throw InvalidArgument("test split is empty");
  const auto model = train_classifier(data, split.train, options);

  ClassificationResult result;
  result.warnings = model.warnings();
  for (const auto r : split.test) {
    result.predicted.push_back(model.predict(data.row(r)));
    result.truth.push_back(data.labels[r]);
  }
  result.scores = f1_scores(result.predicted, result.truth, model.label_count());
  return result;
}

}  // namespace gpsp::eval
