#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpsp/embedding.hpp"

namespace gpsp::eval {

using Label = std::int32_t;

/// Exclusive class labels in 0..label_count-1, in file order.
struct LabeledSet {
  std::vector<std::pair<std::string, Label>> pairs;
  std::size_t label_count = 0;
};

/// `<node_id>\t<label_int>` per line; `#` lines ignored. A node listed with
/// two different labels is rejected (multi-label data is not supported).
LabeledSet read_labels(std::istream& in, const std::string& source = "<labels>");
LabeledSet load_labels(const std::filesystem::path& path);
void write_labels(const LabeledSet& labels, std::ostream& out);

/// Labeled rows that have an embedding, as a dense row-major matrix.
struct MatchedData {
  std::size_t dim = 0;
  std::vector<double> features;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  std::size_t label_count = 0;
  std::size_t unmatched = 0;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const double> row(std::size_t i) const { return {features.data() + i * dim, dim}; }
};

MatchedData match(const EmbeddingMatrix& embeddings, const LabeledSet& labels);

struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
};

/// Micro-F1 pools counts over classes; macro-F1 averages per-class F1 over
/// the label universe 0..max(label_count, largest label + 1)-1, where a
/// class with no support and no predictions scores 0.
F1Scores f1_scores(std::span<const Label> predicted, std::span<const Label> truth,
                   std::size_t label_count = 0);

/// I(A;B) / sqrt(H(A) H(B)) with natural logs. When either entropy is zero
/// the result is 1 if both labelings are the same set partition, else 0.
double nmi(std::span<const Label> a, std::span<const Label> b);

}  // namespace gpsp::eval
