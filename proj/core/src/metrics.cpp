#include "gpsp/eval/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "gpsp/error.hpp"
#include "gpsp/graph.hpp"

namespace gpsp::eval {

LabeledSet read_labels(std::istream& in, const std::string& source) {
  LabeledSet set;
  std::unordered_map<std::string, Label> seen;
  std::string raw;
  std::size_t line_no = 0;
  Label max_label = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(source, line_no, "expected '<node_id>\\t<label_int>'");
    }
    Label label = 0;
    const auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), label);
    if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size() || label < 0) {
      throw ParseError(source, line_no, "label must be a non-negative integer");
    }
    std::string id(fields[0]);
    const auto [it, inserted] = seen.emplace(id, label);
    if (!inserted) {
      if (it->second != label) {
        throw ParseError(source, line_no,
                         "node '" + id + "' has more than one label; multi-label data is not supported");
      }
      continue;
    }
    max_label = std::max(max_label, label);
    set.pairs.emplace_back(std::move(id), label);
  }
  set.label_count = static_cast<std::size_t>(max_label + 1);
  return set;
}

LabeledSet load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open labels file " + path.string());
  return read_labels(in, path.string());
}

void write_labels(const LabeledSet& labels, std::ostream& out) {
  for (const auto& [id, label] : labels.pairs) out << id << '\t' << label << '\n';
}

MatchedData match(const EmbeddingMatrix& embeddings, const LabeledSet& labels) {
  MatchedData data;
  data.dim = embeddings.dim();
  data.label_count = labels.label_count;
  for (const auto& [id, label] : labels.pairs) {
    const auto row = embeddings.row_of(id);
    if (!row) {
      ++data.unmatched;
      continue;
    }
    const auto v = embeddings.row(*row);
    data.features.insert(data.features.end(), v.begin(), v.end());
    data.labels.push_back(label);
    data.ids.push_back(id);
  }
  return data;
}

F1Scores f1_scores(std::span<const Label> predicted, std::span<const Label> truth,
                   std::size_t label_count) {
  if (predicted.empty() || truth.empty()) throw InvalidArgument("f1_scores needs non-empty input");
  if (predicted.size() != truth.size()) throw InvalidArgument("f1_scores length mismatch");

  std::size_t classes = label_count;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] < 0 || truth[i] < 0) throw InvalidArgument("labels must be non-negative");
    classes = std::max({classes, static_cast<std::size_t>(predicted[i]) + 1,
                        static_cast<std::size_t>(truth[i]) + 1});
  }
  std::vector<std::size_t> tp(classes, 0), fp(classes, 0), fn(classes, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == truth[i]) {
      ++tp[truth[i]];
    } else {
      ++fp[predicted[i]];
      ++fn[truth[i]];
    }
  }
  std::size_t tp_all = 0, fp_all = 0, fn_all = 0;
  double macro = 0.0;
  for (std::size_t c = 0; c < classes; ++c) {
    tp_all += tp[c];
    fp_all += fp[c];
    fn_all += fn[c];
    const double denom = static_cast<double>(2 * tp[c] + fp[c] + fn[c]);
    macro += denom > 0 ? 2.0 * static_cast<double>(tp[c]) / denom : 0.0;
  }
  F1Scores s;
  s.micro = 2.0 * static_cast<double>(tp_all) / static_cast<double>(2 * tp_all + fp_all + fn_all);
  s.macro = macro / static_cast<double>(classes);
  return s;
}

double nmi(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw InvalidArgument("nmi length mismatch");
  if (a.empty()) throw InvalidArgument("nmi needs at least one element");

  std::map<Label, std::size_t> ca, cb;
  std::map<std::pair<Label, Label>, std::size_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++joint[{a[i], b[i]}];
  }
  const double n = static_cast<double>(a.size());
  auto entropy = [n](const std::map<Label, std::size_t>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log(p);
    }
    return h;
  };
  const double ha = entropy(ca);
  const double hb = entropy(cb);
  if (ca.size() == 1 || cb.size() == 1) {
    // Identical as set partitions iff the contingency table is a bijection.
    return joint.size() == ca.size() && joint.size() == cb.size() ? 1.0 : 0.0;
  }
  double mi = 0.0;
  for (const auto& [pair, c] : joint) {
    const double pxy = static_cast<double>(c) / n;
    const double px = static_cast<double>(ca[pair.first]) / n;
    const double py = static_cast<double>(cb[pair.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace gpsp::eval
