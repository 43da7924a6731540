#include "gpsp/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include "gpsp/error.hpp"
#include "gpsp/eval/kmeans.hpp"
#include "gpsp/graph.hpp"
#include "gpsp/rng.hpp"

namespace gpsp::eval {

namespace {

constexpr ReferenceScores kReference[] = {
    {"LINE", {0.7062, 0.7067, 0.7074, 0.7062, 0.7075}, {0.7032, 0.7036, 0.7043, 0.7035, 0.7036}, 0.2516},
    {"DeepWalk", {0.6992, 0.7010, 0.6992, 0.6986, 0.6988}, {0.6964, 0.6982, 0.6965, 0.6963, 0.6961}, 0.2873},
    {"GPSP-LINE", {0.7512, 0.7557, 0.7564, 0.7554, 0.7552}, {0.7482, 0.7527, 0.7534, 0.7526, 0.7522}, 0.3118},
    {"GPSP-DeepWalk", {0.7275, 0.7318, 0.7324, 0.7320, 0.7318}, {0.7253, 0.7290, 0.7298, 0.7295, 0.7289}, 0.3555},
};

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string percent(double fraction) {
  return std::to_string(static_cast<int>(std::lround(fraction * 100))) + "%";
}

}  // namespace

std::optional<ReferenceScores> reference_scores(std::string_view method) {
  for (const auto& p : kReference) {
    if (p.method == method) return p;
  }
  return std::nullopt;
}

EvaluationReport evaluate(const EmbeddingMatrix& embeddings, const LabeledSet& labels,
                          const EvalOptions& options, std::string method) {
  const MatchedData data = match(embeddings, labels);
  if (data.size() < 2) throw InvalidArgument("fewer than two labeled nodes have embeddings");

  EvaluationReport report;
  report.method = std::move(method);
  report.seed = options.seed;
  report.matched_node_count = data.size();
  report.unmatched_label_count = data.unmatched;

  const std::size_t jobs = options.fractions.size();
  std::vector<ClassificationResult> results(jobs);
  auto run = [&](std::size_t i) {
    results[i] = classify(data, options.fractions[i], mix_seed(options.seed, 0xF1000 + i),
                          options.classifier);
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, jobs));
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs; ++i) run(i);
  } else {
    std::vector<std::jthread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < jobs; i += threads) run(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    workers.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::set<std::string> warnings;
  for (std::size_t i = 0; i < jobs; ++i) {
    report.classification.push_back(FractionScores{options.fractions[i], results[i].scores});
    for (const auto& w : results[i].warnings) {
      warnings.insert("train fraction " + format_double(options.fractions[i]) + ": " + w);
    }
  }
  report.warnings.assign(warnings.begin(), warnings.end());

  std::set<Label> distinct(data.labels.begin(), data.labels.end());
  report.clusters = options.clusters ? options.clusters : distinct.size();
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(1, options.kmeans_restarts); ++r) {
    auto km = kmeans(data.features, data.dim, report.clusters, mix_seed(options.seed, 0xC1000 + r),
                     options.kmeans_iters);
    if (km.inertia < best.inertia) best = std::move(km);
  }
  report.nmi = nmi(best.assignments, data.labels);
  return report;
}

void write_report(const EvaluationReport& report, std::ostream& out) {
  const auto reference = reference_scores(report.method);
  constexpr std::size_t kMetric = 10;
  constexpr std::size_t kModel = 24;
  constexpr std::size_t kCell = 8;

  out << "GPSP evaluation report\n";
  out << "method: " << report.method << '\n';
  out << "matched nodes: " << report.matched_node_count
      << " (labels without embedding: " << report.unmatched_label_count << ")\n";
  out << "classifier: one-vs-rest L2 logistic regression (in place of an SVM)\n";
  out << "clustering: k-means++ / Lloyd, k = " << report.clusters
      << "; NMI = I(A;B)/sqrt(H(A)H(B)), natural log\n";
  out << "seed: " << report.seed << "\n\n";

  out << pad("Metric", kMetric) << pad("Model", kModel);
  for (const auto& f : report.classification) out << pad(percent(f.fraction), kCell);
  out << '\n';

  auto reference_cell = [&](const double (&values)[5], double fraction) -> std::string {
    for (int i = 0; i < 5; ++i) {
      if (std::abs(kReferenceFractions[i] - fraction) < 1e-9) return fixed4(values[i]);
    }
    return "-";
  };
  auto rows = [&](const char* metric, bool micro) {
    out << pad(metric, kMetric) << pad(report.method, kModel);
    for (const auto& f : report.classification) out << pad(fixed4(micro ? f.f1.micro : f.f1.macro), kCell);
    out << '\n';
    if (reference) {
      out << pad("", kMetric) << pad(std::string(reference->method) + " (AMiner)", kModel);
      for (const auto& f : report.classification) {
        out << pad(reference_cell(micro ? reference->micro : reference->macro, f.fraction), kCell);
      }
      out << '\n';
    }
  };
  rows("Micro-F1", true);
  rows("Macro-F1", false);
  out << '\n' << "NMI: " << fixed4(report.nmi);
  if (reference) out << "  (reference " << reference->method << " on AMiner: " << fixed4(reference->nmi) << ")";
  out << '\n';

  if (!report.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : report.warnings) out << "  " << w << '\n';
  }
  if (!report.config.empty()) {
    out << "\n[config]\n";
    for (const auto& [k, v] : report.config) out << k << " = " << v << '\n';
  }
}

void write_metrics(const EvaluationReport& report, std::ostream& out) {
  out << "method=" << report.method << '\n';
  out << "seed=" << report.seed << '\n';
  out << "matched_node_count=" << report.matched_node_count << '\n';
  out << "unmatched_label_count=" << report.unmatched_label_count << '\n';
  out << "classifier=ovr_logistic_l2\n";
  out << "nmi_normalization=sqrt\n";
  out << "clusters=" << report.clusters << '\n';
  for (const auto& f : report.classification) {
    const auto tag = format_double(f.fraction);
    out << "micro_f1@" << tag << '=' << format_double(f.f1.micro) << '\n';
    out << "macro_f1@" << tag << '=' << format_double(f.f1.macro) << '\n';
  }
  out << "nmi=" << format_double(report.nmi) << '\n';
  for (const auto& w : report.warnings) out << "warning=" << w << '\n';
}

}  // namespace gpsp::eval
