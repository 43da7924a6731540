#include "gpsp/projection.hpp"

#include <algorithm>
#include <tuple>

#include "gpsp/error.hpp"

namespace gpsp {

std::string_view to_string(MissingNeighborPolicy p) {
  return p == MissingNeighborPolicy::Fail ? "fail" : "skip";
}

MissingNeighborPolicy parse_missing_neighbor_policy(std::string_view text) {
  if (text == "fail") return MissingNeighborPolicy::Fail;
  if (text == "skip") return MissingNeighborPolicy::Skip;
  throw InvalidArgument("missing-neighbor policy must be 'fail' or 'skip', got '" +
                        std::string(text) + "'");
}

std::string projection_label(std::string_view source_type, std::string_view target_type) {
  return std::string(source_type) + "_to_" + std::string(target_type);
}

EmbeddingMatrix project(const ProjectionSpec& spec) {
  const auto& bip = spec.bipartite;
  if (bip.kind() != SubnetworkKind::Bipartite) {
    throw InvalidArgument("projection needs a bipartite subnetwork, got " + bip.label());
  }
  const auto& key = bip.key();
  const bool forward = spec.source_type == key.type_a && spec.target_type == key.type_b;
  const bool backward = spec.source_type == key.type_b && spec.target_type == key.type_a;
  if (!forward && !backward) {
    throw InvalidArgument("projection " + spec.source_type + " -> " + spec.target_type +
                          " does not match subnetwork " + bip.label());
  }
  const auto expected_space = SubnetworkKey::homogeneous(spec.target_type).label();
  if (spec.target_embeddings.space_label() != expected_space) {
    throw InvalidArgument("target embeddings live in space '" +
                          spec.target_embeddings.space_label() + "', expected '" +
                          expected_space + "'");
  }

  const auto& target = spec.target_embeddings;
  const std::size_t dim = target.dim();
  const auto label = projection_label(spec.source_type, spec.target_type);

  // (source local, target global, target local, weight)
  std::vector<std::tuple<std::uint32_t, NodeIndex, std::uint32_t, double>> terms;
  terms.reserve(bip.edges().size());
  for (const auto& e : bip.edges()) {
    const std::uint32_t s = forward ? e.u : e.v;
    const std::uint32_t t = forward ? e.v : e.u;
    terms.emplace_back(s, bip.global(t), t, e.weight);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
    return std::tie(std::get<0>(l), std::get<1>(l)) < std::tie(std::get<0>(r), std::get<1>(r));
  });

  std::vector<std::optional<std::size_t>> target_row(bip.node_count());
  std::vector<bool> resolved(bip.node_count(), false);

  EmbeddingMatrix out(dim, Provenance::Projective, label, spec.source_type);
  std::vector<double> acc(dim);
  for (std::size_t begin = 0; begin < terms.size();) {
    const std::uint32_t source = std::get<0>(terms[begin]);
    std::size_t end = begin;
    while (end < terms.size() && std::get<0>(terms[end]) == source) ++end;

    std::fill(acc.begin(), acc.end(), 0.0);
    std::size_t count = 0;
    double weight_sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto [s, tg, tl, w] = terms[i];
      if (!resolved[tl]) {
        target_row[tl] = target.row_of(bip.node_id(tl));
        resolved[tl] = true;
      }
      if (!target_row[tl]) {
        if (spec.options.missing == MissingNeighborPolicy::Fail) {
          throw NotFoundError("projection " + label + ": " + spec.target_type + " '" +
                              bip.node_id(tl) + "' has no vector in " + target.space_label());
        }
        continue;
      }
      const auto vec = target.row(*target_row[tl]);
      for (std::size_t k = 0; k < dim; ++k) acc[k] += vec[k] * w;
      ++count;
      weight_sum += w;
    }
    if (count > 0) {
      const double divisor = spec.options.normalize_by_weight_sum ? weight_sum
                                                                  : static_cast<double>(count);
      auto row = out.add_zero(bip.node_id(source));
      for (std::size_t k = 0; k < dim; ++k) row[k] = acc[k] / divisor;
    }
    begin = end;
  }
  return out;
}

}  // namespace gpsp
