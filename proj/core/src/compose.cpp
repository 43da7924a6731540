#include "gpsp/compose.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gpsp/error.hpp"

namespace gpsp {

std::string_view to_string(MissingPolicy p) {
  return p == MissingPolicy::ZeroFill ? "zero_fill" : "drop_node";
}

MissingPolicy parse_missing_policy(std::string_view text) {
  if (text == "zero_fill") return MissingPolicy::ZeroFill;
  if (text == "drop_node") return MissingPolicy::DropNode;
  throw InvalidArgument("missing policy must be 'zero_fill' or 'drop_node', got '" +
                        std::string(text) + "'");
}

Composition concatenate(const CompositionPlan& plan) {
  if (plan.parts.empty()) throw InvalidArgument("composition needs at least one part");
  for (const auto* p : plan.parts) {
    if (p == nullptr) throw InvalidArgument("null composition part");
    if (!p->node_type().empty() && !plan.node_type.empty() && p->node_type() != plan.node_type) {
      throw InvalidArgument("part '" + p->space_label() + "' holds " + p->node_type() +
                            " vectors, plan is for " + plan.node_type);
    }
  }
  const EmbeddingMatrix& base = *plan.parts.front();
  if (base.provenance() != Provenance::Homogeneous) {
    throw InvalidArgument("first composition part must be a homogeneous embedding");
  }
  std::vector<const EmbeddingMatrix*> projective(plan.parts.begin() + 1, plan.parts.end());
  for (const auto* p : projective) {
    if (p->provenance() != Provenance::Projective) {
      throw InvalidArgument("composition part '" + p->space_label() + "' is not projective");
    }
  }
  std::stable_sort(projective.begin(), projective.end(),
                   [](const auto* l, const auto* r) { return l->space_label() < r->space_label(); });

  std::vector<const EmbeddingMatrix*> ordered{&base};
  ordered.insert(ordered.end(), projective.begin(), projective.end());

  Composition result;
  std::size_t total = 0;
  for (const auto* p : ordered) {
    result.parts.push_back(PartBoundary{p->space_label(), total, p->dim()});
    total += p->dim();
  }
  result.embeddings = EmbeddingMatrix(total, Provenance::Final, plan.node_type, plan.node_type);

  std::vector<std::optional<std::size_t>> rows(ordered.size());
  for (std::size_t r = 0; r < base.size(); ++r) {
    const auto& id = base.id(r);
    bool complete = true;
    rows[0] = r;
    for (std::size_t p = 1; p < ordered.size(); ++p) {
      rows[p] = ordered[p]->row_of(id);
      complete &= rows[p].has_value();
    }
    if (!complete && plan.missing_policy == MissingPolicy::DropNode) continue;

    auto out = result.embeddings.add_zero(id);
    for (std::size_t p = 0; p < ordered.size(); ++p) {
      if (!rows[p]) continue;
      const auto src = ordered[p]->row(*rows[p]);
      double scale = 1.0;
      if (plan.l2_normalize_parts) {
        const double norm = std::sqrt(dot(src, src));
        scale = norm > 0.0 ? 1.0 / norm : 0.0;
      }
      auto dst = out.subspan(result.parts[p].offset, result.parts[p].dim);
      for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k] * scale;
    }
  }
  return result;
}

void write_part_boundaries(const std::vector<PartBoundary>& parts, std::ostream& out) {
  for (const auto& p : parts) out << p.space_label << ' ' << p.offset << ' ' << p.dim << '\n';
}

void save_part_boundaries(const std::vector<PartBoundary>& parts, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_part_boundaries(parts, out);
}

std::vector<PartBoundary> load_part_boundaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open " + path.string());
  std::vector<PartBoundary> parts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    PartBoundary p;
    if (!(fields >> p.space_label >> p.offset >> p.dim)) {
      throw ParseError(path.string(), line_no, "expected '<space_label> <offset> <dim>'");
    }
    parts.push_back(std::move(p));
  }
  return parts;
}

}  // namespace gpsp
