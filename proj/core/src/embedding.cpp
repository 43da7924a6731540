#include "gpsp/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gpsp/error.hpp"
#include "gpsp/graph.hpp"

namespace gpsp {

static_assert(std::endian::native == std::endian::little,
              "binary embedding I/O assumes a little-endian host");

namespace {
constexpr char kBinaryMagic[8] = {'G', 'P', 'S', 'P', 'E', 'M', 'B', '1'};
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Homogeneous: return "homogeneous";
    case Provenance::Projective: return "projective";
    case Provenance::Final: return "final";
  }
  return "unknown";
}

EmbeddingMatrix::EmbeddingMatrix(std::size_t dim, Provenance provenance, std::string space_label,
                                 std::string node_type)
    : dim_(dim),
      provenance_(provenance),
      space_label_(std::move(space_label)),
      node_type_(std::move(node_type)) {
  if (dim == 0) throw InvalidArgument("embedding dimension must be positive");
}

void EmbeddingMatrix::add(std::string id, std::span<const double> vector) {
  if (vector.size() != dim_) {
    throw InvalidArgument("vector for '" + id + "' has length " + std::to_string(vector.size()) +
                          ", expected " + std::to_string(dim_));
  }
  for (const double x : vector) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite entry in vector for '" + id + "'");
  }
  auto out = add_zero(std::move(id));
  std::copy(vector.begin(), vector.end(), out.begin());
}

std::span<double> EmbeddingMatrix::add_zero(std::string id) {
  if (dim_ == 0) throw InvalidArgument("embedding matrix has no dimension");
  const auto [it, inserted] = rows_.emplace(id, ids_.size());
  if (!inserted) throw InvalidArgument("duplicate embedding row '" + id + "'");
  ids_.push_back(std::move(id));
  data_.resize(data_.size() + dim_, 0.0);
  return row(ids_.size() - 1);
}

std::optional<std::size_t> EmbeddingMatrix::row_of(std::string_view id) const {
  const auto it = rows_.find(std::string(id));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> EmbeddingMatrix::vector(std::string_view id) const {
  if (auto r = row_of(id)) return row(*r);
  throw NotFoundError("no embedding for '" + std::string(id) + "'");
}

bool EmbeddingMatrix::finite() const {
  for (const double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

EmbeddingMatrix EmbeddingMatrix::scaled(double c) const {
  EmbeddingMatrix out = *this;
  for (double& x : out.data_) x *= c;
  return out;
}

void write_embeddings(const EmbeddingMatrix& m, std::ostream& out, EmbeddingFormat format) {
  if (format == EmbeddingFormat::Text) {
    out << m.size() << ' ' << m.dim() << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
      out << m.id(r);
      for (const double x : m.row(r)) out << ' ' << format_double(x);
      out << '\n';
    }
    return;
  }
  auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
  out.write(kBinaryMagic, sizeof kBinaryMagic);
  put_u64(m.size());
  put_u64(m.dim());
  for (std::size_t r = 0; r < m.size(); ++r) {
    const auto len = static_cast<std::uint32_t>(m.id(r).size());
    out.write(reinterpret_cast<const char*>(&len), sizeof len);
    out.write(m.id(r).data(), len);
    const auto row = m.row(r);
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
}

void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path,
                     EmbeddingFormat format) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_embeddings(m, out, format);
  if (!out) throw Error("failed writing " + path.string());
}

namespace {

EmbeddingMatrix read_binary(std::istream& in, const std::string& source) {
  auto fail = [&](const char* what) { return ParseError(source, 0, what); };
  auto get = [&](void* dst, std::size_t n) {
    if (!in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n))) {
      throw fail("truncated binary embedding file");
    }
  };
  std::uint64_t count = 0;
  std::uint64_t dim = 0;
  get(&count, sizeof count);
  get(&dim, sizeof dim);
  if (dim == 0 && count > 0) throw fail("zero dimension");
  EmbeddingMatrix m(dim == 0 ? 1 : dim, Provenance::Homogeneous, {});
  std::vector<double> row(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    std::uint32_t len = 0;
    get(&len, sizeof len);
    std::string id(len, '\0');
    get(id.data(), len);
    get(row.data(), dim * sizeof(double));
    m.add(std::move(id), row);
  }
  return m;
}

}  // namespace

EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source) {
  char magic[sizeof kBinaryMagic] = {};
  in.read(magic, sizeof magic);
  if (in.gcount() == sizeof magic && std::memcmp(magic, kBinaryMagic, sizeof magic) == 0) {
    return read_binary(in, source);
  }
  in.clear();
  in.seekg(0);

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header line");
  std::istringstream header(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (!(header >> count >> dim) || dim == 0) {
    throw ParseError(source, 1, "expected '<node_count> <dim>'");
  }
  EmbeddingMatrix m(dim, Provenance::Homogeneous, {});
  std::vector<double> values(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view rest(line);
    auto next_token = [&]() {
      while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      const auto end = rest.find(' ');
      auto token = rest.substr(0, end);
      rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
      return token;
    };
    const auto id = next_token();
    for (std::size_t k = 0; k < dim; ++k) {
      const auto token = next_token();
      if (token.empty()) throw ParseError(source, line_no, "too few values");
      values[k] = parse_double(token, source, line_no);
    }
    if (!next_token().empty()) throw ParseError(source, line_no, "too many values");
    try {
      m.add(std::string(id), values);
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (m.size() != count) {
    throw ParseError(source, line_no,
                     "header declares " + std::to_string(count) + " rows, found " +
                         std::to_string(m.size()));
  }
  return m;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, Provenance provenance,
                                std::string space_label, std::string node_type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open embedding file " + path.string());
  auto m = read_embeddings(in, path.string());
  m.set_provenance(provenance);
  m.set_space_label(std::move(space_label));
  m.set_node_type(std::move(node_type));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

}  // namespace gpsp
