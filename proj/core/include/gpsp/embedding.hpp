#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gpsp {

enum class Provenance { Homogeneous, Projective, Final };

std::string_view to_string(Provenance p);

/// Dense node-id -> vector map with a fixed dimension. Rows keep insertion
/// order, which is also the order they are written to disk.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t dim, Provenance provenance, std::string space_label,
                  std::string node_type = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  Provenance provenance() const noexcept { return provenance_; }
  const std::string& space_label() const noexcept { return space_label_; }
  const std::string& node_type() const noexcept { return node_type_; }
  void set_provenance(Provenance p) { provenance_ = p; }
  void set_space_label(std::string label) { space_label_ = std::move(label); }
  void set_node_type(std::string type) { node_type_ = std::move(type); }

  /// Appends a row; throws on duplicate id, wrong length or non-finite entries.
  void add(std::string id, std::span<const double> vector);
  /// Appends a zero row and returns it for in-place filling.
  std::span<double> add_zero(std::string id);

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::size_t row) const { return ids_.at(row); }
  std::optional<std::size_t> row_of(std::string_view id) const;
  bool contains(std::string_view id) const { return row_of(id).has_value(); }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * dim_, dim_}; }
  /// Throws NotFoundError.
  std::span<const double> vector(std::string_view id) const;

  const std::vector<double>& data() const noexcept { return data_; }

  /// Every entry finite.
  bool finite() const;

  /// Element-wise copy scaled by c; metadata preserved.
  EmbeddingMatrix scaled(double c) const;

  friend bool operator==(const EmbeddingMatrix& l, const EmbeddingMatrix& r) {
    return l.dim_ == r.dim_ && l.ids_ == r.ids_ && l.data_ == r.data_;
  }

 private:
  std::size_t dim_ = 0;
  Provenance provenance_ = Provenance::Homogeneous;
  std::string space_label_;
  std::string node_type_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> rows_;
  std::vector<double> data_;
};

enum class EmbeddingFormat { Text, Binary };

/// Text: first line `<node_count> <dim>`, then `<node_id> <v1> ... <v_dim>`
/// with shortest round-trip decimal formatting.
/// Binary: magic "GPSPEMB1", u64 node_count, u64 dim, then per row a u32 id
/// length, the id bytes and dim little-endian float64 values.
void write_embeddings(const EmbeddingMatrix& m, std::ostream& out,
                      EmbeddingFormat format = EmbeddingFormat::Text);
void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path,
                     EmbeddingFormat format = EmbeddingFormat::Text);

/// Format is detected from the leading bytes. Metadata (provenance, labels)
/// is not stored in the file and is set from the arguments.
EmbeddingMatrix read_embeddings(std::istream& in, const std::string& source = "<embeddings>");
EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                Provenance provenance = Provenance::Homogeneous,
                                std::string space_label = {}, std::string node_type = {});

double dot(std::span<const double> a, std::span<const double> b);
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace gpsp
