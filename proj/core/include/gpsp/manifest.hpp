#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gpsp {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Record of completed pipeline stages under an output directory. Each stage
/// stores a hash of everything it depends on and the content hash of every
/// file it wrote (paths relative to the output directory).
///
///   # gpsp manifest v1
///   stage <name> <input_hash>
///   output <relative_path> <sha256>
class Manifest {
 public:
  struct Output {
    std::string path;
    std::string sha256;
  };
  struct Stage {
    std::string name;
    std::string input_hash;
    std::vector<Output> outputs;
  };

  /// Empty manifest when the file does not exist.
  static Manifest load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

  const std::vector<Stage>& stages() const noexcept { return stages_; }
  const Stage* find(std::string_view name) const;

  /// Replaces an existing entry of the same name in place, or appends.
  void record(Stage stage);

  /// True when a stage with this name and input hash was recorded and all of
  /// its outputs still exist under root with the recorded content hashes.
  bool up_to_date(std::string_view name, std::string_view input_hash,
                  const std::filesystem::path& root) const;

 private:
  std::vector<Stage> stages_;
};

}  // namespace gpsp
