#include "gpsp/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include "gpsp/error.hpp"

namespace gpsp {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("sha256 initialization failed");
    }
  }
  void update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("sha256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), digest.data(), &len) != 1) throw Error("sha256 final failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(kHex[digest[i] >> 4]);
      out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

Manifest Manifest::load(const std::filesystem::path& file) {
  Manifest m;
  std::ifstream in(file);
  if (!in) return m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    if (kind == "stage") {
      Stage s;
      if (!(fields >> s.name >> s.input_hash)) throw ParseError(file.string(), line_no, "bad stage line");
      m.stages_.push_back(std::move(s));
    } else if (kind == "output") {
      Output o;
      if (m.stages_.empty() || !(fields >> o.path >> o.sha256)) {
        throw ParseError(file.string(), line_no, "bad output line");
      }
      m.stages_.back().outputs.push_back(std::move(o));
    } else {
      throw ParseError(file.string(), line_no, "unknown manifest record '" + kind + "'");
    }
  }
  return m;
}

void Manifest::save(const std::filesystem::path& file) const {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp);
    out << "# gpsp manifest v1\n";
    for (const auto& s : stages_) {
      out << "stage " << s.name << ' ' << s.input_hash << '\n';
      for (const auto& o : s.outputs) out << "output " << o.path << ' ' << o.sha256 << '\n';
    }
  }
  std::filesystem::rename(tmp, file);
}

const Manifest::Stage* Manifest::find(std::string_view name) const {
  for (const auto& s : stages_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void Manifest::record(Stage stage) {
  for (auto& s : stages_) {
    if (s.name == stage.name) {
      s = std::move(stage);
      return;
    }
  }
  stages_.push_back(std::move(stage));
}

bool Manifest::up_to_date(std::string_view name, std::string_view input_hash,
                          const std::filesystem::path& root) const {
  const auto* s = find(name);
  if (s == nullptr || s->input_hash != input_hash) return false;
  for (const auto& o : s->outputs) {
    const auto path = root / o.path;
    if (!std::filesystem::exists(path) || sha256_file(path) != o.sha256) return false;
  }
  return true;
}

}  // namespace gpsp
