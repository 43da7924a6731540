#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "gpsp/embedding.hpp"
#include "gpsp/error.hpp"
#include "support.hpp"

namespace gpsp {
namespace {

EmbeddingMatrix sample() {
  EmbeddingMatrix m(3, Provenance::Homogeneous, "author-author", "author");
  m.add("a1", std::vector<double>{0.1, -2.0, 1.0 / 3.0});
  m.add("a2", std::vector<double>{1e-300, 5e300, 0.0});
  return m;
}

TEST(Embedding, TextFormat) {
  std::ostringstream out;
  write_embeddings(sample(), out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "2 3");
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.rfind("a1 0.1 -2 ", 0), 0u);
}

TEST(Embedding, TextAndBinaryRoundTripExactly) {
  for (const auto format : {EmbeddingFormat::Text, EmbeddingFormat::Binary}) {
    std::ostringstream out;
    write_embeddings(sample(), out, format);
    std::istringstream in(out.str());
    EXPECT_EQ(read_embeddings(in), sample());
  }
}

TEST(Embedding, FileRoundTripKeepsRequestedTags) {
  const test::TempDir dir("emb");
  save_embeddings(sample(), dir / "x.emb", EmbeddingFormat::Binary);
  const auto back = load_embeddings(dir / "x.emb", Provenance::Projective, "author_to_paper", "author");
  EXPECT_EQ(back, sample());
  EXPECT_EQ(back.provenance(), Provenance::Projective);
  EXPECT_EQ(back.space_label(), "author_to_paper");
}

TEST(Embedding, RejectsBadInput) {
  EmbeddingMatrix m(2, Provenance::Homogeneous, "x-x");
  EXPECT_THROW(m.add("a", std::vector<double>{1.0}), InvalidArgument);
  EXPECT_THROW(m.add("a", std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}),
               InvalidArgument);
  m.add("a", std::vector<double>{1.0, 2.0});
  EXPECT_THROW(m.add("a", std::vector<double>{1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(m.vector("zz"), NotFoundError);

  std::istringstream short_row("1 3\na 1 2\n");
  EXPECT_THROW(read_embeddings(short_row), ParseError);
  std::istringstream bad_header("x y\n");
  EXPECT_THROW(read_embeddings(bad_header), ParseError);
  std::istringstream count_mismatch("2 1\na 1\n");
  EXPECT_THROW(read_embeddings(count_mismatch), ParseError);
}

TEST(Embedding, CosineAndScale) {
  const std::vector<double> a{1, 0}, b{0, 2}, c{2, 0};
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine(a, c), 1.0);
  const auto s = sample().scaled(2.0);
  EXPECT_DOUBLE_EQ(s.vector("a1")[1], -4.0);
}

}  // namespace
}  // namespace gpsp
