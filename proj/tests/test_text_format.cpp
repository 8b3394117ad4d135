#include <gtest/gtest.h>

#include <sstream>

#include "kerpair/text_format.hpp"

using namespace kerpair;

namespace {

const std::string kDir = KERPAIR_FIXTURES;

std::string parse_error_message(const std::string& text) {
  try {
    parse_matrix_file(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

}  // namespace

TEST(Tokenize, BracketGroups) {
  EXPECT_EQ(tokenize("  1 [0, 1]  -2 "), (std::vector<std::string>{"1", "[0,1]", "-2"}));
  EXPECT_EQ(tokenize(""), std::vector<std::string>{});
  EXPECT_EQ(tokenize("[ ]"), std::vector<std::string>{"[]"});
}

TEST(Elements, ResiduesAndPolynomials) {
  EXPECT_EQ(parse_residue("-1", 30), 29u);
  EXPECT_EQ(parse_residue("61", 30), 1u);
  EXPECT_EQ(parse_residue("-30", 30), 0u);
  EXPECT_THROW(parse_residue("x", 5), Error);
  EXPECT_THROW(parse_residue("-", 5), Error);
  EXPECT_EQ(parse_poly("[1,0,3]", 5), Poly({1, 0, 3}));
  EXPECT_EQ(parse_poly("[]", 5), Poly());
  EXPECT_EQ(parse_poly("[0,0]", 5), Poly());
  EXPECT_EQ(parse_poly("7", 5), Poly({2}));
  EXPECT_EQ(parse_poly("[-1,4]", 3), Poly({2, 1}));
  EXPECT_THROW(parse_poly("[1,", 5), Error);
  EXPECT_THROW(parse_poly("[1,]", 5), Error);
  EXPECT_EQ(format_poly(Poly({1, 0, 3})), "[1,0,3]");
  EXPECT_EQ(format_poly(Poly()), "[]");
}

TEST(MatrixFile, LoadsFixtures) {
  const MatrixFile z30 = load_matrix_file(kDir + "/z30.txt");
  EXPECT_EQ(z30.kind, FileRing::Zmod);
  EXPECT_EQ(z30.ring.modulus, 30u);
  EXPECT_EQ(z30.scalar("A"), (ScalarMatrix{{15}}));
  EXPECT_EQ(z30.scalar("B"), (ScalarMatrix{{10}}));
  EXPECT_FALSE(z30.is_poly());

  const MatrixFile p = load_matrix_file(kDir + "/delay_gf2z.txt");
  EXPECT_TRUE(p.is_poly());
  EXPECT_EQ(p.poly("A"), (PolyMatrix{{Poly({0, 1})}}));
  EXPECT_EQ(p.poly("K"), (PolyMatrix{{Poly({0, 1}), Poly({0, 1})}}));
  EXPECT_THROW(p.scalar("A"), Error);
  EXPECT_THROW(p.find("Q"), Error);

  const MatrixFile q = load_matrix_file(kDir + "/z6z.txt");
  EXPECT_EQ(q.kind, FileRing::PolyZmod);
  EXPECT_EQ(q.ring.kind, RingKind::ModRing);
  EXPECT_EQ(q.poly("A"), (PolyMatrix{{Poly({0, 3})}}));

  EXPECT_THROW(load_matrix_file(kDir + "/missing.txt"), Error);
}

TEST(MatrixFile, RoundTrip) {
  for (const char* name : {"z30.txt", "shift_gf2.txt", "gf3.txt", "gf5.txt", "delay_gf2z.txt", "gf3z.txt", "z6z.txt",
                           "z12.txt"}) {
    const MatrixFile f = load_matrix_file(kDir + "/" + name);
    const std::string text = format_matrix_file(f);
    const MatrixFile g = parse_matrix_file(text);
    EXPECT_EQ(format_matrix_file(g), text) << name;
    ASSERT_EQ(g.matrices.size(), f.matrices.size());
    for (std::size_t i = 0; i < f.matrices.size(); ++i) {
      EXPECT_EQ(g.matrices[i].name, f.matrices[i].name);
      EXPECT_EQ(g.matrices[i].matrix, f.matrices[i].matrix) << name;
    }
  }
}

TEST(MatrixFile, EmptyMatrices) {
  const MatrixFile f = parse_matrix_file("ring gf 2\nmatrix E 0 3\nmatrix F 2 0\n\n\n");
  EXPECT_EQ(f.scalar("E").cols(), 3u);
  EXPECT_EQ(f.scalar("F").rows(), 2u);
  EXPECT_EQ(parse_matrix_file(format_matrix_file(f)).scalar("F"), ScalarMatrix(2, 0));
}

TEST(MatrixFile, ErrorsCarryLineNumbers) {
  EXPECT_NE(parse_error_message("").find("missing ring header"), std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 6\n").find("line 1:"), std::string::npos);
  EXPECT_NE(parse_error_message("ring field 5\n").find("unknown ring kind"), std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\n1 2\n").find("line 2:"), std::string::npos);
  EXPECT_NE(parse_error_message("# c\nring gf 5\nmatrix A 1 2\n1 2 3\n").find("line 4: expected 2 entries, got 3"),
            std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A 2 1\n1\nmatrix B 1 1\n1\n").find("line 4: matrix 'A' expects 2 rows"),
            std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A 1 1\n1\n2\n").find("line 4: too many rows"), std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A 1 1\n1\nmatrix A 1 1\n1\n").find("duplicate matrix name"),
            std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A 1 1\nz\n").find("line 3:"), std::string::npos);
  EXPECT_NE(parse_error_message("ring polygf 3\nmatrix A 1 1\n[1,\n").find("line 3:"), std::string::npos);
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A one 1\n").find("bad row count"), std::string::npos);
  // Missing final row is reported at end of file.
  EXPECT_NE(parse_error_message("ring gf 5\nmatrix A 2 1\n1\n").find("line 3:"), std::string::npos);
}

TEST(MatrixFile, CommentsAndNegatives) {
  const MatrixFile f = parse_matrix_file("ring gf 7  # header\n\nmatrix M 1 3 # block\n-1 8 -14\n");
  EXPECT_EQ(f.scalar("M"), (ScalarMatrix{{6, 1, 0}}));
}

TEST(VectorLines, Parse) {
  std::istringstream in("1 0\n\n# skip\n-1 3\n");
  EXPECT_EQ(parse_vector_lines(in, 2, 3), (std::vector<std::vector<u64>>{{1, 0}, {2, 0}}));
  std::istringstream bad("1 0\n1\n");
  try {
    parse_vector_lines(bad, 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_EQ(load_vector_lines(kDir + "/inputs_gf2.txt", 1, 2).size(), 4u);
}
