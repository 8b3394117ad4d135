#pragma once

// Plain-text matrix files:
//
//   ring <gf|zmod|polygf|polyzmod> <parameter>
//   matrix <NAME> <rows> <cols>
//   <row of whitespace-separated elements>
//   ...
//
// Residues are decimal literals (negative values are reduced); polynomials are
// bracketed coefficient lists, constant term first: [1,0,3] = 1 + 3z^2, and []
// is zero. A bare integer is accepted as a constant polynomial. `#` starts a
// comment.

#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kerpair/matrix.hpp"

namespace kerpair {

enum class FileRing { Gf, Zmod, PolyGf, PolyZmod };

std::string_view to_string(FileRing r) noexcept;

using AnyMatrix = std::variant<ScalarMatrix, PolyMatrix>;

struct NamedMatrix {
  std::string name;
  AnyMatrix matrix;
};

struct MatrixFile {
  FileRing kind = FileRing::Gf;
  u64 parameter = 2;
  /// PrimeField / ModRing / PolyRing. For polyzmod this is the ModRing of the
  /// coefficients.
  RingSpec ring;
  std::vector<NamedMatrix> matrices;

  bool is_poly() const noexcept { return kind == FileRing::PolyGf || kind == FileRing::PolyZmod; }
  const AnyMatrix& find(const std::string& name) const;
  const ScalarMatrix& scalar(const std::string& name) const;
  const PolyMatrix& poly(const std::string& name) const;
};

MatrixFile parse_matrix_file(std::istream& in);
MatrixFile parse_matrix_file(const std::string& text);
MatrixFile load_matrix_file(const std::string& path);
std::string format_matrix_file(const MatrixFile& file);

/// Splits a line into tokens; a bracketed group is one token even if it
/// contains spaces.
std::vector<std::string> tokenize(std::string_view line);

u64 parse_residue(std::string_view token, u64 modulus);
Poly parse_poly(std::string_view token, u64 modulus);

std::string format_poly(const Poly& p);

/// One vector per non-blank line, `width` entries each.
std::vector<std::vector<u64>> parse_vector_lines(std::istream& in, std::size_t width, u64 modulus);
std::vector<std::vector<u64>> load_vector_lines(const std::string& path, std::size_t width, u64 modulus);

}  // namespace kerpair
