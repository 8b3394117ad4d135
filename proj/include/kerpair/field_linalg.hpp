#pragma once

// Gaussian elimination over GF(p).

#include <optional>
#include <vector>

#include "kerpair/matrix.hpp"

namespace kerpair {

struct RrefResult {
  ScalarMatrix reduced;  // transform * A, in reduced row echelon form
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  ScalarMatrix transform;  // invertible p x p
};

RrefResult rref(const PrimeField& F, const ScalarMatrix& a);

std::size_t rank(const PrimeField& F, const ScalarMatrix& a);

/// Some x with A x = b, free variables pinned to zero; nullopt if none exists.
std::optional<std::vector<u64>> solve(const PrimeField& F, const ScalarMatrix& a, const std::vector<u64>& b);

std::optional<ScalarMatrix> inverse(const PrimeField& F, const ScalarMatrix& a);

/// Standard nullspace basis (one column per free variable), q x (q - rank).
ScalarMatrix nullspace_basis(const PrimeField& F, const ScalarMatrix& a);

/// Canonical basis of the column span of `generators`: reduced column echelon
/// form, i.e. the transpose of the nonzero rows of rref(generators^T). Column j
/// is zero above its pivot row, the pivot is 1, and every other column is zero
/// in that row. Columns are ordered by pivot row.
ScalarMatrix column_echelon(const PrimeField& F, const ScalarMatrix& generators);

/// Pivot row of each column of a matrix in reduced column echelon form.
std::vector<std::size_t> column_pivots(const ScalarMatrix& echelon);

/// Coordinates of v in a reduced column echelon basis, or nullopt.
std::optional<std::vector<u64>> echelon_coordinates(const PrimeField& F, const ScalarMatrix& echelon,
                                                    const std::vector<u64>& v);

}  // namespace kerpair
