#pragma once

// Column Hermite normal form over GF(p)[z].
//
// Shape of the canonical basis H (q x r):
//   * column j has its pivot at its last nonzero row; rows below are zero;
//   * pivot rows strictly increase with j;
//   * pivots are monic;
//   * in a pivot row, every other column's entry has degree below the pivot's.
// Two generator sets span the same GF(p)[z]-module iff their forms coincide.

#include <optional>
#include <vector>

#include "kerpair/matrix.hpp"

namespace kerpair {

struct HermiteForm {
  PolyMatrix basis;                    // q x r
  std::vector<std::size_t> pivot_rows;  // length r, strictly increasing
  /// n x n unimodular U with G * U = [basis | 0].
  PolyMatrix transform;

  std::size_t rank() const noexcept { return pivot_rows.size(); }
};

HermiteForm hermite_form(const PolyRing& R, const PolyMatrix& generators);

/// Coordinates c with H c = v when v lies in the column span of the Hermite
/// basis H, found by exact division at each pivot; nullopt otherwise.
std::optional<std::vector<Poly>> hermite_divide(const PolyRing& R, const HermiteForm& h, const std::vector<Poly>& v);

/// Rank of a polynomial matrix over the fraction field GF(p)(z), by
/// fraction-free elimination.
std::size_t rational_rank(const PolyRing& R, const PolyMatrix& a);

/// Largest entry degree, -1 for the zero matrix.
int max_degree(const PolyMatrix& a);

std::vector<int> column_degrees(const PolyMatrix& a);

}  // namespace kerpair
