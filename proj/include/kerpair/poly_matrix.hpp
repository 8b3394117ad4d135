#pragma once

// Kernels and kernel pairs of polynomial matrices over GF(p)[z].
//
// GF(p)[z] is a PID, so kernels are free and the exact sequence of a kernel
// pair splits; kernel bases are returned in column Hermite form.

#include <optional>
#include <vector>

#include "kerpair/crt.hpp"
#include "kerpair/hermite.hpp"
#include "kerpair/kernel_pair.hpp"

namespace kerpair {

struct PolyKernelBasis {
  PolyMatrix basis;  // q x rank, column Hermite form
  std::vector<std::size_t> pivot_rows;
  std::vector<int> column_degrees;
  /// Degrees of the minimal (greedy, degree-sorted) basis found before the
  /// Hermite reduction.
  std::vector<int> minimal_degrees;

  std::size_t rank() const noexcept { return pivot_rows.size(); }
  HermiteForm as_hermite() const { return HermiteForm{basis, pivot_rows, {}}; }
};

/// Block-striped coefficient matrix M_D of size p(d+D+1) x q(D+1): column
/// j(D+1)+k holds the coefficients of z^k * A[:, j]. Its scalar nullspace is
/// the space of kernel vectors of degree <= D.
ScalarMatrix linearization(const PolyRing& R, const PolyMatrix& a, std::size_t max_degree_d);

/// Inverse of the column layout used by `linearization`.
std::vector<Poly> unstripe(const PolyRing& R, const std::vector<u64>& w, std::size_t q, std::size_t max_degree_d);

/// GF(p)-basis of { v : A v = 0, deg v <= D }, as polynomial vectors.
std::vector<std::vector<Poly>> bounded_kernel(const PolyRing& R, const PolyMatrix& a, std::size_t max_degree_d);

/// GF(p)[z]-basis of { v in GF(p)[z]^q : A v = 0 }. Minimal-degree vectors are
/// collected degree by degree until the rank over GF(p)(z) is reached; the
/// search never goes past degree min(p, q) * deg A.
PolyKernelBasis poly_kernel(const PolyRing& R, const PolyMatrix& a);

struct PolyKernelPair {
  KernelPairResult result;              // method Poly, PolyBasis presentations
  ExactSequenceWitness<Poly> witness;   // section built from the ker_pair basis
  PolyKernelBasis pair_basis;           // basis of ker(A, B)
  HermiteForm bar_form;                 // Hermite form of the projected basis, with transform
};

PolyKernelPair kernel_pair_poly(const PolyRing& R, const PolyMatrix& a, const PolyMatrix& b);

/// x(z) with A x + B u = 0 when u lies in ker(A | B); the witness is verified
/// before it is returned.
std::optional<std::vector<Poly>> poly_member(const PolyRing& R, const PolyMatrix& a, const PolyMatrix& b,
                                             const PolyKernelPair& kp, const std::vector<Poly>& u);

SplittingReport check_splitting(const PolyRing& R, const KernelPairResult& r, const ExactSequenceWitness<Poly>& w);

/// Matrices whose entries are polynomials with Z/m coefficients, m square-free.
struct PolyCrtResult {
  CrtDecomposition crt;
  PolyMatrix global_a;
  PolyMatrix global_b;
  std::vector<PolyKernelPair> local;  // over GF(p_i)[z]
  std::vector<PolyMatrix> local_a;
  std::vector<PolyMatrix> local_b;

  /// u(z) over Z/m is admissible iff every reduction is locally admissible.
  bool contains(const std::vector<Poly>& u) const;
  /// Glued witness x = sum e_i * lift(x_i); nullopt when not a member.
  std::optional<std::vector<Poly>> witness(const std::vector<Poly>& u) const;
  /// Generators of the glued module: e_i * lift(h) for each local Hermite
  /// column h.
  PolyMatrix glued_generators() const;
  /// Per-index quotient ranks (rank ker_pair_i, rank ker_f1_i, rank ker_bar_i).
  std::vector<DimTriple> rank_triples() const;
};

PolyCrtResult kernel_pair_poly_crt(u64 modulus, const PolyMatrix& a, const PolyMatrix& b);

/// zI - C for a square scalar matrix C over GF(p).
PolyMatrix pencil(const PolyRing& R, const ScalarMatrix& c);

PolyMatrix to_poly_matrix(const PolyRing& R, const ScalarMatrix& a);

void check_pair_shapes(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace kerpair
