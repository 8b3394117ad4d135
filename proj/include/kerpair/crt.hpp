#pragma once

// Square-free Z/m = GF(p_1) x ... x GF(p_s): structural idempotents, reduction
// to each factor, kernel pairs computed factor by factor and glued back.

#include <optional>
#include <vector>

#include "kerpair/kernel_pair.hpp"

namespace kerpair {

struct CrtDecomposition {
  u64 modulus = 0;
  std::vector<u64> primes;       // ascending
  std::vector<u64> idempotents;  // e_i = 1 mod p_i, 0 mod p_j (j != i)

  std::size_t size() const noexcept { return primes.size(); }
  u64 project(u64 x, std::size_t i) const { return x % primes.at(i); }
  /// The unique x in [0, m) with x = residues[i] mod p_i, as sum e_i * r_i.
  u64 glue(const std::vector<u64>& residues) const;
};

/// Throws NotSquareFree naming the repeated prime.
CrtDecomposition idempotents(u64 m);

ScalarMatrix reduce_matrix(const CrtDecomposition& crt, const ScalarMatrix& a, std::size_t i);

struct LocalGlobalResult {
  CrtDecomposition crt;
  std::vector<KernelPairResult> local;
  std::vector<ExactSequenceWitness<u64>> local_witnesses;
  Submodule glued_f1;
  Submodule glued_pair;
  Submodule glued;  // ker(A | B) over Z/m
  Method local_method = Method::Projection;
};

/// A and B over square-free Z/m. The local kernels use `local_method` (any of
/// the three field methods); the section witnesses always come from the
/// projection construction.
LocalGlobalResult kernel_pair_crt(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b,
                                  Method local_method = Method::Projection);

/// Reduction mod p_i of a glued Z/m submodule, computed from its Z/m
/// generators sum e_j * lift(b) rather than by reading component i.
Submodule reduce_submodule(const Submodule& glued, std::size_t i);

/// x over Z/m with A x + B u = 0, assembled from per-prime solutions; nullopt
/// when u is not in ker(A | B).
std::optional<std::vector<u64>> crt_witness(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b,
                                            const std::vector<u64>& u);

struct BaseChangeReport {
  u64 prime = 0;
  bool holds = false;
  Submodule reduced;  // glued kernel reduced mod p_i
  Submodule direct;   // ker(pi_i(A) | pi_i(B)) over GF(p_i), quotient method
  /// Throws BaseChangeViolated with both presentations' dimensions.
  void require() const;
};

BaseChangeReport base_change_check(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b, std::size_t i);

struct DimTriple {
  u64 prime = 0;
  std::size_t ker_pair = 0;
  std::size_t ker_f1 = 0;
  std::size_t ker_bar = 0;
};

/// Per-prime (dim ker(A,B), dim ker A, dim ker(A|B)), where the last is
/// computed independently and must equal the difference of the first two.
std::vector<DimTriple> quotient_form_crt(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b);

/// |ker(A | B)| over Z/m from the per-prime triples, as a factored count.
Cardinality quotient_form_count(const std::vector<DimTriple>& dims);

}  // namespace kerpair
