#pragma once

// The kernel of a pair of linear maps f1 = A : R^q1 -> R^p, f2 = B : R^q2 -> R^p,
//
//   ker(A | B) = { u in R^q2 : A x + B u = 0 for some x in R^q1 },
//
// together with the joint kernel ker(A, B) of [A | B] and ker(A). The three
// fit into the short exact sequence
//
//   0 -> ker A --(x -> (x, 0))--> ker(A, B) --((x, u) -> u)--> ker(A | B) -> 0,
//
// which splits over fields and over GF(p)[z]. ExactSequenceWitness records the
// two maps and an explicit section.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "kerpair/submodule.hpp"

namespace kerpair {

enum class Method { Projection, Preimage, Quotient, Oracle, Crt, Poly };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name);

struct KernelPairResult {
  Submodule ker_f1;    // in R^q1
  Submodule ker_pair;  // in R^(q1+q2)
  Submodule ker_bar;   // ker(A | B) in R^q2
  Method method;
};

template <class T>
struct ExactSequenceWitness {
  Matrix<T> inclusion;   // (q1+q2) x q1, [I ; 0]
  Matrix<T> projection;  // q2 x (q1+q2), [0 | I]
  /// (q1+q2) x dim ker_bar; column k is (x_k, u_k) with u_k the k-th basis
  /// vector of ker_bar.
  Matrix<T> section;
};

/// Quotient map N -> N / Im(A) as a (p - rank A) x p matrix C with ker C = Im A.
struct QuotientMap {
  ScalarMatrix matrix;
};

class Automorphism {
 public:
  /// nullopt when `m` is singular or not square.
  static std::optional<Automorphism> make(const PrimeField& F, const ScalarMatrix& m);
  static Automorphism identity(const PrimeField& F, std::size_t n);
  /// Uniformly random invertible n x n matrix (rejection sampling).
  static Automorphism random(const PrimeField& F, std::size_t n, std::mt19937_64& rng);

  const ScalarMatrix& matrix() const noexcept { return m_; }
  const ScalarMatrix& inverse() const noexcept { return inv_; }
  std::size_t size() const noexcept { return m_.rows(); }

 private:
  Automorphism(ScalarMatrix m, ScalarMatrix inv) : m_(std::move(m)), inv_(std::move(inv)) {}
  ScalarMatrix m_;
  ScalarMatrix inv_;
};

/// Enumeration budget of the brute-force oracle.
inline constexpr std::uint64_t kOracleGuard = 1'000'000;

// Field path ----------------------------------------------------------------

std::pair<KernelPairResult, ExactSequenceWitness<u64>> kernel_pair_projection(const PrimeField& F, const ScalarMatrix& a,
                                                                               const ScalarMatrix& b);
KernelPairResult kernel_pair_preimage(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b);
std::pair<KernelPairResult, QuotientMap> kernel_pair_quotient(const PrimeField& F, const ScalarMatrix& a,
                                                              const ScalarMatrix& b);
QuotientMap quotient_map(const PrimeField& F, const ScalarMatrix& a);

/// Dispatch over the three field methods.
KernelPairResult kernel_pair_field(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b, Method method);

/// Section (x_u, u) for each ker_bar basis vector, with x_u the deterministic
/// solution of A x = -B u.
ExactSequenceWitness<u64> build_witness(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b,
                                        const Submodule& ker_bar);

/// ker(A | B) by enumerating every u in R^q2 and testing solvability of
/// A x = -B u. Works over GF(p) and Z/m; for square-free m solvability is
/// tested prime by prime, otherwise x is enumerated too. The collected set is
/// checked to be a submodule before it is presented.
Submodule kernel_pair_oracle(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b,
                             std::uint64_t guard = kOracleGuard);

// Checks ----------------------------------------------------------------------

struct SplittingReport {
  bool projection_kills_inclusion = false;  // pi2 o iota = 0
  bool section_is_right_inverse = false;    // pi2 o s = id on ker_bar
  bool independent = false;                 // im(iota) ∩ im(s) = 0
  bool spans = false;                       // im(iota) + im(s) = ker_pair
  bool ok() const noexcept { return projection_kills_inclusion && section_is_right_inverse && independent && spans; }
  std::string describe() const;
};

SplittingReport check_splitting(const PrimeField& F, const KernelPairResult& r, const ExactSequenceWitness<u64>& w);

/// |ker(A, B)| == |ker A| * |ker(A | B)| for finite rings.
bool cardinality_identity(const KernelPairResult& r);

struct IdentityReport {
  bool pushforward_bijection = false;  // u -> Psi2 u : ker(A | B Psi2) -> ker(A | B)
  bool right_automorphism = false;     // ker(A | B Psi2) = Psi2^-1 ker(A | B)
  bool domain_automorphism = false;    // ker(A Psi1 | B) = ker(A | B)
  bool codomain_automorphism = false;  // ker(Psi A | B) = ker(A | Psi^-1 B)
  bool ok() const noexcept {
    return pushforward_bijection && right_automorphism && domain_automorphism && codomain_automorphism;
  }
  std::string describe() const;
  /// Throws IdentityViolated naming the first failing clause.
  void require() const;
};

IdentityReport check_identities(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b,
                                const Automorphism& psi1, const Automorphism& psi2, const Automorphism& psi);

void check_pair_shapes(const ScalarMatrix& a, const ScalarMatrix& b);

}  // namespace kerpair
