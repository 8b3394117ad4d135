#pragma once

// Coefficient rings: Z/m, GF(p), and univariate polynomials over them.
//
// Residues are stored as std::uint64_t in [0, m). Polynomials are coefficient
// vectors, constant term first, with no trailing zeros; the zero polynomial is
// the empty vector. Ring objects are small immutable value types that carry the
// modulus; elements do not, so every arithmetic call goes through a ring.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kerpair/error.hpp"

namespace kerpair {

using u64 = std::uint64_t;

bool is_prime(u64 n) noexcept;
/// Distinct prime factors in ascending order (trial division).
std::vector<u64> prime_factors(u64 n);
/// Smallest prime whose square divides n, if any.
std::optional<u64> repeated_prime(u64 n);
u64 gcd(u64 a, u64 b) noexcept;

/// Arithmetic in Z/m for 1 <= m <= 2^62.
class Zmod {
 public:
  using value_type = u64;

  explicit Zmod(u64 modulus);

  u64 modulus() const noexcept { return m_; }
  u64 zero() const noexcept { return 0; }
  u64 one() const noexcept { return m_ == 1 ? 0 : 1; }

  u64 from_int(std::int64_t v) const noexcept;
  u64 reduce(u64 v) const noexcept { return v % m_; }
  bool contains(u64 v) const noexcept { return v < m_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + (m_ - b); }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : m_ - a; }
  u64 mul(u64 a, u64 b) const noexcept {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m_);
  }
  u64 pow(u64 a, u64 e) const noexcept;
  bool is_zero(u64 a) const noexcept { return a == 0; }

  std::optional<u64> inverse(u64 a) const noexcept;

  friend bool operator==(const Zmod&, const Zmod&) = default;

 private:
  u64 m_;
};

/// Z/p with p prime. Construction validates primality.
class PrimeField : public Zmod {
 public:
  explicit PrimeField(u64 p);

  /// Inverse of a nonzero element; throws NotInvertible on zero.
  u64 inv(u64 a) const;
};

class Poly {
 public:
  Poly() = default;
  /// Strips trailing zeros; coefficients must already be reduced.
  explicit Poly(std::vector<u64> coeffs);

  static Poly constant(u64 c) { return Poly(std::vector<u64>{c}); }
  static Poly monomial(u64 c, std::size_t k);

  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  int deg() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::optional<int> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return deg();
  }
  u64 coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }
  u64 leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const noexcept { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;
  /// Degree first, then coefficients from the top down.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  std::vector<u64> c_;
};

/// Polynomials over Z/m. Division needs an invertible leading coefficient,
/// which always holds when m is prime.
class PolyRing {
 public:
  using value_type = Poly;

  explicit PolyRing(Zmod coefficients) : k_(coefficients) {}

  const Zmod& coefficients() const noexcept { return k_; }
  u64 modulus() const noexcept { return k_.modulus(); }
  bool is_field_coefficients() const { return is_prime(k_.modulus()); }

  Poly zero() const { return {}; }
  Poly one() const { return Poly::constant(k_.one()); }
  Poly z() const { return Poly::monomial(k_.one(), 1); }
  Poly constant(u64 c) const { return Poly::constant(k_.reduce(c)); }
  Poly from_coeffs(std::vector<u64> coeffs) const;

  bool contains(const Poly& a) const noexcept;
  bool is_zero(const Poly& a) const noexcept { return a.is_zero(); }

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, u64 c) const;
  Poly shift(const Poly& a, std::size_t k) const;

  /// Quotient and remainder; throws NotInvertible if lead(b) is not a unit.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly monic(const Poly& a) const;
  /// Monic gcd (zero if both are zero). Coefficients must form a field.
  Poly gcd(const Poly& a, const Poly& b) const;
  /// Coefficientwise reduction into another coefficient ring.
  Poly reduce_into(const Poly& a, const Zmod& target) const;
  u64 evaluate(const Poly& a, u64 x) const;

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  Zmod k_;
};

// ---------------------------------------------------------------------------
// Runtime ring descriptions, used where the ring is only known at run time
// (file input, CLI dispatch).

enum class RingKind { PrimeField, ModRing, PolyRing };

struct RingSpec {
  RingKind kind = RingKind::PrimeField;
  u64 modulus = 2;
  /// Distinct prime factors of the modulus, ascending.
  std::vector<u64> primes;
  /// ModRing only: true iff the modulus is square-free.
  bool decomposable = true;

  bool is_finite() const noexcept { return kind != RingKind::PolyRing; }
  std::string describe() const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

RingSpec ring_make(RingKind kind, u64 parameter);

/// GF(p) view of a PrimeField spec; throws NotAField otherwise.
PrimeField field_of(const RingSpec& ring);
Zmod zmod_of(const RingSpec& ring);
/// GF(p)[z] view of a PolyRing spec; throws RingMismatch otherwise.
PolyRing poly_ring_of(const RingSpec& ring);

using Element = std::variant<u64, Poly>;

bool belongs(const Element& a, const RingSpec& ring);
/// Canonical representative: residues reduced, trailing zeros stripped.
Element canonical(const Element& a, const RingSpec& ring);

Element elem_add(const Element& a, const Element& b, const RingSpec& ring);
Element elem_mul(const Element& a, const Element& b, const RingSpec& ring);
Element elem_neg(const Element& a, const RingSpec& ring);

struct NotInvertible {
  /// gcd(a, m) for residues; for polynomials the (monic) gcd is meaningless, so
  /// this holds the degree of the offending element, or 0 for zero.
  u64 witness = 0;
};

std::variant<Element, NotInvertible> elem_inverse(const Element& a, const RingSpec& ring);

}  // namespace kerpair
