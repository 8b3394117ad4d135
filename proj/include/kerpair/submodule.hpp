#pragma once

// Canonical presentations of submodules of free modules R^q.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "kerpair/field_linalg.hpp"
#include "kerpair/hermite.hpp"

namespace kerpair {

/// Reduced column echelon basis over GF(p).
struct FieldBasis {
  ScalarMatrix basis;  // q x dim
  std::size_t dim() const noexcept { return basis.cols(); }
  friend bool operator==(const FieldBasis&, const FieldBasis&) = default;
};

/// Over square-free Z/m: one field basis per prime factor, in ascending prime
/// order. Component i is the reduction of the submodule modulo p_i.
struct ModComponents {
  std::vector<FieldBasis> components;
  friend bool operator==(const ModComponents&, const ModComponents&) = default;
};

/// Column Hermite form over GF(p)[z].
struct PolyBasis {
  PolyMatrix basis;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const noexcept { return pivot_rows.size(); }
  friend bool operator==(const PolyBasis&, const PolyBasis&) = default;
};

/// Sorted list of every element; only for Z/m with m not square-free, where
/// no product-of-fields presentation exists.
struct EnumeratedSet {
  std::vector<std::vector<u64>> elements;
  friend bool operator==(const EnumeratedSet&, const EnumeratedSet&) = default;
};

using Presentation = std::variant<FieldBasis, ModComponents, PolyBasis, EnumeratedSet>;

/// Prime -> exponent; the cardinality of a finite submodule as a factored
/// integer so products of counts never overflow.
using Cardinality = std::map<u64, std::size_t>;

Cardinality multiply(const Cardinality& a, const Cardinality& b);

class Submodule {
 public:
  /// Span of the columns of `generators` (q x n) over GF(p).
  static Submodule field_span(const PrimeField& F, const ScalarMatrix& generators);
  /// Over square-free Z/m, from per-prime spans (already reduced mod p_i).
  static Submodule mod_span(const RingSpec& ring, std::size_t ambient, const std::vector<ScalarMatrix>& local_generators);
  /// Span of the columns of `generators` over GF(p)[z].
  static Submodule poly_span(const PolyRing& R, const PolyMatrix& generators);
  static Submodule enumerated(const RingSpec& ring, std::size_t ambient, std::vector<std::vector<u64>> elements);

  static Submodule zero(const RingSpec& ring, std::size_t ambient);
  static Submodule full(const RingSpec& ring, std::size_t ambient);

  const RingSpec& ring() const noexcept { return ring_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const Presentation& presentation() const noexcept { return pres_; }

  const FieldBasis& field_basis() const;
  const ModComponents& mod_components() const;
  const PolyBasis& poly_basis() const;

  /// Dimension over a field, rank over GF(p)[z]; per-prime dimensions are
  /// available through `local_dims` for Z/m.
  std::size_t rank() const;
  std::vector<std::size_t> local_dims() const;
  bool is_zero() const;
  bool is_full() const;

  /// Finite rings only.
  Cardinality cardinality() const;

  friend bool operator==(const Submodule&, const Submodule&) = default;

 private:
  Submodule(RingSpec ring, std::size_t ambient, Presentation pres)
      : ring_(std::move(ring)), ambient_(ambient), pres_(std::move(pres)) {}

  RingSpec ring_;
  std::size_t ambient_ = 0;
  Presentation pres_;
};

/// ker A and Im A over GF(p), canonically presented.
Submodule nullspace(const PrimeField& F, const ScalarMatrix& a);
Submodule image(const PrimeField& F, const ScalarMatrix& a);

/// Throws AmbientMismatch (or RingMismatch) when the two cannot be compared.
bool submodule_equal(const Submodule& s, const Submodule& t);

/// Membership with coordinates. Over a field: w.r.t. the echelon basis. Over
/// Z/m: w.r.t. the glued generators e_i * lift(b), listed prime by prime (see
/// `mod_generators`). For EnumeratedSet presentations the coordinate list is
/// empty.
std::optional<std::vector<u64>> submodule_member(const Submodule& s, const std::vector<u64>& v);
std::optional<std::vector<Poly>> submodule_member(const Submodule& s, const std::vector<Poly>& v);

/// Generators over Z/m of a ModComponents submodule: e_i * lift(b) for each
/// basis vector b of component i.
ScalarMatrix mod_generators(const Submodule& s);

/// Every element of a finite submodule, in canonical sorted order. Throws
/// OracleTooLarge beyond `limit` elements.
std::vector<std::vector<u64>> enumerate_elements(const Submodule& s, std::size_t limit = 1'000'000);

/// Image of a field submodule under a linear map (square, ambient-preserving
/// or not), re-canonicalized.
Submodule push_forward(const PrimeField& F, const ScalarMatrix& map, const Submodule& s);

}  // namespace kerpair
