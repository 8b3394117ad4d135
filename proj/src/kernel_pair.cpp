#include "kerpair/kernel_pair.hpp"

#include <algorithm>
#include <sstream>

namespace kerpair {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Projection: return "projection";
    case Method::Preimage: return "preimage";
    case Method::Quotient: return "quotient";
    case Method::Oracle: return "oracle";
    case Method::Crt: return "crt";
    case Method::Poly: return "poly";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::Projection, Method::Preimage, Method::Quotient, Method::Oracle, Method::Crt, Method::Poly}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void check_pair_shapes(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "A has " + std::to_string(a.rows()) + " rows but B has " +
                                                  std::to_string(b.rows()));
  }
}

// ---------------------------------------------------------------------------

std::optional<Automorphism> Automorphism::make(const PrimeField& F, const ScalarMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto inv = kerpair::inverse(F, m);
  if (!inv) return std::nullopt;
  return Automorphism(m, std::move(*inv));
}

Automorphism Automorphism::identity(const PrimeField& F, std::size_t n) {
  return Automorphism(kerpair::identity(F, n), kerpair::identity(F, n));
}

Automorphism Automorphism::random(const PrimeField& F, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, F.modulus() - 1);
  while (true) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    if (auto a = make(F, m)) return *a;
  }
}

// ---------------------------------------------------------------------------

ExactSequenceWitness<u64> build_witness(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b,
                                        const Submodule& ker_bar) {
  const std::size_t q1 = a.cols();
  const std::size_t q2 = b.cols();
  const ScalarMatrix& basis = ker_bar.field_basis().basis;
  ScalarMatrix section(q1 + q2, basis.cols());
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    const std::vector<u64> u = basis.col(k);
    auto x = solve(F, a, negate(F, apply(F, b, u)));
    if (!x) throw Error(ErrorKind::IdentityViolated, "ker_bar basis vector without a preimage");
    for (std::size_t i = 0; i < q1; ++i) section(i, k) = (*x)[i];
    for (std::size_t i = 0; i < q2; ++i) section(q1 + i, k) = u[i];
  }
  return {inclusion_first(F, q1, q2), projection_second(F, q1, q2), std::move(section)};
}

std::pair<KernelPairResult, ExactSequenceWitness<u64>> kernel_pair_projection(const PrimeField& F, const ScalarMatrix& a,
                                                                               const ScalarMatrix& b) {
  check_pair_shapes(a, b);
  const std::size_t q1 = a.cols();
  const std::size_t q2 = b.cols();
  Submodule ker_pair = Submodule::field_span(F, nullspace_basis(F, hcat(a, b)));
  Submodule ker_f1 = Submodule::field_span(F, nullspace_basis(F, a));
  // pi2 applied to the ker_pair basis spans ker(A | B), possibly with
  // dependencies; field_span re-canonicalizes.
  const ScalarMatrix projected = multiply(F, projection_second(F, q1, q2), ker_pair.field_basis().basis);
  Submodule ker_bar = Submodule::field_span(F, projected);
  auto witness = build_witness(F, a, b, ker_bar);
  return {KernelPairResult{std::move(ker_f1), std::move(ker_pair), std::move(ker_bar), Method::Projection},
          std::move(witness)};
}

KernelPairResult kernel_pair_preimage(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b) {
  check_pair_shapes(a, b);
  // u in ker(A | B) iff B u is a combination of a basis M of Im A:
  // [M | B] (lambda, u) = 0, then keep the u part.
  const ScalarMatrix image_basis = column_echelon(F, a);
  const ScalarMatrix joint = nullspace_basis(F, hcat(image_basis, b));
  const ScalarMatrix u_part = joint.block(image_basis.cols(), 0, b.cols(), joint.cols());
  return KernelPairResult{Submodule::field_span(F, nullspace_basis(F, a)),
                          Submodule::field_span(F, nullspace_basis(F, hcat(a, b))), Submodule::field_span(F, u_part),
                          Method::Preimage};
}

QuotientMap quotient_map(const PrimeField& F, const ScalarMatrix& a) {
  // Rows of the RREF transform past the rank annihilate A and have full rank.
  const RrefResult rr = rref(F, a);
  return QuotientMap{rr.transform.block(rr.rank, 0, a.rows() - rr.rank, a.rows())};
}

std::pair<KernelPairResult, QuotientMap> kernel_pair_quotient(const PrimeField& F, const ScalarMatrix& a,
                                                              const ScalarMatrix& b) {
  check_pair_shapes(a, b);
  QuotientMap c = quotient_map(F, a);
  Submodule ker_bar = Submodule::field_span(F, nullspace_basis(F, multiply(F, c.matrix, b)));
  return {KernelPairResult{Submodule::field_span(F, nullspace_basis(F, a)),
                           Submodule::field_span(F, nullspace_basis(F, hcat(a, b))), std::move(ker_bar),
                           Method::Quotient},
          std::move(c)};
}

KernelPairResult kernel_pair_field(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b, Method method) {
  switch (method) {
    case Method::Projection: return kernel_pair_projection(F, a, b).first;
    case Method::Preimage: return kernel_pair_preimage(F, a, b);
    case Method::Quotient: return kernel_pair_quotient(F, a, b).first;
    case Method::Oracle: {
      const RingSpec ring = ring_make(RingKind::PrimeField, F.modulus());
      return KernelPairResult{Submodule::field_span(F, nullspace_basis(F, a)),
                              Submodule::field_span(F, nullspace_basis(F, hcat(a, b))), kernel_pair_oracle(ring, a, b),
                              Method::Oracle};
    }
    default: break;
  }
  throw Error(ErrorKind::MethodUnavailable, std::string(to_string(method)) + " is not a field method");
}

// ---------------------------------------------------------------------------

namespace {

double power(u64 base, std::size_t exp) {
  double r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= static_cast<double>(base);
  return r;
}

// Odometer increment over (Z/m)^n; false once it wraps to zero.
bool next_vector(std::vector<u64>& v, u64 m) {
  for (auto& x : v) {
    if (++x < m) return true;
    x = 0;
  }
  return false;
}

bool solvable_mod_prime(const ScalarMatrix& a, const ScalarMatrix& b, const std::vector<u64>& u, u64 p) {
  const PrimeField F(p);
  const ScalarMatrix ap = reduce_entries(a, F);
  const ScalarMatrix bp = reduce_entries(b, F);
  std::vector<u64> up(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) up[i] = F.reduce(u[i]);
  return solve(F, ap, negate(F, apply(F, bp, up))).has_value();
}

// Exhaustive search for x; only used when Z/m is not a product of fields.
bool solvable_by_search(const Zmod& Z, const ScalarMatrix& a, const std::vector<u64>& target) {
  std::vector<u64> x(a.cols(), 0);
  do {
    if (apply(Z, a, x) == target) return true;
  } while (next_vector(x, Z.modulus()));
  return false;
}

}  // namespace

Submodule kernel_pair_oracle(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b, std::uint64_t guard) {
  check_pair_shapes(a, b);
  if (!ring.is_finite()) throw Error(ErrorKind::NotFinite, "the oracle cannot enumerate " + ring.describe());
  const std::size_t q2 = b.cols();
  const Zmod Z(ring.modulus);
  const bool by_search = ring.kind == RingKind::ModRing && !ring.decomposable;
  const double work = power(ring.modulus, q2) * (by_search ? power(ring.modulus, a.cols()) : 1.0);
  if (work > static_cast<double>(guard)) {
    throw Error(ErrorKind::OracleTooLarge, "enumeration of " + std::to_string(static_cast<long double>(work)) +
                                               " cases exceeds the guard of " + std::to_string(guard));
  }

  std::vector<std::vector<u64>> members;
  std::vector<u64> u(q2, 0);
  do {
    bool ok = true;
    if (by_search) {
      ok = solvable_by_search(Z, a, negate(Z, apply(Z, b, u)));
    } else {
      for (u64 p : ring.primes) {
        if (!solvable_mod_prime(a, b, u, p)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) members.push_back(u);
  } while (next_vector(u, ring.modulus));

  if (by_search) {
    // No product-of-fields structure: check additive closure directly (the
    // set contains 0 and is finite, so this makes it a submodule).
    std::sort(members.begin(), members.end());
    const std::size_t n = members.size();
    const std::size_t stride = n * n > 10'000'000 ? std::max<std::size_t>(1, n / 64) : 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; j += stride) {
        if (!std::binary_search(members.begin(), members.end(), add(Z, members[i], members[j]))) {
          throw Error(ErrorKind::IdentityViolated, "oracle set is not closed under addition");
        }
      }
    return Submodule::enumerated(ring, q2, std::move(members));
  }

  const ScalarMatrix gens = ScalarMatrix::from_columns(q2, members);
  Submodule s = ring.kind == RingKind::PrimeField
                    ? Submodule::field_span(PrimeField(ring.modulus), gens)
                    : Submodule::mod_span(ring, q2, std::vector<ScalarMatrix>(ring.primes.size(), gens));
  // The span contains the set; equal counts make the set the whole span.
  const Cardinality expected = s.cardinality();
  double count = 1;
  for (const auto& [p, e] : expected) count *= power(p, e);
  if (count != static_cast<double>(members.size())) {
    throw Error(ErrorKind::IdentityViolated, "oracle set of size " + std::to_string(members.size()) +
                                                 " is not closed under the module operations");
  }
  return s;
}

// ---------------------------------------------------------------------------

std::string SplittingReport::describe() const {
  std::ostringstream os;
  os << "pi2*iota=0:" << (projection_kills_inclusion ? "ok" : "FAIL")
     << " pi2*s=id:" << (section_is_right_inverse ? "ok" : "FAIL") << " independent:" << (independent ? "ok" : "FAIL")
     << " spans:" << (spans ? "ok" : "FAIL");
  return os.str();
}

SplittingReport check_splitting(const PrimeField& F, const KernelPairResult& r, const ExactSequenceWitness<u64>& w) {
  SplittingReport rep;
  const ScalarMatrix& bar = r.ker_bar.field_basis().basis;
  const ScalarMatrix included = multiply(F, w.inclusion, r.ker_f1.field_basis().basis);
  rep.projection_kills_inclusion = is_zero(F, multiply(F, w.projection, included));
  rep.section_is_right_inverse =
      w.section.cols() == bar.cols() && multiply(F, w.projection, w.section) == bar;
  const ScalarMatrix combined = hcat(included, w.section);
  rep.independent = rank(F, combined) == combined.cols();
  rep.spans = Submodule::field_span(F, combined) == r.ker_pair;
  return rep;
}

bool cardinality_identity(const KernelPairResult& r) {
  return r.ker_pair.cardinality() == multiply(r.ker_f1.cardinality(), r.ker_bar.cardinality());
}

// ---------------------------------------------------------------------------

std::string IdentityReport::describe() const {
  std::ostringstream os;
  os << "(vi) pushforward:" << (pushforward_bijection ? "ok" : "FAIL")
     << " (vii) B*Psi2:" << (right_automorphism ? "ok" : "FAIL")
     << " (viii) A*Psi1:" << (domain_automorphism ? "ok" : "FAIL")
     << " (ix) Psi*A:" << (codomain_automorphism ? "ok" : "FAIL");
  return os.str();
}

void IdentityReport::require() const {
  if (!pushforward_bijection) throw Error(ErrorKind::IdentityViolated, "(vi) Psi2 does not map ker(A|B Psi2) onto ker(A|B)");
  if (!right_automorphism) throw Error(ErrorKind::IdentityViolated, "(vii) ker(A|B Psi2) != Psi2^-1 ker(A|B)");
  if (!domain_automorphism) throw Error(ErrorKind::IdentityViolated, "(viii) ker(A Psi1|B) != ker(A|B)");
  if (!codomain_automorphism) throw Error(ErrorKind::IdentityViolated, "(ix) ker(Psi A|B) != ker(A|Psi^-1 B)");
}

IdentityReport check_identities(const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b,
                                const Automorphism& psi1, const Automorphism& psi2, const Automorphism& psi) {
  check_pair_shapes(a, b);
  if (psi1.size() != a.cols() || psi2.size() != b.cols() || psi.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "automorphism sizes do not match q1, q2, p");
  }
  auto bar = [&](const ScalarMatrix& x, const ScalarMatrix& y) { return kernel_pair_projection(F, x, y).first.ker_bar; };

  const Submodule base = bar(a, b);
  const Submodule twisted = bar(a, multiply(F, b, psi2.matrix()));

  IdentityReport rep;
  const Submodule pushed = push_forward(F, psi2.matrix(), twisted);
  rep.pushforward_bijection = pushed == base && pushed.rank() == twisted.rank();
  rep.right_automorphism = twisted == push_forward(F, psi2.inverse(), base);
  rep.domain_automorphism = bar(multiply(F, a, psi1.matrix()), b) == base;
  rep.codomain_automorphism = bar(multiply(F, psi.matrix(), a), b) == bar(a, multiply(F, psi.inverse(), b));
  return rep;
}

}  // namespace kerpair
