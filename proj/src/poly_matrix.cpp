#include "kerpair/poly_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace kerpair {

void check_pair_shapes(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "A has " + std::to_string(a.rows()) + " rows but B has " +
                                                  std::to_string(b.rows()));
  }
}

PolyMatrix to_poly_matrix(const PolyRing& R, const ScalarMatrix& a) {
  PolyMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = R.constant(a(i, j));
  return out;
}

PolyMatrix pencil(const PolyRing& R, const ScalarMatrix& c) {
  if (c.rows() != c.cols()) throw Error(ErrorKind::DimensionMismatch, "pencil needs a square matrix");
  PolyMatrix out = negate(R, to_poly_matrix(R, c));
  for (std::size_t i = 0; i < c.rows(); ++i) out(i, i) = R.add(out(i, i), R.z());
  return out;
}

ScalarMatrix linearization(const PolyRing& R, const PolyMatrix& a, std::size_t max_degree_d) {
  const std::size_t d = static_cast<std::size_t>(std::max(0, max_degree(a)));
  const std::size_t D = max_degree_d;
  const std::size_t stripe_rows = d + D + 1;
  ScalarMatrix m(a.rows() * stripe_rows, a.cols() * (D + 1), R.coefficients().zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& coeffs = a(i, j).coeffs();
      for (std::size_t k = 0; k <= D; ++k)
        for (std::size_t e = 0; e < coeffs.size(); ++e) m(i * stripe_rows + e + k, j * (D + 1) + k) = coeffs[e];
    }
  return m;
}

std::vector<Poly> unstripe(const PolyRing& R, const std::vector<u64>& w, std::size_t q, std::size_t max_degree_d) {
  const std::size_t D = max_degree_d;
  if (w.size() != q * (D + 1)) throw Error(ErrorKind::DimensionMismatch, "striped vector has the wrong length");
  std::vector<Poly> v(q);
  for (std::size_t j = 0; j < q; ++j) {
    v[j] = R.from_coeffs(std::vector<u64>(w.begin() + static_cast<std::ptrdiff_t>(j * (D + 1)),
                                          w.begin() + static_cast<std::ptrdiff_t>((j + 1) * (D + 1))));
  }
  return v;
}

std::vector<std::vector<Poly>> bounded_kernel(const PolyRing& R, const PolyMatrix& a, std::size_t max_degree_d) {
  const PrimeField F(R.modulus());
  const ScalarMatrix ns = nullspace_basis(F, linearization(R, a, max_degree_d));
  std::vector<std::vector<Poly>> out;
  for (std::size_t k = 0; k < ns.cols(); ++k) out.push_back(unstripe(R, ns.col(k), a.cols(), max_degree_d));
  return out;
}

namespace {

int vector_degree(const std::vector<Poly>& v) {
  int d = -1;
  for (const auto& e : v) d = std::max(d, e.deg());
  return d;
}

bool degree_then_lex(const std::vector<Poly>& x, const std::vector<Poly>& y) {
  const int dx = vector_degree(x), dy = vector_degree(y);
  if (dx != dy) return dx < dy;
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

PolyMatrix columns_to_matrix(std::size_t height, const std::vector<std::vector<Poly>>& cols) {
  return PolyMatrix::from_columns(height, cols);
}

}  // namespace

PolyKernelBasis poly_kernel(const PolyRing& R, const PolyMatrix& a) {
  const std::size_t q = a.cols();
  const std::size_t target = q - rational_rank(R, a);
  const std::size_t d = static_cast<std::size_t>(std::max(0, max_degree(a)));
  const std::size_t bound = std::min(a.rows(), q) * d;

  std::vector<std::vector<Poly>> chosen;
  for (std::size_t D = 0; D <= bound && chosen.size() < target; ++D) {
    auto candidates = bounded_kernel(R, a, D);
    std::sort(candidates.begin(), candidates.end(), degree_then_lex);
    for (auto& v : candidates) {
      if (chosen.size() == target) break;
      chosen.push_back(v);
      if (rational_rank(R, columns_to_matrix(q, chosen)) < chosen.size()) chosen.pop_back();
    }
  }
  if (chosen.size() != target) {
    throw std::logic_error("poly_kernel: degree bound reached with " + std::to_string(chosen.size()) + " of " +
                           std::to_string(target) + " kernel vectors");
  }

  PolyKernelBasis out;
  for (const auto& v : chosen) out.minimal_degrees.push_back(vector_degree(v));
  HermiteForm h = hermite_form(R, columns_to_matrix(q, chosen));
  out.basis = std::move(h.basis);
  out.pivot_rows = std::move(h.pivot_rows);
  out.column_degrees = column_degrees(out.basis);
  return out;
}

PolyKernelPair kernel_pair_poly(const PolyRing& R, const PolyMatrix& a, const PolyMatrix& b) {
  check_pair_shapes(a, b);
  const std::size_t q1 = a.cols();
  const std::size_t q2 = b.cols();
  PolyKernelBasis pair = poly_kernel(R, hcat(a, b));
  PolyKernelBasis f1 = poly_kernel(R, a);

  // The projection (x, u) -> u is onto ker(A | B), so the projected basis
  // generates it and only needs canonicalizing.
  const PolyMatrix projected = pair.basis.block(q1, 0, q2, pair.basis.cols());
  HermiteForm bar = hermite_form(R, projected);
  const std::size_t rbar = bar.rank();

  // P U = [H | 0], so (pair basis) * U[:, k] is a ker_pair vector over H[:, k].
  const PolyMatrix section = multiply(R, pair.basis, bar.transform.block(0, 0, bar.transform.rows(), rbar));

  auto make = [&](const PolyMatrix& basis) { return Submodule::poly_span(R, basis); };
  KernelPairResult result{make(f1.basis), make(pair.basis), make(bar.basis), Method::Poly};
  ExactSequenceWitness<Poly> witness{inclusion_first(R, q1, q2), projection_second(R, q1, q2), section};
  return PolyKernelPair{std::move(result), std::move(witness), std::move(pair), std::move(bar)};
}

std::optional<std::vector<Poly>> poly_member(const PolyRing& R, const PolyMatrix& a, const PolyMatrix& b,
                                             const PolyKernelPair& kp, const std::vector<Poly>& u) {
  check_pair_shapes(a, b);
  if (u.size() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "u has " + std::to_string(u.size()) + " entries, B has " +
                                                  std::to_string(b.cols()) + " columns");
  }
  auto coords = hermite_divide(R, kp.bar_form, u);
  if (!coords) return std::nullopt;
  const std::vector<Poly> joint = apply(R, kp.witness.section, *coords);
  std::vector<Poly> x(joint.begin(), joint.begin() + static_cast<std::ptrdiff_t>(a.cols()));
  if (!is_zero(R, add(R, apply(R, a, x), apply(R, b, u)))) {
    throw Error(ErrorKind::ConsistencyViolated, "reconstructed witness does not satisfy A x + B u = 0");
  }
  return x;
}

SplittingReport check_splitting(const PolyRing& R, const KernelPairResult& r, const ExactSequenceWitness<Poly>& w) {
  SplittingReport rep;
  const PolyMatrix& bar = r.ker_bar.poly_basis().basis;
  const PolyMatrix included = multiply(R, w.inclusion, r.ker_f1.poly_basis().basis);
  rep.projection_kills_inclusion = is_zero(R, multiply(R, w.projection, included));
  rep.section_is_right_inverse = w.section.cols() == bar.cols() && multiply(R, w.projection, w.section) == bar;
  const PolyMatrix combined = hcat(included, w.section);
  rep.independent = rational_rank(R, combined) == combined.cols();
  rep.spans = Submodule::poly_span(R, combined) == r.ker_pair;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

PolyMatrix reduce_poly_matrix(const PolyMatrix& a, const Zmod& target) {
  PolyMatrix out(a.rows(), a.cols());
  const PolyRing any(target);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = any.reduce_into(a(i, j), target);
  return out;
}

std::vector<Poly> reduce_poly_vector(const std::vector<Poly>& v, const Zmod& target) {
  const PolyRing any(target);
  std::vector<Poly> out;
  for (const auto& e : v) out.push_back(any.reduce_into(e, target));
  return out;
}

// sum_i e_i * lift(parts[i]), coefficientwise in Z/m.
Poly glue_poly(const CrtDecomposition& crt, const std::vector<Poly>& parts) {
  std::size_t len = 0;
  for (const auto& p : parts) len = std::max(len, p.coeffs().size());
  std::vector<u64> coeffs(len, 0);
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<u64> residues;
    for (const auto& p : parts) residues.push_back(p.coeff(k));
    coeffs[k] = crt.glue(residues);
  }
  return Poly(std::move(coeffs));
}

}  // namespace

PolyCrtResult kernel_pair_poly_crt(u64 modulus, const PolyMatrix& a, const PolyMatrix& b) {
  check_pair_shapes(a, b);
  PolyCrtResult out;
  out.crt = idempotents(modulus);
  out.global_a = a;
  out.global_b = b;
  const PolyRing global{Zmod(modulus)};
  for (const auto* m : {&a, &b})
    for (const auto& e : m->data()) {
      if (!global.contains(e)) throw Error(ErrorKind::RingMismatch, "entry outside (Z/" + std::to_string(modulus) + ")[z]");
    }
  for (u64 p : out.crt.primes) {
    const PrimeField F(p);
    const PolyRing R(F);
    out.local_a.push_back(reduce_poly_matrix(a, F));
    out.local_b.push_back(reduce_poly_matrix(b, F));
    out.local.push_back(kernel_pair_poly(R, out.local_a.back(), out.local_b.back()));
  }
  return out;
}

bool PolyCrtResult::contains(const std::vector<Poly>& u) const {
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PrimeField F(crt.primes[i]);
    if (!hermite_divide(PolyRing(F), local[i].bar_form, reduce_poly_vector(u, F))) return false;
  }
  return true;
}

std::optional<std::vector<Poly>> PolyCrtResult::witness(const std::vector<Poly>& u) const {
  std::vector<std::vector<Poly>> local_x;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PrimeField F(crt.primes[i]);
    auto x = poly_member(PolyRing(F), local_a[i], local_b[i], local[i], reduce_poly_vector(u, F));
    if (!x) return std::nullopt;
    local_x.push_back(std::move(*x));
  }
  const std::size_t q1 = local_a.front().cols();
  std::vector<Poly> x(q1);
  for (std::size_t k = 0; k < q1; ++k) {
    std::vector<Poly> parts;
    for (const auto& lx : local_x) parts.push_back(lx[k]);
    x[k] = glue_poly(crt, parts);
  }
  const PolyRing global{Zmod(crt.modulus)};
  if (!is_zero(global, add(global, apply(global, global_a, x), apply(global, global_b, u)))) {
    throw Error(ErrorKind::ConsistencyViolated, "glued witness does not satisfy A x + B u = 0 over Z/m");
  }
  return x;
}

PolyMatrix PolyCrtResult::glued_generators() const {
  const PolyRing global{Zmod(crt.modulus)};
  std::vector<std::vector<Poly>> cols;
  const std::size_t q2 = local_b.front().cols();
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PolyMatrix& h = local[i].bar_form.basis;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      std::vector<Poly> col = h.col(j);
      for (auto& e : col) e = global.scale(e, crt.idempotents[i]);
      cols.push_back(std::move(col));
    }
  }
  return PolyMatrix::from_columns(q2, cols);
}

std::vector<DimTriple> PolyCrtResult::rank_triples() const {
  std::vector<DimTriple> out;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    out.push_back(DimTriple{crt.primes[i], local[i].result.ker_pair.rank(), local[i].result.ker_f1.rank(),
                            local[i].result.ker_bar.rank()});
  }
  return out;
}

}  // namespace kerpair
