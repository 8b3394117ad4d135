#include "kerpair/crt.hpp"

namespace kerpair {

u64 CrtDecomposition::glue(const std::vector<u64>& residues) const {
  if (residues.size() != primes.size()) throw Error(ErrorKind::DimensionMismatch, "one residue per prime expected");
  const Zmod Z(modulus);
  u64 x = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) x = Z.add(x, Z.mul(idempotents[i], residues[i] % primes[i]));
  return x;
}

CrtDecomposition idempotents(u64 m) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
  if (auto p = repeated_prime(m)) {
    throw Error(ErrorKind::NotSquareFree, std::to_string(m) + " is divisible by " + std::to_string(*p) + "^2");
  }
  CrtDecomposition out;
  out.modulus = m;
  out.primes = prime_factors(m);
  const Zmod Z(m);
  for (u64 p : out.primes) {
    const u64 cofactor = m / p;
    const u64 inv = *Zmod(p).inverse(cofactor % p);
    out.idempotents.push_back(Z.mul(cofactor, inv));
  }
  return out;
}

ScalarMatrix reduce_matrix(const CrtDecomposition& crt, const ScalarMatrix& a, std::size_t i) {
  return reduce_entries(a, Zmod(crt.primes.at(i)));
}

namespace {

CrtDecomposition require_square_free(const RingSpec& ring) {
  if (ring.kind != RingKind::ModRing) throw Error(ErrorKind::RingMismatch, "CRT needs a Z/m ring, got " + ring.describe());
  return idempotents(ring.modulus);
}

std::vector<ScalarMatrix> bases_of(const std::vector<KernelPairResult>& local, Submodule KernelPairResult::*member) {
  std::vector<ScalarMatrix> out;
  for (const auto& r : local) out.push_back((r.*member).field_basis().basis);
  return out;
}

}  // namespace

LocalGlobalResult kernel_pair_crt(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b,
                                  Method local_method) {
  check_pair_shapes(a, b);
  CrtDecomposition crt = require_square_free(ring);
  std::vector<KernelPairResult> local;
  std::vector<ExactSequenceWitness<u64>> witnesses;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PrimeField F(crt.primes[i]);
    const ScalarMatrix ai = reduce_matrix(crt, a, i);
    const ScalarMatrix bi = reduce_matrix(crt, b, i);
    auto [proj, witness] = kernel_pair_projection(F, ai, bi);
    local.push_back(local_method == Method::Projection ? std::move(proj) : kernel_pair_field(F, ai, bi, local_method));
    witnesses.push_back(std::move(witness));
  }
  Submodule glued_f1 = Submodule::mod_span(ring, a.cols(), bases_of(local, &KernelPairResult::ker_f1));
  Submodule glued_pair = Submodule::mod_span(ring, a.cols() + b.cols(), bases_of(local, &KernelPairResult::ker_pair));
  Submodule glued = Submodule::mod_span(ring, b.cols(), bases_of(local, &KernelPairResult::ker_bar));
  return LocalGlobalResult{std::move(crt),      std::move(local),      std::move(witnesses), std::move(glued_f1),
                           std::move(glued_pair), std::move(glued), local_method};
}

Submodule reduce_submodule(const Submodule& glued, std::size_t i) {
  const PrimeField F(glued.ring().primes.at(i));
  return Submodule::field_span(F, reduce_entries(mod_generators(glued), F));
}

std::optional<std::vector<u64>> crt_witness(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b,
                                            const std::vector<u64>& u) {
  check_pair_shapes(a, b);
  if (u.size() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "u has the wrong length");
  const CrtDecomposition crt = require_square_free(ring);
  std::vector<std::vector<u64>> local_x;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PrimeField F(crt.primes[i]);
    std::vector<u64> ui(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) ui[k] = F.reduce(u[k]);
    auto x = solve(F, reduce_matrix(crt, a, i), negate(F, apply(F, reduce_matrix(crt, b, i), ui)));
    if (!x) return std::nullopt;
    local_x.push_back(std::move(*x));
  }
  std::vector<u64> x(a.cols());
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<u64> residues;
    for (const auto& lx : local_x) residues.push_back(lx[k]);
    x[k] = crt.glue(residues);
  }
  return x;
}

void BaseChangeReport::require() const {
  if (holds) return;
  throw Error(ErrorKind::BaseChangeViolated, "mod " + std::to_string(prime) + ": reduced glued kernel has dim " +
                                                 std::to_string(reduced.rank()) + ", direct local kernel has dim " +
                                                 std::to_string(direct.rank()));
}

BaseChangeReport base_change_check(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b, std::size_t i) {
  const LocalGlobalResult g = kernel_pair_crt(ring, a, b, Method::Projection);
  if (i >= g.crt.size()) throw Error(ErrorKind::InvalidArgument, "prime index out of range");
  const PrimeField F(g.crt.primes[i]);
  Submodule reduced = reduce_submodule(g.glued, i);
  Submodule direct = kernel_pair_quotient(F, reduce_matrix(g.crt, a, i), reduce_matrix(g.crt, b, i)).first.ker_bar;
  const bool holds = reduced == direct;
  return BaseChangeReport{g.crt.primes[i], holds, std::move(reduced), std::move(direct)};
}

std::vector<DimTriple> quotient_form_crt(const RingSpec& ring, const ScalarMatrix& a, const ScalarMatrix& b) {
  check_pair_shapes(a, b);
  const CrtDecomposition crt = require_square_free(ring);
  std::vector<DimTriple> out;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    const PrimeField F(crt.primes[i]);
    const ScalarMatrix ai = reduce_matrix(crt, a, i);
    const ScalarMatrix bi = reduce_matrix(crt, b, i);
    DimTriple t;
    t.prime = crt.primes[i];
    t.ker_pair = hcat(ai, bi).cols() - rank(F, hcat(ai, bi));
    t.ker_f1 = ai.cols() - rank(F, ai);
    t.ker_bar = kernel_pair_preimage(F, ai, bi).ker_bar.rank();
    if (t.ker_bar + t.ker_f1 != t.ker_pair) {
      throw Error(ErrorKind::IdentityViolated, "mod " + std::to_string(t.prime) + ": dim ker(A|B) != dim ker(A,B) - dim ker A");
    }
    out.push_back(t);
  }
  return out;
}

Cardinality quotient_form_count(const std::vector<DimTriple>& dims) {
  Cardinality out;
  for (const auto& t : dims) {
    if (t.ker_bar > 0) out[t.prime] += t.ker_bar;
  }
  return out;
}

}  // namespace kerpair
