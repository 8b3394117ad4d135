#include "kerpair/submodule.hpp"

#include <algorithm>

#include "kerpair/crt.hpp"

namespace kerpair {

Cardinality multiply(const Cardinality& a, const Cardinality& b) {
  Cardinality out = a;
  for (const auto& [p, e] : b) out[p] += e;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

namespace {

Cardinality factor_count(u64 n) {
  Cardinality out;
  for (u64 p : prime_factors(n)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  return out;
}

void require_same_ambient(const Submodule& s, std::size_t len) {
  if (s.ambient_dim() != len) {
    throw Error(ErrorKind::AmbientMismatch, "vector of length " + std::to_string(len) + " in ambient of dimension " +
                                                std::to_string(s.ambient_dim()));
  }
}

}  // namespace

Submodule Submodule::field_span(const PrimeField& F, const ScalarMatrix& generators) {
  return Submodule(ring_make(RingKind::PrimeField, F.modulus()), generators.rows(),
                   FieldBasis{column_echelon(F, generators)});
}

Submodule Submodule::mod_span(const RingSpec& ring, std::size_t ambient,
                              const std::vector<ScalarMatrix>& local_generators) {
  if (ring.kind != RingKind::ModRing) throw Error(ErrorKind::RingMismatch, "mod_span needs a Z/m ring");
  if (!ring.decomposable) {
    throw Error(ErrorKind::NotSquareFree, ring.describe() + " is not square-free");
  }
  if (local_generators.size() != ring.primes.size()) {
    throw Error(ErrorKind::DimensionMismatch, "one generator block per prime factor expected");
  }
  ModComponents comps;
  for (std::size_t i = 0; i < ring.primes.size(); ++i) {
    if (local_generators[i].rows() != ambient) throw Error(ErrorKind::AmbientMismatch, "local generators have wrong height");
    PrimeField F(ring.primes[i]);
    comps.components.push_back(FieldBasis{column_echelon(F, reduce_entries(local_generators[i], F))});
  }
  return Submodule(ring, ambient, std::move(comps));
}

Submodule Submodule::poly_span(const PolyRing& R, const PolyMatrix& generators) {
  HermiteForm h = hermite_form(R, generators);
  return Submodule(ring_make(RingKind::PolyRing, R.modulus()), generators.rows(),
                   PolyBasis{std::move(h.basis), std::move(h.pivot_rows)});
}

Submodule Submodule::enumerated(const RingSpec& ring, std::size_t ambient, std::vector<std::vector<u64>> elements) {
  if (ring.kind != RingKind::ModRing) throw Error(ErrorKind::RingMismatch, "enumerated presentation is for Z/m only");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return Submodule(ring, ambient, EnumeratedSet{std::move(elements)});
}

Submodule Submodule::zero(const RingSpec& ring, std::size_t ambient) {
  switch (ring.kind) {
    case RingKind::PrimeField: return field_span(field_of(ring), ScalarMatrix(ambient, 0));
    case RingKind::PolyRing: return poly_span(poly_ring_of(ring), PolyMatrix(ambient, 0));
    case RingKind::ModRing:
      if (!ring.decomposable) return enumerated(ring, ambient, {std::vector<u64>(ambient, 0)});
      return mod_span(ring, ambient, std::vector<ScalarMatrix>(ring.primes.size(), ScalarMatrix(ambient, 0)));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ring kind");
}

Submodule Submodule::full(const RingSpec& ring, std::size_t ambient) {
  switch (ring.kind) {
    case RingKind::PrimeField: return field_span(field_of(ring), identity(field_of(ring), ambient));
    case RingKind::PolyRing: return poly_span(poly_ring_of(ring), identity(poly_ring_of(ring), ambient));
    case RingKind::ModRing: {
      if (!ring.decomposable) {
        std::vector<std::vector<u64>> all;
        std::vector<u64> v(ambient, 0);
        // Odometer over (Z/m)^ambient.
        while (true) {
          all.push_back(v);
          std::size_t k = 0;
          while (k < ambient && ++v[k] == ring.modulus) v[k++] = 0;
          if (k == ambient) break;
          if (all.size() > 1'000'000) throw Error(ErrorKind::OracleTooLarge, "full module too large to enumerate");
        }
        return enumerated(ring, ambient, std::move(all));
      }
      std::vector<ScalarMatrix> gens;
      for (u64 p : ring.primes) gens.push_back(identity(PrimeField(p), ambient));
      return mod_span(ring, ambient, gens);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown ring kind");
}

const FieldBasis& Submodule::field_basis() const {
  if (auto* f = std::get_if<FieldBasis>(&pres_)) return *f;
  throw Error(ErrorKind::RingMismatch, "submodule over " + ring_.describe() + " has no field basis");
}

const ModComponents& Submodule::mod_components() const {
  if (auto* m = std::get_if<ModComponents>(&pres_)) return *m;
  throw Error(ErrorKind::RingMismatch, "submodule over " + ring_.describe() + " has no per-prime components");
}

const PolyBasis& Submodule::poly_basis() const {
  if (auto* p = std::get_if<PolyBasis>(&pres_)) return *p;
  throw Error(ErrorKind::RingMismatch, "submodule over " + ring_.describe() + " has no polynomial basis");
}

std::size_t Submodule::rank() const {
  if (auto* f = std::get_if<FieldBasis>(&pres_)) return f->dim();
  if (auto* p = std::get_if<PolyBasis>(&pres_)) return p->rank();
  throw Error(ErrorKind::RingMismatch, "rank is not defined over " + ring_.describe() + "; use local_dims");
}

std::vector<std::size_t> Submodule::local_dims() const {
  if (auto* m = std::get_if<ModComponents>(&pres_)) {
    std::vector<std::size_t> out;
    for (const auto& c : m->components) out.push_back(c.dim());
    return out;
  }
  return {rank()};
}

bool Submodule::is_zero() const {
  if (auto* e = std::get_if<EnumeratedSet>(&pres_)) return e->elements.size() == 1;
  auto dims = local_dims();
  return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
}

bool Submodule::is_full() const {
  if (auto* e = std::get_if<EnumeratedSet>(&pres_)) {
    double total = 1;
    for (std::size_t k = 0; k < ambient_; ++k) total *= static_cast<double>(ring_.modulus);
    return static_cast<double>(e->elements.size()) == total;
  }
  if (auto* p = std::get_if<PolyBasis>(&pres_)) {
    // Full iff the Hermite form is the identity.
    return p->basis == identity(poly_ring_of(ring_), ambient_);
  }
  auto dims = local_dims();
  return std::all_of(dims.begin(), dims.end(), [&](std::size_t d) { return d == ambient_; });
}

Cardinality Submodule::cardinality() const {
  if (!ring_.is_finite()) throw Error(ErrorKind::NotFinite, "submodule over " + ring_.describe() + " is infinite");
  if (auto* e = std::get_if<EnumeratedSet>(&pres_)) return factor_count(e->elements.size());
  Cardinality out;
  if (auto* f = std::get_if<FieldBasis>(&pres_)) {
    if (f->dim() > 0) out[ring_.modulus] = f->dim();
    return out;
  }
  const auto& comps = mod_components().components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].dim() > 0) out[ring_.primes[i]] = comps[i].dim();
  }
  return out;
}

bool submodule_equal(const Submodule& s, const Submodule& t) {
  if (!(s.ring() == t.ring())) {
    throw Error(ErrorKind::RingMismatch, s.ring().describe() + " vs " + t.ring().describe());
  }
  if (s.ambient_dim() != t.ambient_dim()) {
    throw Error(ErrorKind::AmbientMismatch, "ambient dimensions " + std::to_string(s.ambient_dim()) + " and " +
                                                std::to_string(t.ambient_dim()));
  }
  return s.presentation() == t.presentation();
}

std::optional<std::vector<u64>> submodule_member(const Submodule& s, const std::vector<u64>& v) {
  require_same_ambient(s, v.size());
  const RingSpec& ring = s.ring();
  if (!ring.is_finite()) throw Error(ErrorKind::RingMismatch, "residue vector tested against " + ring.describe());
  if (std::any_of(v.begin(), v.end(), [&](u64 x) { return x >= ring.modulus; })) {
    throw Error(ErrorKind::RingMismatch, "vector entry outside " + ring.describe());
  }
  if (auto* f = std::get_if<FieldBasis>(&s.presentation())) {
    return echelon_coordinates(PrimeField(ring.modulus), f->basis, v);
  }
  if (auto* e = std::get_if<EnumeratedSet>(&s.presentation())) {
    if (std::binary_search(e->elements.begin(), e->elements.end(), v)) return std::vector<u64>{};
    return std::nullopt;
  }
  const auto& comps = s.mod_components().components;
  std::vector<u64> coords;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    PrimeField F(ring.primes[i]);
    std::vector<u64> local(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) local[k] = F.reduce(v[k]);
    auto c = echelon_coordinates(F, comps[i].basis, local);
    if (!c) return std::nullopt;
    coords.insert(coords.end(), c->begin(), c->end());
  }
  return coords;
}

std::optional<std::vector<Poly>> submodule_member(const Submodule& s, const std::vector<Poly>& v) {
  require_same_ambient(s, v.size());
  const PolyRing R = poly_ring_of(s.ring());
  for (const auto& e : v) {
    if (!R.contains(e)) throw Error(ErrorKind::RingMismatch, "vector entry outside " + s.ring().describe());
  }
  const PolyBasis& pb = s.poly_basis();
  HermiteForm h{pb.basis, pb.pivot_rows, {}};
  return hermite_divide(R, h, v);
}

ScalarMatrix mod_generators(const Submodule& s) {
  const auto& comps = s.mod_components().components;
  const CrtDecomposition crt = idempotents(s.ring().modulus);
  const Zmod Z(s.ring().modulus);
  std::vector<std::vector<u64>> gens;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = 0; j < comps[i].dim(); ++j) {
      std::vector<u64> g = comps[i].basis.col(j);
      for (auto& x : g) x = Z.mul(crt.idempotents[i], x);
      gens.push_back(std::move(g));
    }
  }
  return ScalarMatrix::from_columns(s.ambient_dim(), gens);
}

std::vector<std::vector<u64>> enumerate_elements(const Submodule& s, std::size_t limit) {
  const RingSpec& ring = s.ring();
  if (!ring.is_finite()) throw Error(ErrorKind::NotFinite, "cannot enumerate a submodule over " + ring.describe());
  if (auto* e = std::get_if<EnumeratedSet>(&s.presentation())) return e->elements;

  // Generators together with the order of their coefficient range: a field
  // basis uses coefficients in GF(p); the glued Z/m generators e_i * b use
  // coefficients mod p_i (e_i kills everything else).
  ScalarMatrix gens;
  std::vector<u64> ranges;
  if (auto* f = std::get_if<FieldBasis>(&s.presentation())) {
    gens = f->basis;
    ranges.assign(gens.cols(), ring.modulus);
  } else {
    gens = mod_generators(s);
    const auto dims = s.local_dims();
    for (std::size_t i = 0; i < dims.size(); ++i) ranges.insert(ranges.end(), dims[i], ring.primes[i]);
  }
  double total = 1;
  for (u64 r : ranges) total *= static_cast<double>(r);
  if (total > static_cast<double>(limit)) {
    throw Error(ErrorKind::OracleTooLarge, "submodule has more than " + std::to_string(limit) + " elements");
  }

  const Zmod Z(ring.modulus);
  std::vector<std::vector<u64>> out;
  std::vector<u64> coeffs(ranges.size(), 0);
  while (true) {
    std::vector<u64> v(s.ambient_dim(), 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = Z.add(v[i], Z.mul(coeffs[j], gens(i, j)));
    }
    out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < coeffs.size() && ++coeffs[k] == ranges[k]) coeffs[k++] = 0;
    if (k == coeffs.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Submodule push_forward(const PrimeField& F, const ScalarMatrix& map, const Submodule& s) {
  return Submodule::field_span(F, multiply(F, map, s.field_basis().basis));
}

Submodule nullspace(const PrimeField& F, const ScalarMatrix& a) {
  return Submodule::field_span(F, nullspace_basis(F, a));
}

Submodule image(const PrimeField& F, const ScalarMatrix& a) { return Submodule::field_span(F, a); }

}  // namespace kerpair
