#include "kerpair/ring.hpp"

#include <algorithm>
#include <sstream>

namespace kerpair {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CompositeModulusForField: return "CompositeModulusForField";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotAField: return "NotAField";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::IdentityViolated: return "IdentityViolated";
    case ErrorKind::NotSquareFree: return "NotSquareFree";
    case ErrorKind::BaseChangeViolated: return "BaseChangeViolated";
    case ErrorKind::ConsistencyViolated: return "ConsistencyViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MethodUnavailable: return "MethodUnavailable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
constexpr u64 kMaxModulus = u64{1} << 62;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::optional<u64> repeated_prime(u64 n) {
  for (u64 p : prime_factors(n)) {
    if ((n / p) % p == 0) return p;
  }
  return std::nullopt;
}

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// ---------------------------------------------------------------------------

Zmod::Zmod(u64 modulus) : m_(modulus) {
  if (modulus == 0 || modulus > kMaxModulus) {
    throw Error(ErrorKind::InvalidArgument, "modulus must lie in [1, 2^62], got " + std::to_string(modulus));
  }
}

u64 Zmod::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<u64>(v) % m_;
  u64 r = static_cast<u64>(-(v + 1)) % m_;  // |v| - 1, avoids overflow at INT64_MIN
  return m_ - 1 - r;
}

u64 Zmod::pow(u64 a, u64 e) const noexcept {
  u64 result = one();
  a %= m_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::optional<u64> Zmod::inverse(u64 a) const noexcept {
  // Extended Euclid on signed 128-bit to stay exact for m up to 2^62.
  __int128 r0 = static_cast<__int128>(m_), r1 = static_cast<__int128>(a % m_);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) {
    if (m_ == 1) return 0;
    return std::nullopt;
  }
  if (t0 < 0) t0 += m_;
  return static_cast<u64>(t0);
}

PrimeField::PrimeField(u64 p) : Zmod(p) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::CompositeModulusForField, std::to_string(p) + " is not prime");
  }
}

u64 PrimeField::inv(u64 a) const {
  auto r = inverse(a);
  if (!r) throw Error(ErrorKind::NotInvertible, "zero has no inverse in GF(" + std::to_string(modulus()) + ")");
  return *r;
}

// ---------------------------------------------------------------------------

Poly::Poly(std::vector<u64> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(u64 c, std::size_t k) {
  if (c == 0) return {};
  std::vector<u64> v(k + 1, 0);
  v[k] = c;
  return Poly(std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

Poly PolyRing::from_coeffs(std::vector<u64> coeffs) const {
  for (auto& c : coeffs) c = k_.reduce(c);
  return Poly(std::move(coeffs));
}

bool PolyRing::contains(const Poly& a) const noexcept {
  return std::all_of(a.coeffs().begin(), a.coeffs().end(), [&](u64 c) { return k_.contains(c); }) &&
         (a.is_zero() || a.leading() != 0);
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<u64> out(std::max(x.size(), y.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k_.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(out));
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  std::vector<u64> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k_.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(out));
}

Poly PolyRing::neg(const Poly& a) const {
  std::vector<u64> out(a.coeffs());
  for (auto& c : out) c = k_.neg(c);
  return Poly(std::move(out));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<u64> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = k_.add(out[i + j], k_.mul(x[i], y[j]));
  }
  return Poly(std::move(out));
}

Poly PolyRing::scale(const Poly& a, u64 c) const {
  std::vector<u64> out(a.coeffs());
  for (auto& v : out) v = k_.mul(v, c);
  return Poly(std::move(out));
}

Poly PolyRing::shift(const Poly& a, std::size_t k) const {
  if (a.is_zero()) return {};
  std::vector<u64> out(k, 0);
  out.insert(out.end(), a.coeffs().begin(), a.coeffs().end());
  return Poly(std::move(out));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw Error(ErrorKind::NotInvertible, "polynomial division by zero");
  auto lead_inv = k_.inverse(b.leading());
  if (!lead_inv) throw Error(ErrorKind::NotInvertible, "leading coefficient of divisor is a zero divisor");
  if (a.deg() < b.deg()) return {Poly{}, a};
  std::vector<u64> rem(a.coeffs());
  std::vector<u64> quot(static_cast<std::size_t>(a.deg() - b.deg() + 1), 0);
  const auto& d = b.coeffs();
  const std::size_t db = d.size() - 1;
  for (std::size_t i = rem.size(); i-- > db;) {
    u64 c = k_.mul(rem[i], *lead_inv);
    if (c == 0) continue;
    std::size_t shift = i - db;
    quot[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[shift + j] = k_.sub(rem[shift + j], k_.mul(c, d[j]));
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  auto inv = k_.inverse(a.leading());
  if (!inv) throw Error(ErrorKind::NotInvertible, "leading coefficient is a zero divisor");
  return scale(a, *inv);
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly PolyRing::reduce_into(const Poly& a, const Zmod& target) const {
  std::vector<u64> out(a.coeffs());
  for (auto& c : out) c = target.reduce(c);
  return Poly(std::move(out));
}

u64 PolyRing::evaluate(const Poly& a, u64 x) const {
  u64 acc = 0;
  const auto& c = a.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = k_.add(k_.mul(acc, x), c[i]);
  return acc;
}

// ---------------------------------------------------------------------------

std::string RingSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case RingKind::PrimeField: os << "GF(" << modulus << ")"; break;
    case RingKind::ModRing: os << "Z/" << modulus; break;
    case RingKind::PolyRing: os << "GF(" << modulus << ")[z]"; break;
  }
  return os.str();
}

RingSpec ring_make(RingKind kind, u64 parameter) {
  if (parameter < 2) {
    throw Error(ErrorKind::InvalidArgument, "ring parameter must be at least 2, got " + std::to_string(parameter));
  }
  if (parameter > kMaxModulus) throw Error(ErrorKind::InvalidArgument, "ring parameter exceeds 2^62");
  RingSpec spec;
  spec.kind = kind;
  spec.modulus = parameter;
  spec.primes = prime_factors(parameter);
  spec.decomposable = !repeated_prime(parameter).has_value();
  if (kind != RingKind::ModRing && !is_prime(parameter)) {
    throw Error(ErrorKind::CompositeModulusForField, std::to_string(parameter) + " is not prime");
  }
  return spec;
}

PrimeField field_of(const RingSpec& ring) {
  if (ring.kind != RingKind::PrimeField) throw Error(ErrorKind::NotAField, ring.describe() + " is not a prime field");
  return PrimeField(ring.modulus);
}

Zmod zmod_of(const RingSpec& ring) {
  if (ring.kind == RingKind::PolyRing) throw Error(ErrorKind::RingMismatch, ring.describe() + " is not a residue ring");
  return Zmod(ring.modulus);
}

PolyRing poly_ring_of(const RingSpec& ring) {
  if (ring.kind != RingKind::PolyRing) throw Error(ErrorKind::RingMismatch, ring.describe() + " is not a polynomial ring");
  return PolyRing(PrimeField(ring.modulus));
}

bool belongs(const Element& a, const RingSpec& ring) {
  if (ring.kind == RingKind::PolyRing) {
    const Poly* p = std::get_if<Poly>(&a);
    return p != nullptr && poly_ring_of(ring).contains(*p);
  }
  const u64* v = std::get_if<u64>(&a);
  return v != nullptr && *v < ring.modulus;
}

Element canonical(const Element& a, const RingSpec& ring) {
  if (ring.kind == RingKind::PolyRing) {
    const Poly* p = std::get_if<Poly>(&a);
    if (!p) throw Error(ErrorKind::RingMismatch, "residue given where a polynomial was expected");
    return poly_ring_of(ring).from_coeffs(p->coeffs());
  }
  const u64* v = std::get_if<u64>(&a);
  if (!v) throw Error(ErrorKind::RingMismatch, "polynomial given where a residue was expected");
  return *v % ring.modulus;
}

namespace {

void require_member(const Element& a, const RingSpec& ring) {
  if (!belongs(a, ring)) throw Error(ErrorKind::RingMismatch, "element does not belong to " + ring.describe());
}

}  // namespace

Element elem_add(const Element& a, const Element& b, const RingSpec& ring) {
  require_member(a, ring);
  require_member(b, ring);
  if (ring.kind == RingKind::PolyRing) return poly_ring_of(ring).add(std::get<Poly>(a), std::get<Poly>(b));
  return zmod_of(ring).add(std::get<u64>(a), std::get<u64>(b));
}

Element elem_mul(const Element& a, const Element& b, const RingSpec& ring) {
  require_member(a, ring);
  require_member(b, ring);
  if (ring.kind == RingKind::PolyRing) return poly_ring_of(ring).mul(std::get<Poly>(a), std::get<Poly>(b));
  return zmod_of(ring).mul(std::get<u64>(a), std::get<u64>(b));
}

Element elem_neg(const Element& a, const RingSpec& ring) {
  require_member(a, ring);
  if (ring.kind == RingKind::PolyRing) return poly_ring_of(ring).neg(std::get<Poly>(a));
  return zmod_of(ring).neg(std::get<u64>(a));
}

std::variant<Element, NotInvertible> elem_inverse(const Element& a, const RingSpec& ring) {
  require_member(a, ring);
  if (ring.kind == RingKind::PolyRing) {
    const Poly& p = std::get<Poly>(a);
    if (p.deg() != 0) return NotInvertible{p.is_zero() ? 0 : static_cast<u64>(p.deg())};
    return Element(Poly::constant(*Zmod(ring.modulus).inverse(p.leading())));
  }
  const u64 v = std::get<u64>(a);
  if (auto inv = zmod_of(ring).inverse(v)) return Element(*inv);
  return NotInvertible{gcd(v, ring.modulus)};
}

}  // namespace kerpair
