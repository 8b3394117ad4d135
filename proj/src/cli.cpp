#include "kerpair/cli.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "kerpair/behavior.hpp"
#include "kerpair/crt.hpp"
#include "kerpair/poly_matrix.hpp"
#include "kerpair/text_format.hpp"

namespace kerpair::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IdentityViolated:
    case ErrorKind::BaseChangeViolated:
    case ErrorKind::ConsistencyViolated: return kExitViolation;
    default: return kExitUsage;
  }
}

// JSON encoding ---------------------------------------------------------------

namespace {

Json poly_json(const Poly& p) { return Json(p.coeffs()); }

Json vec_json(const std::vector<u64>& v) { return Json(v); }

Json vec_json(const std::vector<Poly>& v) {
  Json arr = Json::array();
  for (const auto& p : v) arr.push_back(poly_json(p));
  return arr;
}

template <class T>
Json columns_json(const Matrix<T>& m) {
  Json arr = Json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) arr.push_back(vec_json(m.col(j)));
  return arr;
}

std::vector<std::vector<u64>> scalar_columns(const Json& j) {
  std::vector<std::vector<u64>> cols;
  for (const auto& c : j) cols.push_back(c.get<std::vector<u64>>());
  return cols;
}

std::vector<std::vector<Poly>> poly_columns(const Json& j) {
  std::vector<std::vector<Poly>> cols;
  for (const auto& c : j) {
    std::vector<Poly> col;
    for (const auto& e : c) col.emplace_back(e.get<std::vector<u64>>());
    cols.push_back(std::move(col));
  }
  return cols;
}

Json cardinality_json(const Cardinality& c) {
  Json factors = Json::object();
  long double count = 1;
  for (const auto& [p, e] : c) {
    factors[std::to_string(p)] = e;
    for (std::size_t i = 0; i < e; ++i) count *= static_cast<long double>(p);
  }
  Json j;
  j["factored"] = factors;
  j["count"] = count < 9.0e18L ? Json(static_cast<u64>(count)) : Json(nullptr);
  return j;
}

}  // namespace

Json submodule_json(const Submodule& s) {
  Json j;
  j["ambient"] = s.ambient_dim();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FieldBasis>) {
          j["presentation"] = "echelon";
          j["dim"] = p.dim();
          j["basis"] = columns_json(p.basis);
        } else if constexpr (std::is_same_v<P, ModComponents>) {
          j["presentation"] = "crt";
          Json parts = Json::array();
          for (std::size_t i = 0; i < p.components.size(); ++i) {
            Json part;
            part["prime"] = s.ring().primes[i];
            part["dim"] = p.components[i].dim();
            part["basis"] = columns_json(p.components[i].basis);
            parts.push_back(part);
          }
          j["per_prime"] = parts;
          j["generators"] = columns_json(mod_generators(s));
        } else if constexpr (std::is_same_v<P, PolyBasis>) {
          j["presentation"] = "hermite";
          j["rank"] = p.rank();
          j["basis"] = columns_json(p.basis);
          j["pivot_rows"] = p.pivot_rows;
        } else {
          j["presentation"] = "enumerated";
          j["count"] = p.elements.size();
          j["elements"] = p.elements;
        }
      },
      s.presentation());
  if (s.ring().is_finite()) j["cardinality"] = cardinality_json(s.cardinality());
  return j;
}

Submodule submodule_from_json(const RingSpec& ring, const Json& j) {
  const std::size_t ambient = j.at("ambient").get<std::size_t>();
  const std::string pres = j.at("presentation").get<std::string>();
  if (pres == "echelon") {
    return Submodule::field_span(field_of(ring), ScalarMatrix::from_columns(ambient, scalar_columns(j.at("basis"))));
  }
  if (pres == "crt") {
    std::vector<ScalarMatrix> local;
    for (const auto& part : j.at("per_prime")) {
      local.push_back(ScalarMatrix::from_columns(ambient, scalar_columns(part.at("basis"))));
    }
    return Submodule::mod_span(ring, ambient, local);
  }
  if (pres == "hermite") {
    return Submodule::poly_span(poly_ring_of(ring), PolyMatrix::from_columns(ambient, poly_columns(j.at("basis"))));
  }
  if (pres == "enumerated") {
    return Submodule::enumerated(ring, ambient, j.at("elements").get<std::vector<std::vector<u64>>>());
  }
  throw Error(ErrorKind::ParseError, "unknown presentation '" + pres + "'");
}

// Plain rendering -------------------------------------------------------------

namespace {

bool is_leaf(const Json& j) {
  if (!j.is_structured()) return true;
  if (j.is_object()) return false;
  for (const auto& e : j) {
    if (e.is_object()) return false;
  }
  return j.dump().size() <= 96;
}

bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() || (v.is_array() && !is_leaf(v))) return false;
  }
  return j.dump().size() <= 96;
}

void render(const Json& j, const std::string& indent, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_leaf(v)) {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        os << indent << k << ":\n";
        render(v, indent + "  ", os);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const auto& e : j) {
      if (is_flat_object(e)) {
        std::string line;
        for (const auto& [k, v] : e.items()) {
          if (!line.empty()) line += ", ";
          line += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        os << indent << "- " << line << "\n";
      } else if (is_leaf(e)) {
        os << indent << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
      } else {
        os << indent << "-\n";
        render(e, indent + "  ", os);
      }
    }
    return;
  }
  os << indent << j.dump() << "\n";
}

}  // namespace

std::string render_plain(const Json& doc) {
  std::ostringstream os;
  render(doc, "", os);
  return os.str();
}

// Commands --------------------------------------------------------------------

namespace {

struct Options {
  bool json = false;
  u64 seed = 20240607;
  std::string method = "auto";
  bool verify = false;

  std::string file, name_a, name_b;
  std::vector<std::string> entries;
  std::string x0_file, u_file;
  std::optional<std::size_t> steps;
  std::string boundary = "free";
  std::size_t trials = 20;
  u64 modulus = 0;
  std::string fault;
};

struct Outcome {
  Json doc;
  int code = kExitOk;
};

std::string ring_label(const MatrixFile& f) {
  if (f.kind == FileRing::PolyZmod) return "(" + f.ring.describe() + ")[z]";
  return f.ring.describe();
}

void add_check(Json& checks, const std::string& name, bool passed, const std::string& detail = {}) {
  Json c;
  c["name"] = name;
  c["passed"] = passed;
  if (!detail.empty()) c["detail"] = detail;
  checks.push_back(c);
}

bool all_passed(const Json& checks) {
  for (const auto& c : checks) {
    if (!c.at("passed").get<bool>()) return false;
  }
  return true;
}

PolyMatrix reduce_poly_matrix(const PolyMatrix& a, u64 from, u64 p) {
  const PolyRing R{Zmod(from)};
  const Zmod target(p);
  PolyMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = R.reduce_into(a(i, j), target);
  return out;
}

bool is_identity(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != (i == j ? 1u : 0u)) return false;
    }
  return true;
}

bool is_identity(const PolyMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != (i == j ? Poly::constant(1) : Poly())) return false;
    }
  return true;
}

template <class T>
bool all_zero(const Matrix<T>& m) {
  for (const auto& v : m.data()) {
    if (!(v == T{})) return false;
  }
  return true;
}

// Degenerate cases recognised from the inputs and the computed ker_bar.
template <class T>
Json degenerate_notes(const Matrix<T>& a, const Matrix<T>& b, bool bar_full, bool bar_zero, bool a_onto) {
  Json notes = Json::array();
  if (all_zero(b)) notes.push_back("f2 = 0: ker(f₁|0) = M₂");
  if (all_zero(a) && is_identity(b) && bar_zero) notes.push_back("ker(0|I) = 0");
  else if (all_zero(a)) notes.push_back("f1 = 0: ker(0|f₂) = ker(f₂)");
  if (!all_zero(b) && a_onto) notes.push_back("f1 onto: ker(f₁|f₂) = M₂");
  else if (!all_zero(b) && bar_full) notes.push_back("Im f₂ ⊆ Im f₁: ker(f₁|f₂) = M₂");
  return notes;
}

// kernel -----------------------------------------------------------------------

Outcome cmd_kernel(const Options& o) {
  const MatrixFile f = load_matrix_file(o.file);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);
  switch (f.kind) {
    case FileRing::Gf: {
      const PrimeField F = field_of(f.ring);
      const ScalarMatrix& a = f.scalar(o.name_a);
      const Submodule k = Submodule::field_span(F, nullspace_basis(F, a));
      d["dim"] = k.rank();
      d["kernel"] = submodule_json(k);
      break;
    }
    case FileRing::Zmod: {
      const ScalarMatrix& a = f.scalar(o.name_a);
      const CrtDecomposition crt = idempotents(f.parameter);
      std::vector<ScalarMatrix> local;
      for (std::size_t i = 0; i < crt.size(); ++i) {
        local.push_back(nullspace_basis(PrimeField(crt.primes[i]), reduce_matrix(crt, a, i)));
      }
      const Submodule k = Submodule::mod_span(f.ring, a.cols(), local);
      d["local_dims"] = k.local_dims();
      d["kernel"] = submodule_json(k);
      break;
    }
    case FileRing::PolyGf: {
      const PolyRing R = poly_ring_of(f.ring);
      const PolyKernelBasis k = poly_kernel(R, f.poly(o.name_a));
      const Submodule s = Submodule::poly_span(R, k.basis);
      d["rank"] = s.rank();
      d["kernel"] = submodule_json(s);
      d["column_degrees"] = k.column_degrees;
      break;
    }
    case FileRing::PolyZmod: {
      const PolyMatrix& a = f.poly(o.name_a);
      const CrtDecomposition crt = idempotents(f.parameter);
      Json parts = Json::array();
      for (u64 p : crt.primes) {
        const PolyRing R{PrimeField(p)};
        const PolyKernelBasis k = poly_kernel(R, reduce_poly_matrix(a, f.parameter, p));
        Json part = submodule_json(Submodule::poly_span(R, k.basis));
        part["prime"] = p;
        parts.push_back(part);
      }
      d["per_prime"] = parts;
      break;
    }
  }
  return out;
}

// kernel-pair --------------------------------------------------------------------

Method resolve_method(const MatrixFile& f, const std::string& name) {
  if (name == "auto") {
    switch (f.kind) {
      case FileRing::Gf: return Method::Projection;
      case FileRing::Zmod: return f.ring.decomposable ? Method::Crt : Method::Oracle;
      case FileRing::PolyGf:
      case FileRing::PolyZmod: return Method::Poly;
    }
  }
  auto m = parse_method(name);
  if (!m) throw Error(ErrorKind::InvalidArgument, "unknown method '" + name + "'");
  const bool field_method = *m == Method::Projection || *m == Method::Preimage || *m == Method::Quotient;
  switch (f.kind) {
    case FileRing::Gf:
      if (field_method || *m == Method::Oracle) return *m;
      break;
    case FileRing::Zmod:
      if (*m == Method::Oracle) return *m;
      if ((field_method || *m == Method::Crt) && !f.ring.decomposable) {
        throw Error(ErrorKind::NotSquareFree, f.ring.describe() + " has no product-of-fields decomposition");
      }
      if (field_method || *m == Method::Crt) return *m;
      break;
    case FileRing::PolyGf:
    case FileRing::PolyZmod:
      if (*m == Method::Poly) return *m;
      break;
  }
  throw Error(ErrorKind::MethodUnavailable, "method " + std::string(to_string(*m)) + " is unavailable over " + ring_label(f));
}

Json summary(std::size_t pair, std::size_t f1, std::size_t bar, const char* measure) {
  Json s;
  s[std::string(measure) + "_ker_pair"] = pair;
  s[std::string(measure) + "_ker_f1"] = f1;
  s[std::string(measure) + "_ker_bar"] = bar;
  return s;
}

Json result_json(const KernelPairResult& r) {
  Json j;
  j["ker_bar"] = submodule_json(r.ker_bar);
  j["ker_f1"] = submodule_json(r.ker_f1);
  j["ker_pair"] = submodule_json(r.ker_pair);
  return j;
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

// Every applicable method, for --verify.
Json compare_methods(const MatrixFile& f, const ScalarMatrix& a, const ScalarMatrix& b, const Submodule& reference,
                     Method reference_method, bool& ok) {
  Json cmp = Json::array();
  auto record = [&](Method m, const std::function<Submodule()>& compute) {
    Json c;
    c["method"] = to_string(m);
    try {
      const Submodule s = compute();
      const bool agree = s == reference;
      c["agrees"] = agree;
      if (!agree) {
        ok = false;
        c["ker_bar"] = submodule_json(s);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OracleTooLarge) throw;
      c["skipped"] = e.what();
    }
    cmp.push_back(c);
  };
  if (f.kind == FileRing::Gf) {
    const PrimeField F = field_of(f.ring);
    for (Method m : {Method::Projection, Method::Preimage, Method::Quotient}) {
      if (m != reference_method) record(m, [&] { return kernel_pair_field(F, a, b, m).ker_bar; });
    }
  } else if (f.ring.decomposable) {
    for (Method m : {Method::Projection, Method::Preimage, Method::Quotient}) {
      record(m, [&] { return kernel_pair_crt(f.ring, a, b, m).glued; });
    }
  }
  if (reference_method != Method::Oracle) record(Method::Oracle, [&] { return kernel_pair_oracle(f.ring, a, b); });
  return cmp;
}

Outcome kernel_pair_scalar(const Options& o, const MatrixFile& f, Method method) {
  const ScalarMatrix& a = f.scalar(o.name_a);
  const ScalarMatrix& b = f.scalar(o.name_b);
  check_pair_shapes(a, b);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);
  d["method"] = to_string(method);

  Submodule bar = Submodule::zero(f.ring, b.cols());
  bool a_onto = false;

  if (f.kind == FileRing::Gf) {
    const PrimeField F = field_of(f.ring);
    a_onto = rank(F, a) == a.rows();
    const KernelPairResult r = kernel_pair_field(F, a, b, method);
    const ExactSequenceWitness<u64> w = build_witness(F, a, b, r.ker_bar);
    d["summary"] = summary(r.ker_pair.rank(), r.ker_f1.rank(), r.ker_bar.rank(), "dim");
    merge(d, result_json(r));
    d["section"] = columns_json(w.section);
    bar = r.ker_bar;
  } else if (method == Method::Oracle) {
    // Every module from enumeration: ker A and ker(A, B) are kernels of pairs
    // with an empty first map.
    const ScalarMatrix none(a.rows(), 0);
    const KernelPairResult r{kernel_pair_oracle(f.ring, none, a), kernel_pair_oracle(f.ring, none, hcat(a, b)),
                             kernel_pair_oracle(f.ring, a, b), Method::Oracle};
    merge(d, result_json(r));
    d["cardinality_identity"] = cardinality_identity(r);
    if (!f.ring.decomposable) d["notes"] = Json::array({"Z/m is not square-free: no splitting is claimed"});
    bar = r.ker_bar;
  } else {
    const Method local = method == Method::Crt ? Method::Projection : method;
    const LocalGlobalResult g = kernel_pair_crt(f.ring, a, b, local);
    d["local_method"] = to_string(local);
    Json triples = Json::array();
    Json sections = Json::array();
    a_onto = true;
    for (std::size_t i = 0; i < g.crt.size(); ++i) {
      Json t;
      t["prime"] = g.crt.primes[i];
      t["dim_ker_pair"] = g.local[i].ker_pair.rank();
      t["dim_ker_f1"] = g.local[i].ker_f1.rank();
      t["dim_ker_bar"] = g.local[i].ker_bar.rank();
      triples.push_back(t);
      Json s;
      s["prime"] = g.crt.primes[i];
      s["section"] = columns_json(g.local_witnesses[i].section);
      sections.push_back(s);
      if (rank(PrimeField(g.crt.primes[i]), reduce_matrix(g.crt, a, i)) != a.rows()) a_onto = false;
    }
    Json idem = Json::array();
    for (std::size_t i = 0; i < g.crt.size(); ++i) idem.push_back({{"prime", g.crt.primes[i]}, {"e", g.crt.idempotents[i]}});
    d["idempotents"] = idem;
    d["per_prime"] = triples;
    merge(d, result_json(KernelPairResult{g.glued_f1, g.glued_pair, g.glued, Method::Crt}));
    d["section"] = sections;
    bar = g.glued;
  }

  for (const auto& n : degenerate_notes(a, b, bar.is_full(), bar.is_zero(), a_onto)) d["notes"].push_back(n);

  if (o.verify) {
    bool ok = true;
    d["verification"] = compare_methods(f, a, b, bar, method, ok);
    if (!ok) {
      out.code = kExitViolation;
      d["status"] = "method mismatch";
    }
  }
  return out;
}

Outcome kernel_pair_polynomial(const Options& o, const MatrixFile& f) {
  const PolyMatrix& a = f.poly(o.name_a);
  const PolyMatrix& b = f.poly(o.name_b);
  check_pair_shapes(a, b);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);
  d["method"] = to_string(Method::Poly);

  if (f.kind == FileRing::PolyGf) {
    const PolyRing R = poly_ring_of(f.ring);
    const PolyKernelPair kp = kernel_pair_poly(R, a, b);
    d["summary"] = summary(kp.result.ker_pair.rank(), kp.result.ker_f1.rank(), kp.result.ker_bar.rank(), "rank");
    merge(d, result_json(kp.result));
    d["section"] = columns_json(kp.witness.section);
    for (const auto& n : degenerate_notes(a, b, kp.result.ker_bar.is_full(), kp.result.ker_bar.is_zero(), false)) {
      d["notes"].push_back(n);
    }
  } else {
    const PolyCrtResult g = kernel_pair_poly_crt(f.parameter, a, b);
    Json parts = Json::array();
    bool full = true, zero = true;
    for (std::size_t i = 0; i < g.crt.size(); ++i) {
      Json part;
      part["prime"] = g.crt.primes[i];
      part["e"] = g.crt.idempotents[i];
      part["summary"] = summary(g.local[i].result.ker_pair.rank(), g.local[i].result.ker_f1.rank(),
                                g.local[i].result.ker_bar.rank(), "rank");
      merge(part, result_json(g.local[i].result));
      part["section"] = columns_json(g.local[i].witness.section);
      parts.push_back(part);
      full = full && g.local[i].result.ker_bar.is_full();
      zero = zero && g.local[i].result.ker_bar.is_zero();
    }
    d["per_prime"] = parts;
    d["glued_ker_bar_generators"] = columns_json(g.glued_generators());
    for (const auto& n : degenerate_notes(a, b, full, zero, false)) d["notes"].push_back(n);
  }
  if (o.verify) d["verification"] = Json::array({{{"method", "poly"}, {"agrees", true}, {"note", "single method"}}});
  return out;
}

Outcome cmd_kernel_pair(const Options& o) {
  const MatrixFile f = load_matrix_file(o.file);
  const Method method = resolve_method(f, o.method);
  if (f.is_poly()) return kernel_pair_polynomial(o, f);
  return kernel_pair_scalar(o, f, method);
}

// idempotents -------------------------------------------------------------------

Outcome cmd_idempotents(const Options& o) {
  if (o.modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
  const CrtDecomposition crt = idempotents(o.modulus);
  const Zmod Z(o.modulus);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = "Z/" + std::to_string(o.modulus);
  Json list = Json::array();
  bool idem = true, orth = true;
  u64 total = 0;
  for (std::size_t i = 0; i < crt.size(); ++i) {
    list.push_back({{"prime", crt.primes[i]}, {"e", crt.idempotents[i]}});
    idem = idem && Z.mul(crt.idempotents[i], crt.idempotents[i]) == crt.idempotents[i];
    for (std::size_t j = 0; j < crt.size(); ++j) {
      if (i != j) orth = orth && Z.mul(crt.idempotents[i], crt.idempotents[j]) == 0;
    }
    total = Z.add(total, crt.idempotents[i]);
  }
  d["idempotents"] = list;
  Json checks = Json::array();
  add_check(checks, "e_i^2 = e_i", idem);
  add_check(checks, "e_i e_j = 0 (i != j)", orth);
  add_check(checks, "sum e_i = 1", total == Z.one());
  d["checks"] = checks;
  if (!all_passed(checks)) out.code = kExitViolation;
  return out;
}

// member ------------------------------------------------------------------------

std::vector<std::string> entry_tokens(const std::vector<std::string>& args) {
  std::vector<std::string> toks;
  for (const auto& a : args)
    for (auto& t : tokenize(a)) toks.push_back(std::move(t));
  return toks;
}

std::optional<std::vector<u64>> search_witness(const Zmod& Z, const ScalarMatrix& a, const std::vector<u64>& target) {
  double space = 1;
  for (std::size_t i = 0; i < a.cols(); ++i) space *= static_cast<double>(Z.modulus());
  if (space > static_cast<double>(kOracleGuard)) {
    throw Error(ErrorKind::OracleTooLarge, "witness search over Z/m^q1 exceeds 10^6");
  }
  std::vector<u64> x(a.cols(), 0);
  while (true) {
    if (apply(Z, a, x) == target) return x;
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == Z.modulus()) x[k++] = 0;
    if (k == x.size()) return std::nullopt;
  }
}

Outcome cmd_member(const Options& o) {
  const MatrixFile f = load_matrix_file(o.file);
  const auto toks = entry_tokens(o.entries);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);

  auto fail_verification = [] {
    throw Error(ErrorKind::ConsistencyViolated, "witness failed re-verification");
  };

  if (!f.is_poly()) {
    const ScalarMatrix& a = f.scalar(o.name_a);
    const ScalarMatrix& b = f.scalar(o.name_b);
    check_pair_shapes(a, b);
    if (toks.size() != b.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "u has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(b.cols()));
    }
    std::vector<u64> u;
    for (const auto& t : toks) u.push_back(parse_residue(t, f.parameter));
    d["u"] = u;
    const Zmod Z(f.parameter);
    std::optional<std::vector<u64>> x;
    if (f.kind == FileRing::Gf) {
      const PrimeField F = field_of(f.ring);
      x = solve(F, a, negate(F, apply(F, b, u)));
    } else if (f.ring.decomposable) {
      x = crt_witness(f.ring, a, b, u);
    } else {
      x = search_witness(Z, a, negate(Z, apply(Z, b, u)));
    }
    d["member"] = x.has_value();
    if (x) {
      if (!is_zero(Z, add(Z, apply(Z, a, *x), apply(Z, b, u)))) fail_verification();
      d["witness_x"] = *x;
      d["verified"] = true;
    }
    if (!x) {
      out.code = kExitViolation;
      d["status"] = "not member";
    }
    return out;
  }

  const PolyMatrix& a = f.poly(o.name_a);
  const PolyMatrix& b = f.poly(o.name_b);
  check_pair_shapes(a, b);
  if (toks.size() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "u has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(b.cols()));
  }
  std::vector<Poly> u;
  for (const auto& t : toks) u.push_back(parse_poly(t, f.parameter));
  d["u"] = vec_json(u);
  const PolyRing R{Zmod(f.parameter)};
  std::optional<std::vector<Poly>> x;
  if (f.kind == FileRing::PolyGf) {
    x = poly_member(R, a, b, kernel_pair_poly(R, a, b), u);
  } else {
    x = kernel_pair_poly_crt(f.parameter, a, b).witness(u);
  }
  d["member"] = x.has_value();
  if (x) {
    if (!is_zero(R, add(R, apply(R, a, *x), apply(R, b, u)))) fail_verification();
    d["witness_x"] = vec_json(*x);
    d["verified"] = true;
  } else {
    out.code = kExitViolation;
    d["status"] = "not member";
  }
  return out;
}

// simulate ----------------------------------------------------------------------

Outcome cmd_simulate(const Options& o) {
  const MatrixFile f = load_matrix_file(o.file);
  if (f.is_poly()) throw Error(ErrorKind::NotFinite, "simulation needs a finite ring, not " + ring_label(f));
  const SystemPair sys = make_system(f.ring, f.scalar(o.name_a), f.scalar(o.name_b));
  std::vector<std::vector<u64>> inputs = load_vector_lines(o.u_file, sys.inputs(), f.parameter);
  if (o.steps) {
    if (*o.steps > inputs.size()) {
      throw Error(ErrorKind::DimensionMismatch, "--steps " + std::to_string(*o.steps) + " but only " +
                                                    std::to_string(inputs.size()) + " input vectors");
    }
    inputs.resize(*o.steps);
  }
  AdmissibleInputQuery q;
  q.inputs = inputs;
  if (o.boundary == "free") q.boundary = Boundary::FreeInitial;
  else if (o.boundary == "periodic") q.boundary = Boundary::Periodic;
  else if (o.boundary == "fixed") q.boundary = Boundary::FixedInitial;
  else throw Error(ErrorKind::InvalidArgument, "unknown boundary '" + o.boundary + "'");

  if (q.boundary == Boundary::FixedInitial) {
    if (o.x0_file == "-") {
      q.x0.assign(sys.states(), 0);
    } else {
      auto rows = load_vector_lines(o.x0_file, sys.states(), f.parameter);
      if (rows.size() != 1) throw Error(ErrorKind::DimensionMismatch, "x0 file must hold exactly one state vector");
      q.x0 = rows.front();
    }
  }

  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);
  d["boundary"] = o.boundary;
  d["steps"] = inputs.size();
  const auto traj = admissible(sys, q);
  d["admissible"] = traj.has_value();
  if (!traj) {
    out.code = kExitViolation;
    d["status"] = "not admissible";
    return out;
  }
  if (!satisfies_recursion(sys, *traj)) throw Error(ErrorKind::ConsistencyViolated, "trajectory violates the recursion");
  Json rows = Json::array();
  for (std::size_t t = 0; t < traj->states.size(); ++t) {
    Json row;
    row["t"] = t;
    row["x"] = traj->states[t];
    if (t < traj->inputs.size()) row["u"] = traj->inputs[t];
    rows.push_back(row);
  }
  d["trajectory"] = rows;
  return out;
}

// verify ------------------------------------------------------------------------

void corrupt(ScalarMatrix& section, const PrimeField& F) {
  if (section.cols() > 0 && section.rows() > 0) section(0, 0) = F.add(section(0, 0), 1);
}

void corrupt(PolyMatrix& section, const PolyRing& R) {
  if (section.cols() > 0 && section.rows() > 0) section(0, 0) = R.add(section(0, 0), R.one());
}

std::string prefix(std::optional<u64> prime, const std::string& name) {
  return prime ? "p=" + std::to_string(*prime) + ": " + name : name;
}

void field_checks(Json& checks, const PrimeField& F, const ScalarMatrix& a, const ScalarMatrix& b, const Options& o,
                  std::mt19937_64& rng, std::optional<u64> prime, bool inject) {
  auto [proj, w] = kernel_pair_projection(F, a, b);
  const KernelPairResult pre = kernel_pair_preimage(F, a, b);
  const KernelPairResult quo = kernel_pair_quotient(F, a, b).first;
  add_check(checks, prefix(prime, "method agreement (projection, preimage, quotient)"),
            proj.ker_bar == pre.ker_bar && proj.ker_bar == quo.ker_bar);
  add_check(checks, prefix(prime, "|ker(f1,f2)| = |ker f1| |ker(f1|f2)|"), cardinality_identity(proj));

  if (inject) corrupt(w.section, F);
  const SplittingReport split = check_splitting(F, proj, w);
  add_check(checks, prefix(prime, "splitting"), split.ok(), split.describe());

  std::size_t held = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const Automorphism psi1 = Automorphism::random(F, a.cols(), rng);
    const Automorphism psi2 = Automorphism::random(F, b.cols(), rng);
    const Automorphism psi = Automorphism::random(F, a.rows(), rng);
    const IdentityReport rep = check_identities(F, a, b, psi1, psi2, psi);
    if (rep.ok()) ++held;
    else if (first_failure.empty()) first_failure = rep.describe();
  }
  add_check(checks, prefix(prime, "automorphism identities"), held == o.trials,
            std::to_string(held) + "/" + std::to_string(o.trials) + " trials" +
                (first_failure.empty() ? "" : "; " + first_failure));

  const std::size_t p = a.rows(), q1 = a.cols(), q2 = b.cols();
  add_check(checks, prefix(prime, "ker(0|B) = ker B"),
            kernel_pair_projection(F, zeros(F, p, q1), b).first.ker_bar == Submodule::field_span(F, nullspace_basis(F, b)));
  add_check(checks, prefix(prime, "ker(A|0) = M2"), kernel_pair_projection(F, a, zeros(F, p, q2)).first.ker_bar.is_full());
  add_check(checks, prefix(prime, "ker(0|I) = 0"),
            kernel_pair_projection(F, zeros(F, q2, q1), identity(F, q2)).first.ker_bar.is_zero());
  if (rank(F, a) == p) add_check(checks, prefix(prime, "f1 onto => ker(f1|f2) = M2"), proj.ker_bar.is_full());
  if (rank(F, hcat(a, b)) == rank(F, a)) add_check(checks, prefix(prime, "Im f2 in Im f1 => ker(f1|f2) = M2"), proj.ker_bar.is_full());
}

void poly_checks(Json& checks, const PolyRing& R, const PolyMatrix& a, const PolyMatrix& b, std::optional<u64> prime,
                 bool inject) {
  PolyKernelPair kp = kernel_pair_poly(R, a, b);
  const PolyMatrix joint = hcat(a, b);
  add_check(checks, prefix(prime, "[A|B] K = 0"), is_zero(R, multiply(R, joint, kp.pair_basis.basis)));
  add_check(checks, prefix(prime, "rank ker(A,B) = rank ker A + rank ker(A|B)"),
            kp.result.ker_pair.rank() == kp.result.ker_f1.rank() + kp.result.ker_bar.rank());

  int top = 0;
  for (int deg : kp.pair_basis.column_degrees) top = std::max(top, deg);
  const std::size_t bound = static_cast<std::size_t>(top) + 2;
  const HermiteForm h = kp.pair_basis.as_hermite();
  std::size_t probed = 0, inside = 0;
  for (const auto& v : bounded_kernel(R, joint, bound)) {
    ++probed;
    if (hermite_divide(R, h, v)) ++inside;
  }
  add_check(checks, prefix(prime, "saturation up to degree " + std::to_string(bound)), probed == inside,
            std::to_string(inside) + "/" + std::to_string(probed));

  if (inject) corrupt(kp.witness.section, R);
  const SplittingReport split = check_splitting(R, kp.result, kp.witness);
  add_check(checks, prefix(prime, "splitting"), split.ok(), split.describe());

  const std::size_t p = a.rows(), q1 = a.cols(), q2 = b.cols();
  add_check(checks, prefix(prime, "ker(0|B) = ker B"),
            kernel_pair_poly(R, zeros(R, p, q1), b).result.ker_bar == Submodule::poly_span(R, poly_kernel(R, b).basis));
  add_check(checks, prefix(prime, "ker(A|0) = M2"), kernel_pair_poly(R, a, zeros(R, p, q2)).result.ker_bar.is_full());
  add_check(checks, prefix(prime, "ker(0|I) = 0"), kernel_pair_poly(R, zeros(R, q2, q1), identity(R, q2)).result.ker_bar.is_zero());
}

Outcome cmd_verify(const Options& o) {
  const MatrixFile f = load_matrix_file(o.file);
  const bool inject = o.fault == "section";
  if (!o.fault.empty() && !inject) throw Error(ErrorKind::InvalidArgument, "unknown fault '" + o.fault + "'");
  std::mt19937_64 rng(o.seed);
  Outcome out;
  Json& d = out.doc;
  d["ring"] = ring_label(f);
  d["trials"] = o.trials;
  d["seed"] = o.seed;
  if (inject) d["injected_fault"] = "section";
  Json checks = Json::array();
  Json notes = Json::array();

  switch (f.kind) {
    case FileRing::Gf: {
      const PrimeField F = field_of(f.ring);
      const ScalarMatrix& a = f.scalar(o.name_a);
      const ScalarMatrix& b = f.scalar(o.name_b);
      check_pair_shapes(a, b);
      field_checks(checks, F, a, b, o, rng, std::nullopt, inject);
      try {
        add_check(checks, "oracle agreement", kernel_pair_oracle(f.ring, a, b) == kernel_pair_projection(F, a, b).first.ker_bar);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleTooLarge) throw;
        notes.push_back(std::string("oracle skipped: ") + e.what());
      }
      break;
    }
    case FileRing::Zmod: {
      const ScalarMatrix& a = f.scalar(o.name_a);
      const ScalarMatrix& b = f.scalar(o.name_b);
      check_pair_shapes(a, b);
      if (!f.ring.decomposable) {
        const ScalarMatrix none(a.rows(), 0);
        const KernelPairResult r{kernel_pair_oracle(f.ring, none, a), kernel_pair_oracle(f.ring, none, hcat(a, b)),
                                 kernel_pair_oracle(f.ring, a, b), Method::Oracle};
        add_check(checks, "|ker(f1,f2)| = |ker f1| |ker(f1|f2)|", cardinality_identity(r));
        add_check(checks, "ker(A|0) = M2", kernel_pair_oracle(f.ring, a, ScalarMatrix(a.rows(), b.cols())).is_full());
        add_check(checks, "ker(0|B) = ker B", kernel_pair_oracle(f.ring, ScalarMatrix(a.rows(), a.cols()), b) ==
                                                  kernel_pair_oracle(f.ring, none, b));
        notes.push_back("Z/m is not square-free: splitting and base change are not claimed");
        break;
      }
      const LocalGlobalResult g = kernel_pair_crt(f.ring, a, b);
      bool agree = true;
      for (Method m : {Method::Preimage, Method::Quotient}) agree = agree && kernel_pair_crt(f.ring, a, b, m).glued == g.glued;
      add_check(checks, "method agreement (glued)", agree);
      add_check(checks, "|ker(f1,f2)| = |ker f1| |ker(f1|f2)| over Z/m",
                cardinality_identity(KernelPairResult{g.glued_f1, g.glued_pair, g.glued, Method::Crt}));
      try {
        add_check(checks, "oracle agreement", kernel_pair_oracle(f.ring, a, b) == g.glued);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleTooLarge) throw;
        notes.push_back(std::string("oracle skipped: ") + e.what());
      }
      for (std::size_t i = 0; i < g.crt.size(); ++i) {
        const BaseChangeReport bc = base_change_check(f.ring, a, b, i);
        add_check(checks, prefix(g.crt.primes[i], "base change"), bc.holds,
                  "dim " + std::to_string(bc.reduced.rank()) + " vs " + std::to_string(bc.direct.rank()));
        field_checks(checks, PrimeField(g.crt.primes[i]), reduce_matrix(g.crt, a, i), reduce_matrix(g.crt, b, i), o, rng,
                     g.crt.primes[i], inject && i == 0);
      }
      break;
    }
    case FileRing::PolyGf: {
      const PolyMatrix& a = f.poly(o.name_a);
      const PolyMatrix& b = f.poly(o.name_b);
      check_pair_shapes(a, b);
      poly_checks(checks, poly_ring_of(f.ring), a, b, std::nullopt, inject);
      break;
    }
    case FileRing::PolyZmod: {
      const PolyMatrix& a = f.poly(o.name_a);
      const PolyMatrix& b = f.poly(o.name_b);
      check_pair_shapes(a, b);
      const CrtDecomposition crt = idempotents(f.parameter);
      for (std::size_t i = 0; i < crt.size(); ++i) {
        const u64 p = crt.primes[i];
        poly_checks(checks, PolyRing(PrimeField(p)), reduce_poly_matrix(a, f.parameter, p),
                    reduce_poly_matrix(b, f.parameter, p), p, inject && i == 0);
      }
      break;
    }
  }

  d["checks"] = checks;
  if (!notes.empty()) d["notes"] = notes;
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.at("passed").get<bool>() ? 1 : 0;
  d["passed"] = passed;
  d["failed"] = checks.size() - passed;
  if (passed != checks.size()) out.code = kExitViolation;
  return out;
}

std::string command_echo(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += " ";
    s += argv[i];
  }
  return s;
}

void emit(const Options& o, Json doc, int code, std::ostream& out) {
  if (!doc.contains("status")) doc["status"] = code == kExitOk ? "ok" : "violation";
  doc["exit_status"] = code;
  if (o.json) out << doc.dump(2) << "\n";
  else out << render_plain(doc);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kernels of pairs of linear maps over GF(p), Z/m and GF(p)[z]", "kerpair"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit the full result document as JSON");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--method", o.method, "projection|preimage|quotient|oracle|crt|poly|auto")->capture_default_str();
  app.add_flag("--verify", o.verify, "Run every applicable method and compare");

  auto* kernel = app.add_subcommand("kernel", "Canonical kernel basis of one matrix");
  kernel->add_option("file", o.file)->required();
  kernel->add_option("A", o.name_a)->required();

  auto* pair = app.add_subcommand("kernel-pair", "ker(A|B) = { u : A x + B u = 0 for some x }");
  pair->add_option("file", o.file)->required();
  pair->add_option("A", o.name_a)->required();
  pair->add_option("B", o.name_b)->required();

  auto* idem = app.add_subcommand("idempotents", "Structural idempotents of square-free Z/m");
  idem->add_option("m", o.modulus)->required();

  auto* member = app.add_subcommand("member", "Is u in ker(A|B)? Prints a witness x when it is");
  member->add_option("file", o.file)->required();
  member->add_option("A", o.name_a)->required();
  member->add_option("B", o.name_b)->required();
  member->add_option("u", o.entries, "Entries of u (residues or [c0,c1,...] polynomials)")->required();

  auto* sim = app.add_subcommand("simulate", "Run x(t+1) = A x(t) + B u(t)");
  sim->add_option("file", o.file)->required();
  sim->add_option("A", o.name_a)->required();
  sim->add_option("B", o.name_b)->required();
  sim->add_option("x0", o.x0_file, "File with x(0), or - for zero")->required();
  sim->add_option("inputs", o.u_file, "File with one input vector per line")->required();
  sim->add_option("--steps", o.steps, "Horizon T (default: every input line)");
  sim->add_option("--boundary", o.boundary, "free|periodic|fixed")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run the invariant suite on one instance");
  ver->add_option("file", o.file)->required();
  ver->add_option("A", o.name_a)->required();
  ver->add_option("B", o.name_b)->required();
  ver->add_option("--trials", o.trials, "Random automorphism triples")->capture_default_str();
  ver->add_option("--inject-fault", o.fault)->group("");

  // CLI11 reads a trailing-']' argument as its own list syntax and splits it;
  // a trailing space keeps a polynomial literal whole (tokenize drops it).
  std::vector<std::string> args(argv + 1, argv + argc);
  for (auto& a : args) {
    if (!a.empty() && a.front() == '[' && a.back() == ']') a += ' ';
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Json doc;
  doc["command"] = command_echo(argc, argv);
  try {
    Outcome r;
    if (kernel->parsed()) r = cmd_kernel(o);
    else if (pair->parsed()) r = cmd_kernel_pair(o);
    else if (idem->parsed()) r = cmd_idempotents(o);
    else if (member->parsed()) r = cmd_member(o);
    else if (sim->parsed()) r = cmd_simulate(o);
    else r = cmd_verify(o);
    merge(doc, r.doc);
    emit(o, doc, r.code, out);
    return r.code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    doc["status"] = "error";
    doc["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    if (o.json) {
      emit(o, doc, code, out);
    } else {
      err << "error: " << e.what() << "\n";
    }
    return code;
  }
}

}  // namespace kerpair::cli
