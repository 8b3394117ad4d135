#include "kerpair/behavior.hpp"

#include <string>

namespace kerpair {

SystemPair make_system(const RingSpec& ring, ScalarMatrix a, ScalarMatrix b) {
  if (!ring.is_finite()) throw Error(ErrorKind::NotFinite, "systems are simulated over finite rings, not " + ring.describe());
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "state matrix A must be square");
  if (b.rows() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "B must have as many rows as A");
  for (const auto* m : {&a, &b})
    for (u64 v : m->data()) {
      if (v >= ring.modulus) throw Error(ErrorKind::RingMismatch, "matrix entry outside " + ring.describe());
    }
  return SystemPair{ring, std::move(a), std::move(b)};
}

namespace {

std::vector<u64> step(const Zmod& Z, const SystemPair& sys, const std::vector<u64>& x, const std::vector<u64>& u) {
  return add(Z, apply(Z, sys.a, x), apply(Z, sys.b, u));
}

void check_inputs(const SystemPair& sys, const std::vector<std::vector<u64>>& inputs) {
  for (const auto& u : inputs) {
    if (u.size() != sys.inputs()) {
      throw Error(ErrorKind::DimensionMismatch, "input vector of length " + std::to_string(u.size()) + ", expected " +
                                                    std::to_string(sys.inputs()));
    }
  }
}

// Some x with M x = rhs over the system ring, for the periodic boundary.
std::optional<std::vector<u64>> solve_over_ring(const RingSpec& ring, const ScalarMatrix& m, const std::vector<u64>& rhs) {
  if (ring.kind == RingKind::PrimeField) return solve(PrimeField(ring.modulus), m, rhs);
  const Zmod Z(ring.modulus);
  if (ring.decomposable) {
    const CrtDecomposition crt = idempotents(ring.modulus);
    std::vector<std::vector<u64>> local;
    for (std::size_t i = 0; i < crt.size(); ++i) {
      const PrimeField F(crt.primes[i]);
      std::vector<u64> r(rhs.size());
      for (std::size_t k = 0; k < rhs.size(); ++k) r[k] = F.reduce(rhs[k]);
      auto x = solve(F, reduce_matrix(crt, m, i), r);
      if (!x) return std::nullopt;
      local.push_back(std::move(*x));
    }
    std::vector<u64> x(m.cols());
    for (std::size_t k = 0; k < x.size(); ++k) {
      std::vector<u64> residues;
      for (const auto& l : local) residues.push_back(l[k]);
      x[k] = crt.glue(residues);
    }
    return x;
  }
  std::vector<u64> x(m.cols(), 0);
  while (true) {
    if (apply(Z, m, x) == rhs) return x;
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == ring.modulus) x[k++] = 0;
    if (k == x.size()) return std::nullopt;
  }
}

}  // namespace

Trajectory simulate(const SystemPair& sys, const std::vector<u64>& x0, const std::vector<std::vector<u64>>& inputs) {
  if (x0.size() != sys.states()) throw Error(ErrorKind::DimensionMismatch, "initial state has the wrong length");
  check_inputs(sys, inputs);
  const Zmod Z(sys.ring.modulus);
  Trajectory traj;
  traj.inputs = inputs;
  traj.states.push_back(x0);
  for (const auto& u : inputs) traj.states.push_back(step(Z, sys, traj.states.back(), u));
  return traj;
}

bool satisfies_recursion(const SystemPair& sys, const Trajectory& traj) {
  if (traj.states.size() != traj.inputs.size() + 1) return false;
  const Zmod Z(sys.ring.modulus);
  for (std::size_t t = 0; t < traj.inputs.size(); ++t) {
    if (step(Z, sys, traj.states[t], traj.inputs[t]) != traj.states[t + 1]) return false;
  }
  return true;
}

std::optional<Trajectory> admissible(const SystemPair& sys, const AdmissibleInputQuery& query) {
  check_inputs(sys, query.inputs);
  const std::size_t n = sys.states();
  switch (query.boundary) {
    case Boundary::FreeInitial: return simulate(sys, std::vector<u64>(n, 0), query.inputs);
    case Boundary::FixedInitial: return simulate(sys, query.x0, query.inputs);
    case Boundary::Periodic: break;
  }

  double space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(sys.ring.modulus);
  if (space > static_cast<double>(kOracleGuard)) {
    throw Error(ErrorKind::OracleTooLarge, "periodic search space |ring|^n exceeds 10^6");
  }
  const Zmod Z(sys.ring.modulus);
  const std::size_t horizon = query.inputs.size();
  // x(T) = A^T x(0) + sum_t A^(T-1-t) B u(t); accumulate the forced part by
  // running the recursion from zero.
  const std::vector<u64> forced = simulate(sys, std::vector<u64>(n, 0), query.inputs).states.back();
  ScalarMatrix power = identity(Z, n);
  for (std::size_t t = 0; t < horizon; ++t) power = multiply(Z, sys.a, power);
  const ScalarMatrix lhs = add(Z, power, negate(Z, identity(Z, n)));
  auto x0 = solve_over_ring(sys.ring, lhs, negate(Z, forced));
  if (!x0) return std::nullopt;
  Trajectory traj = simulate(sys, *x0, query.inputs);
  if (traj.states.back() != traj.states.front()) {
    throw Error(ErrorKind::ConsistencyViolated, "periodic witness does not close up");
  }
  return traj;
}

void ConsistencyReport::require() const {
  if (ok()) return;
  throw Error(ErrorKind::ConsistencyViolated,
              "rank ker(zI-A)=" + std::to_string(pencil_kernel_rank) + ", rank ker(zI-A,B)=" + std::to_string(joint_rank) +
                  ", rank ker(zI-A|B)=" + std::to_string(bar_rank) + ", witnessed " + std::to_string(witnessed) + "/" +
                  std::to_string(probed));
}

ConsistencyReport codeword_consistency(const SystemPair& sys, std::size_t degree_bound) {
  const PrimeField F = field_of(sys.ring);
  const PolyRing R(F);
  const PolyMatrix zia = pencil(R, sys.a);
  const PolyMatrix b = to_poly_matrix(R, sys.b);
  const PolyKernelPair kp = kernel_pair_poly(R, zia, b);

  ConsistencyReport rep;
  rep.pencil_kernel_rank = kp.result.ker_f1.rank();
  rep.joint_rank = kp.result.ker_pair.rank();
  rep.bar_rank = kp.result.ker_bar.rank();

  // (zI - A)^-1 is strictly proper, so admissible u of degree <= D come with
  // x of degree < D: the degree-<=D joint kernel projects onto them.
  const std::size_t n = sys.states();
  for (const auto& joint : bounded_kernel(R, hcat(zia, b), degree_bound)) {
    std::vector<Poly> u(joint.begin() + static_cast<std::ptrdiff_t>(n), joint.end());
    ++rep.probed;
    if (poly_member(R, zia, b, kp, u)) ++rep.witnessed;
  }
  return rep;
}

}  // namespace kerpair
