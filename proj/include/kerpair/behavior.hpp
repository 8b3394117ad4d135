#pragma once

// Linear systems x(t+1) = A x(t) + B u(t) over a finite ring, read as the
// kernel pair ker(sigma I - A | B): an input sequence u is admissible (a
// codeword) when some state sequence x makes the recursion hold. Bi-infinite
// sequences are modelled at finite horizon T under three boundary regimes, and
// by the polynomial picture over GF(p)[z].

#include <optional>
#include <vector>

#include "kerpair/poly_matrix.hpp"

namespace kerpair {

struct SystemPair {
  RingSpec ring;
  ScalarMatrix a;  // n x n
  ScalarMatrix b;  // n x m

  std::size_t states() const noexcept { return a.rows(); }
  std::size_t inputs() const noexcept { return b.cols(); }
};

/// Validates shapes and that the ring is finite.
SystemPair make_system(const RingSpec& ring, ScalarMatrix a, ScalarMatrix b);

struct Trajectory {
  std::vector<std::vector<u64>> states;  // x(0) .. x(T)
  std::vector<std::vector<u64>> inputs;  // u(0) .. u(T-1)

  std::size_t horizon() const noexcept { return inputs.size(); }
};

Trajectory simulate(const SystemPair& sys, const std::vector<u64>& x0, const std::vector<std::vector<u64>>& inputs);

/// True iff x(t+1) = A x(t) + B u(t) for every step.
bool satisfies_recursion(const SystemPair& sys, const Trajectory& traj);

enum class Boundary { FreeInitial, Periodic, FixedInitial };

struct AdmissibleInputQuery {
  std::vector<std::vector<u64>> inputs;
  Boundary boundary = Boundary::FreeInitial;
  std::vector<u64> x0;  // FixedInitial only
};

/// A witnessing trajectory, or nullopt (only possible for Periodic, where
/// x(T) = x(0) is required). Periodic mode solves
///   (A^T - I) x(0) = -sum_t A^(T-1-t) B u(t)
/// over GF(p), prime by prime over square-free Z/m, and by enumerating x(0)
/// otherwise; all subject to |ring|^n <= 10^6.
std::optional<Trajectory> admissible(const SystemPair& sys, const AdmissibleInputQuery& query);

struct ConsistencyReport {
  std::size_t pencil_kernel_rank = 0;  // rank ker(zI - A), expected 0
  std::size_t joint_rank = 0;          // rank ker(zI - A, B)
  std::size_t bar_rank = 0;            // rank ker(zI - A | B)
  std::size_t probed = 0;              // degree-bounded inputs checked
  std::size_t witnessed = 0;           // of which had a polynomial witness
  bool ok() const noexcept { return pencil_kernel_rank == 0 && joint_rank == bar_rank && probed == witnessed; }
  void require() const;
};

/// Over GF(p): the pencil zI - A has trivial kernel, joint and admissible-input
/// kernels have equal rank, and every admissible input of degree <= D (a
/// GF(p)-basis of that space) has a polynomial state witness.
ConsistencyReport codeword_consistency(const SystemPair& sys, std::size_t degree_bound);

}  // namespace kerpair
