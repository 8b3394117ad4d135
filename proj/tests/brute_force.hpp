#pragma once

// Reference implementations for tests. They do their own modular arithmetic on
// plain vectors and never call the library's linear algebra, so agreement with
// the library is meaningful.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "kerpair/matrix.hpp"

namespace bf {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using VecSet = std::set<Vec>;

// Row-major dense matrix with its own storage.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<u64> a;
  u64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline Mat from(const kerpair::ScalarMatrix& m) {
  Mat out{m.rows(), m.cols(), {}};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.a.push_back(m(i, j));
  return out;
}

inline Vec mul(const Mat& m, const Vec& x, u64 mod) {
  Vec y(m.rows, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    unsigned __int128 s = 0;
    for (std::size_t j = 0; j < m.cols; ++j) s += static_cast<unsigned __int128>(m.at(i, j)) * x[j];
    y[i] = static_cast<u64>(s % mod);
  }
  return y;
}

// Odometer over (Z/m)^n; false after wrapping back to zero.
inline bool next(Vec& v, u64 mod) {
  for (auto& x : v) {
    if (++x < mod) return true;
    x = 0;
  }
  return false;
}

inline VecSet image(const Mat& m, u64 mod) {
  VecSet out;
  Vec x(m.cols, 0);
  do out.insert(mul(m, x, mod));
  while (next(x, mod));
  return out;
}

/// { u : exists x, A x + B u = 0 }, by enumerating Im A once and then every u.
inline VecSet kernel_pair(const kerpair::ScalarMatrix& a, const kerpair::ScalarMatrix& b, u64 mod) {
  const Mat A = from(a), B = from(b);
  const VecSet im = image(A, mod);
  VecSet out;
  Vec u(B.cols, 0);
  do {
    Vec bu = mul(B, u, mod);
    for (auto& v : bu) v = (mod - v) % mod;
    if (im.count(bu)) out.insert(u);
  } while (next(u, mod));
  return out;
}

/// Every pair (x, u) with A x + B u = 0.
inline VecSet joint_kernel(const kerpair::ScalarMatrix& a, const kerpair::ScalarMatrix& b, u64 mod) {
  const Mat A = from(a), B = from(b);
  VecSet out;
  Vec w(A.cols + B.cols, 0);
  do {
    Vec x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(A.cols));
    Vec u(w.begin() + static_cast<std::ptrdiff_t>(A.cols), w.end());
    Vec ax = mul(A, x, mod), bu = mul(B, u, mod);
    bool zero = true;
    for (std::size_t i = 0; i < ax.size(); ++i) zero = zero && (ax[i] + bu[i]) % mod == 0;
    if (zero) out.insert(w);
  } while (next(w, mod));
  return out;
}

/// All Z/m-combinations of the given columns.
inline VecSet span(const std::vector<Vec>& gens, std::size_t n, u64 mod) {
  VecSet out{Vec(n, 0)};
  for (const auto& g : gens) {
    VecSet grown;
    for (const auto& v : out)
      for (u64 c = 0; c < mod; ++c) {
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<u64>((v[i] + static_cast<unsigned __int128>(c) * g[i]) % mod);
        grown.insert(std::move(w));
      }
    out = std::move(grown);
  }
  return out;
}

inline VecSet span(const kerpair::ScalarMatrix& gens, u64 mod) { return span(gens.columns(), gens.rows(), mod); }

// ---------------------------------------------------------------------------
// Random instances.

inline kerpair::ScalarMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, u64 mod) {
  std::uniform_int_distribution<u64> d(0, mod - 1);
  kerpair::ScalarMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

inline kerpair::Poly random_poly(std::mt19937_64& rng, int max_deg, u64 mod) {
  std::uniform_int_distribution<u64> d(0, mod - 1);
  std::uniform_int_distribution<int> deg(-1, max_deg);
  const int n = deg(rng);
  std::vector<u64> c;
  for (int k = 0; k <= n; ++k) c.push_back(d(rng));
  return kerpair::Poly(std::move(c));
}

inline kerpair::PolyMatrix random_poly_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int max_deg,
                                             u64 mod) {
  kerpair::PolyMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_poly(rng, max_deg, mod);
  return m;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace bf
