#include "kerpair/field_linalg.hpp"

namespace kerpair {

namespace {

// The transform is only tracked when asked for: column_echelon runs this on
// tall generator lists where a rows x rows transform would be wasteful.
RrefResult rref_impl(const PrimeField& F, const ScalarMatrix& a, bool track_transform) {
  RrefResult out{a, 0, {}, track_transform ? identity(F, a.rows()) : ScalarMatrix(a.rows(), 0)};
  ScalarMatrix& r = out.reduced;
  ScalarMatrix& t = out.transform;
  const std::size_t rows = r.rows();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < r.cols() && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && r(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    r.swap_rows(sel, pivot_row);
    if (track_transform) t.swap_rows(sel, pivot_row);

    const u64 inv = F.inv(r(pivot_row, c));
    for (auto& x : r.row(pivot_row)) x = F.mul(x, inv);
    for (auto& x : t.row(pivot_row)) x = F.mul(x, inv);

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row || r(i, c) == 0) continue;
      const u64 f = r(i, c);
      for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = F.sub(r(i, j), F.mul(f, r(pivot_row, j)));
      for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = F.sub(t(i, j), F.mul(f, t(pivot_row, j)));
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

}  // namespace

RrefResult rref(const PrimeField& F, const ScalarMatrix& a) { return rref_impl(F, a, true); }

std::size_t rank(const PrimeField& F, const ScalarMatrix& a) { return rref_impl(F, a, false).rank; }

std::optional<std::vector<u64>> solve(const PrimeField& F, const ScalarMatrix& a, const std::vector<u64>& b) {
  if (b.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                    std::to_string(a.rows()) + " rows");
  }
  const RrefResult rr = rref(F, a);
  const std::vector<u64> tb = apply(F, rr.transform, b);
  for (std::size_t i = rr.rank; i < tb.size(); ++i) {
    if (tb[i] != 0) return std::nullopt;
  }
  std::vector<u64> x(a.cols(), 0);
  for (std::size_t k = 0; k < rr.rank; ++k) x[rr.pivot_cols[k]] = tb[k];
  return x;
}

std::optional<ScalarMatrix> inverse(const PrimeField& F, const ScalarMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  RrefResult rr = rref(F, a);
  if (rr.rank != a.rows()) return std::nullopt;
  return rr.transform;
}

ScalarMatrix nullspace_basis(const PrimeField& F, const ScalarMatrix& a) {
  const RrefResult rr = rref(F, a);
  const std::size_t q = a.cols();
  std::vector<bool> is_pivot(q, false);
  for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < q; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(q, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < rr.rank; ++k) v[rr.pivot_cols[k]] = F.neg(rr.reduced(k, free));
    basis.push_back(std::move(v));
  }
  return ScalarMatrix::from_columns(q, basis);
}

ScalarMatrix column_echelon(const PrimeField& F, const ScalarMatrix& generators) {
  const RrefResult rr = rref_impl(F, generators.transpose(), false);
  return rr.reduced.block(0, 0, rr.rank, generators.rows()).transpose();
}

std::vector<std::size_t> column_pivots(const ScalarMatrix& echelon) {
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < echelon.cols(); ++j) {
    std::size_t i = 0;
    while (i < echelon.rows() && echelon(i, j) == 0) ++i;
    pivots.push_back(i);
  }
  return pivots;
}

std::optional<std::vector<u64>> echelon_coordinates(const PrimeField& F, const ScalarMatrix& echelon,
                                                    const std::vector<u64>& v) {
  if (v.size() != echelon.rows()) throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
  // Pivot entries are 1 and every other column vanishes there, so the
  // coordinates are just v read off at the pivot rows.
  const auto pivots = column_pivots(echelon);
  std::vector<u64> coords(echelon.cols());
  std::vector<u64> residual = v;
  for (std::size_t j = 0; j < echelon.cols(); ++j) {
    coords[j] = v[pivots[j]];
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = F.sub(residual[i], F.mul(coords[j], echelon(i, j)));
  }
  if (!is_zero(F, residual)) return std::nullopt;
  return coords;
}

}  // namespace kerpair
