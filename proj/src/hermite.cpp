#include "kerpair/hermite.hpp"

#include <algorithm>
#include <numeric>

namespace kerpair {

namespace {

// col_dst -= f * col_src, applied to the working matrix and the transform.
void axpy_column(const PolyRing& R, PolyMatrix& m, std::size_t dst, std::size_t src, const Poly& f) {
  if (f.is_zero()) return;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, src).is_zero()) continue;
    m(i, dst) = R.sub(m(i, dst), R.mul(f, m(i, src)));
  }
}

void scale_column(const PolyRing& R, PolyMatrix& m, std::size_t col, u64 c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, col) = R.scale(m(i, col), c);
}

}  // namespace

HermiteForm hermite_form(const PolyRing& R, const PolyMatrix& generators) {
  const std::size_t q = generators.rows();
  const std::size_t n = generators.cols();
  PolyMatrix w = generators;
  PolyMatrix u = identity(R, n);

  // Columns [0, active_end) have not received a pivot yet; pivoted columns are
  // parked at the right end, the most recent one leftmost.
  std::size_t active_end = n;
  std::vector<std::size_t> pivot_row_of_slot(n, 0);

  for (std::size_t i = q; i-- > 0 && active_end > 0;) {
    // Euclid across the active columns until at most one is nonzero in row i.
    while (true) {
      std::size_t best = active_end;
      std::size_t nonzero = 0;
      for (std::size_t c = 0; c < active_end; ++c) {
        if (w(i, c).is_zero()) continue;
        ++nonzero;
        if (best == active_end || w(i, c).deg() < w(i, best).deg()) best = c;
      }
      if (nonzero <= 1) break;
      for (std::size_t c = 0; c < active_end; ++c) {
        if (c == best || w(i, c).is_zero()) continue;
        Poly quot = R.divmod(w(i, c), w(i, best)).first;
        axpy_column(R, w, c, best, quot);
        axpy_column(R, u, c, best, quot);
      }
    }
    std::size_t piv = active_end;
    for (std::size_t c = 0; c < active_end; ++c) {
      if (!w(i, c).is_zero()) piv = c;
    }
    if (piv == active_end) continue;

    const std::size_t slot = active_end - 1;
    w.swap_cols(piv, slot);
    u.swap_cols(piv, slot);
    const u64 lead_inv = *R.coefficients().inverse(w(i, slot).leading());
    scale_column(R, w, slot, lead_inv);
    scale_column(R, u, slot, lead_inv);
    pivot_row_of_slot[slot] = i;
    active_end = slot;

    // Reduce the row-i entries of the columns pivoted earlier (lower pivots).
    for (std::size_t c = slot + 1; c < n; ++c) {
      if (w(i, c).is_zero()) continue;
      Poly quot = R.divmod(w(i, c), w(i, slot)).first;
      axpy_column(R, w, c, slot, quot);
      axpy_column(R, u, c, slot, quot);
    }
  }

  // Slots [active_end, n) hold the pivoted columns in increasing pivot-row
  // order (the slot filled last has the smallest pivot row). Move them to the
  // front and the zero columns to the back.
  const std::size_t r = n - active_end;
  std::vector<std::size_t> order;
  for (std::size_t s = active_end; s < n; ++s) order.push_back(s);
  for (std::size_t s = 0; s < active_end; ++s) order.push_back(s);

  HermiteForm out;
  out.basis = PolyMatrix(q, r);
  out.transform = PolyMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t s = order[k];
    if (k < r) {
      for (std::size_t i = 0; i < q; ++i) out.basis(i, k) = w(i, s);
      out.pivot_rows.push_back(pivot_row_of_slot[s]);
    }
    for (std::size_t i = 0; i < n; ++i) out.transform(i, k) = u(i, s);
  }
  return out;
}

std::optional<std::vector<Poly>> hermite_divide(const PolyRing& R, const HermiteForm& h, const std::vector<Poly>& v) {
  if (v.size() != h.basis.rows()) throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
  std::vector<Poly> residual = v;
  std::vector<Poly> coords(h.rank());
  for (std::size_t j = h.rank(); j-- > 0;) {
    const std::size_t pr = h.pivot_rows[j];
    const std::size_t upper = (j + 1 < h.rank()) ? h.pivot_rows[j + 1] : residual.size();
    for (std::size_t i = pr + 1; i < upper; ++i) {
      if (!residual[i].is_zero()) return std::nullopt;
    }
    auto [quot, rem] = R.divmod(residual[pr], h.basis(pr, j));
    if (!rem.is_zero()) return std::nullopt;
    for (std::size_t i = 0; i <= pr; ++i) residual[i] = R.sub(residual[i], R.mul(quot, h.basis(i, j)));
    coords[j] = std::move(quot);
  }
  if (!is_zero(R, residual)) return std::nullopt;
  return coords;
}

std::size_t rational_rank(const PolyRing& R, const PolyMatrix& a) {
  PolyMatrix w = a;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < w.cols() && rank < w.rows(); ++c) {
    std::size_t sel = w.rows();
    for (std::size_t i = rank; i < w.rows(); ++i) {
      if (!w(i, c).is_zero() && (sel == w.rows() || w(i, c).deg() < w(sel, c).deg())) sel = i;
    }
    if (sel == w.rows()) continue;
    w.swap_rows(sel, rank);
    const Poly pivot = w(rank, c);
    for (std::size_t i = rank + 1; i < w.rows(); ++i) {
      if (w(i, c).is_zero()) continue;
      const Poly f = w(i, c);
      Poly content;
      for (std::size_t j = c; j < w.cols(); ++j) {
        w(i, j) = R.sub(R.mul(pivot, w(i, j)), R.mul(f, w(rank, j)));
        content = R.gcd(content, w(i, j));
      }
      // Dividing out the row content keeps degrees from compounding.
      if (!content.is_zero() && content.deg() > 0) {
        for (std::size_t j = c; j < w.cols(); ++j) w(i, j) = R.divmod(w(i, j), content).first;
      }
    }
    ++rank;
  }
  return rank;
}

int max_degree(const PolyMatrix& a) {
  int d = -1;
  for (const auto& e : a.data()) d = std::max(d, e.deg());
  return d;
}

std::vector<int> column_degrees(const PolyMatrix& a) {
  std::vector<int> out(a.cols(), -1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out[j] = std::max(out[j], a(i, j).deg());
  return out;
}

}  // namespace kerpair
