// Column Hermite form and the lattice operations built on it.

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"

namespace ckit::linalg {

ColumnHermite column_hermite_form(const IntMatrix& m, bool with_transform) {
  IntMatrix h = m;
  std::optional<IntMatrix> u;
  if (with_transform) u = IntMatrix::identity(m.cols());

  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
    h.add_col_multiple(dst, src, f);
    if (u) u->add_col_multiple(dst, src, f);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    h.swap_cols(a, b);
    if (u) u->swap_cols(a, b);
  };

  std::vector<std::size_t> pivots;
  std::size_t col = 0;
  Integer q;
  for (std::size_t p = 0; p < h.rows() && col < h.cols(); ++p) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best = h.cols();
      for (std::size_t j = col; j < h.cols(); ++j)
        if (sgn(h(p, j)) != 0 && (best == h.cols() || mpz_cmpabs(h(p, j).get_mpz_t(), h(p, best).get_mpz_t()) < 0)) best = j;
      if (best == h.cols()) break;
      has_pivot = true;
      col_swap(col, best);
      bool residue = false;
      for (std::size_t j = col + 1; j < h.cols(); ++j) {
        if (sgn(h(p, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), h(p, j).get_mpz_t(), h(p, col).get_mpz_t());
        col_op(j, col, Integer(-q));
        if (sgn(h(p, j)) != 0) residue = true;
      }
      if (!residue) break;
    }
    if (!has_pivot) continue;
    if (sgn(h(p, col)) < 0) {
      h.negate_col(col);
      if (u) u->negate_col(col);
    }
    for (std::size_t j = 0; j < col; ++j) {
      mpz_fdiv_q(q.get_mpz_t(), h(p, j).get_mpz_t(), h(p, col).get_mpz_t());
      col_op(j, col, Integer(-q));
    }
    pivots.push_back(p);
    ++col;
  }
  return ColumnHermite{h.block(0, 0, h.rows(), col), std::move(pivots), std::move(u)};
}

std::optional<IntVector> lattice_coordinates(const ColumnHermite& h, IntVector v) {
  if (v.size() != h.ambient()) throw ShapeError("lattice_coordinates: vector length mismatch");
  IntVector coords(h.rank());
  for (std::size_t j = 0; j < h.rank(); ++j) {
    const std::size_t p = h.pivot_rows[j];
    const Integer& pivot = h.basis(p, j);
    if (!mpz_divisible_p(v[p].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    mpz_divexact(coords[j].get_mpz_t(), v[p].get_mpz_t(), pivot.get_mpz_t());
    for (std::size_t r = p; r < v.size(); ++r) v[r] -= coords[j] * h.basis(r, j);
  }
  for (const auto& x : v)
    if (sgn(x) != 0) return std::nullopt;
  return coords;
}

IntVector reduce_modulo(const ColumnHermite& h, IntVector v) {
  if (v.size() != h.ambient()) throw ShapeError("reduce_modulo: vector length mismatch");
  Integer q;
  for (std::size_t j = 0; j < h.rank(); ++j) {
    const std::size_t p = h.pivot_rows[j];
    mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), h.basis(p, j).get_mpz_t());
    if (sgn(q) == 0) continue;
    for (std::size_t r = p; r < v.size(); ++r) v[r] -= q * h.basis(r, j);
  }
  return v;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  const auto h = column_hermite_form(m, true);
  std::vector<IntVector> kernel;
  for (std::size_t c = h.rank(); c < m.cols(); ++c) kernel.push_back(h.transform->column(c));
  if (kernel.empty()) return kernel;
  return column_hermite_form(IntMatrix::from_columns(kernel, m.cols())).basis.columns();
}

}  // namespace ckit::linalg
