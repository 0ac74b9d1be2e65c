// Smith normal form, determinants, ranks and the gcd-of-minors oracle.

#include <algorithm>
#include <numeric>

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"

namespace ckit::linalg {

namespace {

// Moves the nonzero entry of least absolute value in the trailing submatrix
// starting at (p, p) onto the diagonal. Returns false if the submatrix is zero.
bool move_min_pivot(IntMatrix& d, IntMatrix& s, IntMatrix& t, std::size_t p) {
  std::size_t best_r = 0, best_c = 0;
  bool found = false;
  for (std::size_t r = p; r < d.rows(); ++r)
    for (std::size_t c = p; c < d.cols(); ++c) {
      if (sgn(d(r, c)) == 0) continue;
      if (!found || mpz_cmpabs(d(r, c).get_mpz_t(), d(best_r, best_c).get_mpz_t()) < 0) {
        best_r = r;
        best_c = c;
        found = true;
      }
    }
  if (!found) return false;
  d.swap_rows(p, best_r);
  s.swap_rows(p, best_r);
  d.swap_cols(p, best_c);
  t.swap_cols(p, best_c);
  return true;
}

// Clears row p and column p outside the pivot by truncated division.
// Returns true if everything cleared; otherwise a remainder smaller than the
// pivot is left behind.
bool clear_cross(IntMatrix& d, IntMatrix& s, IntMatrix& t, std::size_t p) {
  bool clean = true;
  Integer q;
  for (std::size_t r = p + 1; r < d.rows(); ++r) {
    if (sgn(d(r, p)) == 0) continue;
    mpz_tdiv_q(q.get_mpz_t(), d(r, p).get_mpz_t(), d(p, p).get_mpz_t());
    q = -q;
    d.add_row_multiple(r, p, q);
    s.add_row_multiple(r, p, q);
    if (sgn(d(r, p)) != 0) clean = false;
  }
  for (std::size_t c = p + 1; c < d.cols(); ++c) {
    if (sgn(d(p, c)) == 0) continue;
    mpz_tdiv_q(q.get_mpz_t(), d(p, c).get_mpz_t(), d(p, p).get_mpz_t());
    q = -q;
    d.add_col_multiple(c, p, q);
    t.add_col_multiple(c, p, q);
    if (sgn(d(p, c)) != 0) clean = false;
  }
  return clean;
}

// Looks for an entry of the trailing block not divisible by the pivot and, if
// found, folds its row into the pivot row.
bool fix_divisibility(IntMatrix& d, IntMatrix& s, std::size_t p) {
  for (std::size_t r = p + 1; r < d.rows(); ++r)
    for (std::size_t c = p + 1; c < d.cols(); ++c) {
      if (mpz_divisible_p(d(r, c).get_mpz_t(), d(p, p).get_mpz_t())) continue;
      d.add_row_multiple(p, r, Integer(1));
      s.add_row_multiple(p, r, Integer(1));
      return true;
    }
  return false;
}

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > n) return;
  for (;;) {
    f(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfResult res{IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), m, {}};
  IntMatrix& d = res.d;
  const std::size_t diag = std::min(m.rows(), m.cols());
  for (std::size_t p = 0; p < diag; ++p) {
    if (!move_min_pivot(d, res.s, res.t, p)) break;
    for (;;) {
      if (!clear_cross(d, res.s, res.t, p)) {
        move_min_pivot(d, res.s, res.t, p);
        continue;
      }
      if (fix_divisibility(d, res.s, p)) continue;
      break;
    }
    if (sgn(d(p, p)) < 0) {
      d.negate_row(p);
      res.s.negate_row(p);
    }
    res.divisors.push_back(d(p, p));
  }
  return res;
}

std::vector<Integer> elementary_divisors_via_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer previous = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for_each_combination(m.rows(), k, [&](std::span<const std::size_t> rows) {
      for_each_combination(m.cols(), k, [&](std::span<const std::size_t> cols) {
        if (g == 1) return;
        g = gcd(g, determinant(m.select(rows, cols)));
      });
    });
    if (sgn(g) == 0) break;
    Integer l;
    mpz_divexact(l.get_mpz_t(), g.get_mpz_t(), previous.get_mpz_t());
    out.push_back(l);
    previous = g;
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square())
    throw ShapeError("determinant of a " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + " matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a(r, k)) == 0) ++r;
      if (r == n) return Integer(0);
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Integer content = 0;
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        a(i, j) = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        content = gcd(content, a(i, j));
      }
      a(i, c) = 0;
      if (content > 1)
        for (std::size_t j = c + 1; j < a.cols(); ++j)
          mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), content.get_mpz_t());
    }
    ++r;
  }
  return r;
}

Cardinal cokernel_order(const IntMatrix& m) {
  if (m.rows() == 0) return Cardinal(1L);
  const auto snf = smith_normal_form(m);
  if (snf.divisors.size() < m.rows()) return Cardinal::infinite();
  Integer product = 1;
  for (const auto& l : snf.divisors) product *= l;
  return Cardinal(product);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_square()) throw PreconditionError("unimodular_inverse: matrix is not square");
  auto snf = smith_normal_form(m);
  if (snf.d != IntMatrix::identity(m.rows()))
    throw PreconditionError("unimodular_inverse: matrix is not unimodular");
  return snf.t * snf.s;
}

}  // namespace ckit::linalg
