#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ckit/cardinal.hpp"
#include "ckit/int_matrix.hpp"

namespace ckit::linalg {

/// Unimodular reduction s * m * t = d with d diagonal and
/// divisors[0] | divisors[1] | ... all positive.
struct SnfResult {
  IntMatrix s;
  IntMatrix t;
  IntMatrix d;
  std::vector<Integer> divisors;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Elementary divisors from gcds of k x k minors. Shares no code with
/// smith_normal_form; exponential in min(rows, cols), meant for small matrices.
std::vector<Integer> elementary_divisors_via_minors(const IntMatrix& m);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const IntMatrix& m);

/// Exact determinant (Bareiss). Throws ShapeError for non-square input.
Integer determinant(const IntMatrix& m);

/// Basis of {v : m v = 0} over the integers, in column-Hermite canonical form.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// #(Z^rows / m Z^cols).
Cardinal cokernel_order(const IntMatrix& m);

/// Inverse of a unimodular square matrix. Throws PreconditionError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Lower column-echelon (Hermite) form of the lattice spanned by the columns
/// of a matrix. Column j has its leading nonzero entry at `pivot_rows[j]`,
/// strictly positive, and earlier columns are reduced into [0, pivot) there.
struct ColumnHermite {
  IntMatrix basis;                     // ambient x rank
  std::vector<std::size_t> pivot_rows;
  /// Column operations applied: m * transform == [basis | 0]. Only filled
  /// when requested.
  std::optional<IntMatrix> transform;

  std::size_t rank() const { return pivot_rows.size(); }
  std::size_t ambient() const { return basis.rows(); }
};

ColumnHermite column_hermite_form(const IntMatrix& m, bool with_transform = false);

/// Coordinates of v in the Hermite basis, or nullopt if v is not in the lattice.
std::optional<IntVector> lattice_coordinates(const ColumnHermite& h, IntVector v);

/// Canonical residue of v modulo the lattice: 0 <= v[p] < pivot at every pivot row.
IntVector reduce_modulo(const ColumnHermite& h, IntVector v);

/// Index [L(super) : L(sub)], vectors given as lists of equal-length vectors.
/// Infinite when the ranks differ. Throws ContainmentError when some sub
/// vector is not in L(super).
Cardinal lattice_index(std::span<const IntVector> sub, std::span<const IntVector> super);

/// Canonical representatives of Z^rows / m Z^cols, found breadth-first from 0
/// by adding unit vectors and reducing against the Hermite basis. Requires a
/// finite cokernel; throws SizeError when more than `cap` classes are found.
std::vector<IntVector> enumerate_cokernel(const IntMatrix& m, std::size_t cap);

}  // namespace ckit::linalg
