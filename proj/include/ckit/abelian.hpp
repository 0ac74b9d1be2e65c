#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckit/cardinal.hpp"
#include "ckit/int_matrix.hpp"

/// Reidemeister coincidence numbers for homomorphisms Z^m -> Z^n, i.e. for
/// maps into tori.
namespace ckit::abelian {

/// A homomorphism Z^m -> Z^n as its n x m matrix (column j is the image of the
/// j-th domain generator).
struct AbelianHom {
  IntMatrix matrix;

  std::size_t target_rank() const { return matrix.rows(); }
  std::size_t domain_rank() const { return matrix.cols(); }
};

/// Ordered tuple (phi_1, ..., phi_k), k >= 2, of homomorphisms of one shape.
class AbelianSystem {
 public:
  /// Throws PreconditionError for k < 2, ShapeError for mixed shapes.
  explicit AbelianSystem(std::vector<AbelianHom> homs);

  std::size_t size() const { return homs_.size(); }
  const AbelianHom& operator[](std::size_t i) const { return homs_[i]; }
  std::span<const AbelianHom> homs() const { return homs_; }
  std::size_t target_rank() const { return homs_.front().target_rank(); }
  std::size_t domain_rank() const { return homs_.front().domain_rank(); }

 private:
  std::vector<AbelianHom> homs_;
};

struct ReidemeisterReport {
  Cardinal value;
  /// R(phi_1, phi_j) for j = 2..k.
  std::vector<Cardinal> pairwise;
  /// |ker Psi|, present when value is finite.
  std::optional<Cardinal> ker_psi_order;
  std::vector<std::string> trace;
};

/// The (k-1)n x m matrix whose j-th block of n rows is phi_{j+1} - phi_1.
IntMatrix stacked_difference(const AbelianSystem& system);

/// #coker(psi - phi). Throws ShapeError on mismatched shapes.
Cardinal reid_pair(const AbelianHom& phi, const AbelianHom& psi);

ReidemeisterReport reid_multi(const AbelianSystem& system);

/// Order of the kernel of Psi : R(phi_1..phi_k) -> prod_j R(phi_1, phi_j),
/// computed as the index of the image of the stacked difference inside the
/// product of the blockwise images. Throws PreconditionError when the
/// multi-map number is infinite.
Cardinal ker_psi_order(const AbelianSystem& system);

/// Same quantity by brute force: enumerate the cokernel of the stacked
/// difference and count classes whose every block lies in the image of its
/// own difference. Throws SizeError beyond `cap` classes.
Cardinal ker_psi_order_enumerated(const AbelianSystem& system, std::size_t cap = 1'000'000);

/// Reorders the homomorphisms: result[i] = system[sigma[i]] (0-based).
AbelianSystem permute_system(const AbelianSystem& system, std::span<const std::size_t> sigma);

struct DivisibilityReport {
  Cardinal multi;
  std::vector<Cardinal> pairwise;
  /// False when the multi-map number is infinite; the remaining verdicts are
  /// then meaningless.
  bool applicable = false;
  bool pairwise_all_finite = false;
  Cardinal pairwise_product;
  /// Product of pairwise numbers divides the multi-map number.
  bool product_divides = false;
  std::optional<Cardinal> quotient;
  std::optional<Cardinal> ker_psi;
  bool quotient_matches_ker_psi = false;

  /// R of the system with hom i dropped, i = 0..k-1 (only for k >= 3).
  std::vector<Cardinal> leave_one_out;
  Cardinal leave_one_out_product;
  bool leave_one_out_divides = false;
};

DivisibilityReport divisibility_report(const AbelianSystem& system);

/// Annotation attached to every report for torus and nilmanifold targets.
inline constexpr const char* kJiangAnnotation =
    "N(f1,...,fk) in {0, R(f1,...,fk)} (Jiang-type dichotomy; not decided here)";

}  // namespace ckit::abelian
