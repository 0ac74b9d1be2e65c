#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckit/cardinal.hpp"
#include "ckit/pc_group.hpp"

namespace ckit::nilpotent {

/// Coordinates of the central extension 1 -> A -> G -> B -> 1 with A = [G, G].
/// A must be a saturated sublattice of the central generators so that B is
/// free abelian.
struct ExtensionCoordinates {
  std::size_t noncentral = 0;
  std::size_t central = 0;
  std::size_t a_rank = 0;
  std::size_t b_rank = 0;
  IntMatrix a_basis;  // central x a_rank, column Hermite basis of A
  IntMatrix q;        // central x central, [a_basis | complement], unimodular
  IntMatrix q_inv;

  /// Throws InputError when A is not saturated.
  static ExtensionCoordinates of(const PcGroup& g);

  /// Coordinates in B of the image of x.
  IntVector project(const PcWord& x) const;
  /// Coordinates in A of x, or nullopt when x is not in A.
  std::optional<IntVector> a_coordinates(const PcWord& x) const;
  /// Canonical lift of b in B: non-central part from b, central part on the complement.
  PcWord section(std::span<const Integer> b) const;
  PcWord a_element(std::span<const Integer> a) const;
};

struct CentralExtensionData {
  ExtensionCoordinates g1, g2;
  IntMatrix phi_prime, psi_prime;  // a2_rank x a1_rank
  IntMatrix phi_bar, psi_bar;      // b2_rank x b1_rank
};

/// Throws InputError for invalid homs or mismatched groups.
CentralExtensionData central_extension_data(const PcHom& phi, const PcHom& psi);

/// |Im delta| for delta : Coin(phi_bar, psi_bar) -> R(phi', psi'),
/// theta_bar -> [psi(theta) phi(theta)^-1]. Requires R(phi', psi') finite
/// (PreconditionError otherwise); ConsistencyError when a lift leaves A_2.
Cardinal delta_image_order(const PcHom& phi, const PcHom& psi, const CentralExtensionData& data);

/// The delta-images of the coincidence kernel basis, in A_2 coordinates.
std::vector<IntVector> delta_images(const PcHom& phi, const PcHom& psi, const CentralExtensionData& data);

enum class NilpotentStatus { ok, unsupported_reduction };

struct NilpotentReport {
  NilpotentStatus status = NilpotentStatus::ok;
  Cardinal value;
  Cardinal r_prime;  // R(phi', psi')
  Cardinal r_bar;    // R(phi_bar, psi_bar)
  std::optional<Cardinal> im_delta;
  /// rk Im(phi' - psi') == rk A_2
  bool r_prime_rank_test = false;
  /// rk Coin(phi', psi') == rk A_1 - rk A_2
  bool coin_rank_hypothesis = false;
  std::string unsupported_reason;
  CentralExtensionData data;
  std::vector<std::string> trace;
};

NilpotentReport reid_nilpotent(const PcHom& phi, const PcHom& psi);

/// R(phi_1, ..., phi_k) as R(F, G) with F = (phi_1, ..., phi_1) and
/// G = (phi_2, ..., phi_k) into the (k-1)-th direct power of the codomain.
NilpotentReport reid_nilpotent_multi(std::span<const PcHom> homs);

/// F and G for the homs above.
std::pair<PcHom, PcHom> stacked_pair(std::span<const PcHom> homs);

/// Independent recount: searches the domain in the box |exponent| <= bound
/// for elements g with psi(g) phi(g)^-1 in A_2, identifies the classes of
/// R(phi', psi') they connect, and returns (number of identified classes) x R_bar.
/// Only meaningful when R(phi', psi') and R_bar are finite.
struct RecountResult {
  Cardinal identified_classes;
  Cardinal value;
  std::size_t searched = 0;
};
RecountResult recount_by_search(const PcHom& phi, const PcHom& psi, long bound);

/// Largest per-coordinate bound keeping the search box under `budget` elements.
long default_search_bound(const PcGroup& domain, std::size_t budget = 50'000);

}  // namespace ckit::nilpotent
