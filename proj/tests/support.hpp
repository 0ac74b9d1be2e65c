#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ckit/abelian.hpp"
#include "ckit/finite_group.hpp"
#include "ckit/int_matrix.hpp"
#include "ckit/pc_group.hpp"

namespace ckit::testing {

using Rng = std::mt19937_64;

/// Tally of one randomized property run.
struct PropertyOutcome {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
  void fail(const std::string& what);
  std::string summary() const;
};

long uniform(Rng& rng, long lo, long hi);
IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi);
abelian::AbelianSystem random_system(Rng& rng, std::size_t k, std::size_t target, std::size_t domain,
                                     long lo, long hi);
std::vector<std::vector<std::size_t>> all_permutations(std::size_t k);

// small codomains for the finite engine
finite::FiniteGroup symmetric_group(std::size_t n);
finite::FiniteGroup dihedral_group(std::size_t n);
finite::FiniteGroup quaternion_group();
finite::FiniteGroup alternating_group_4();
std::vector<finite::FiniteGroup> small_groups();

/// k homs into `codomain` from a randomly chosen domain: the codomain itself,
/// its square, or a cyclic group of the same order. Images are projections,
/// inner automorphisms, trivial maps or cyclic generator images.
std::vector<finite::FiniteHom> random_finite_homs(Rng& rng,
                                                  std::shared_ptr<const finite::FiniteGroup> codomain,
                                                  std::size_t k);

// class-2 nilpotent fixtures
nilpotent::PcGroup heisenberg();
/// Heisenberg group times Z, the extra generator `s` central.
nilpotent::PcGroup heisenberg_times_z();
/// Example groups G_1 (generators a..e, t) and G_2 (alpha, beta, gamma).
nilpotent::PcGroup example_g1();
std::vector<nilpotent::PcHom> example_triple();
nilpotent::PcWord random_word(Rng& rng, const nilpotent::PcGroup& g, long bound);
/// A random endomorphism-like hom from `domain` (heisenberg or heisenberg_times_z)
/// into the Heisenberg group.
nilpotent::PcHom random_heisenberg_hom(Rng& rng, const nilpotent::PcGroup& domain);

// property checks, each over `count` random instances
PropertyOutcome lower_bound_property(Rng& rng, std::size_t count);
PropertyOutcome factorization_property(Rng& rng, std::size_t count);
PropertyOutcome pairwise_divisibility_property(Rng& rng, std::size_t count);
PropertyOutcome abelian_permutation_property(Rng& rng, std::size_t count);
PropertyOutcome finite_permutation_property(Rng& rng, std::size_t count);
PropertyOutcome zero_padding_property(Rng& rng, std::size_t count);
PropertyOutcome square_determinant_property(Rng& rng, std::size_t count);
PropertyOutcome snf_minors_property(Rng& rng, std::size_t count);
PropertyOutcome cokernel_enumeration_property(Rng& rng, std::size_t count);
/// Every finite-engine run compares the three orbit kernels.
PropertyOutcome orbit_kernel_property(Rng& rng, std::size_t count);
/// Finite engine on Z/n versus the abelian engine on the same data.
PropertyOutcome cyclic_cross_engine_property(Rng& rng, std::size_t count);
/// value x |Im delta| == R' x R_bar and agreement with the recount search.
PropertyOutcome nilpotent_identity_property(Rng& rng, std::size_t count);

}  // namespace ckit::testing
