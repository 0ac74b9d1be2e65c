#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ckit/finite_group.hpp"

/// Reidemeister classes of k homomorphisms between finite groups: orbits of
/// (k-1)-tuples over the codomain under
///   z . (a_2, ..., a_k) = (phi_1(z) a_2 phi_2(z)^-1, ..., phi_1(z) a_k phi_k(z)^-1).
namespace ckit::finite {

using TupleIndex = std::uint64_t;

struct TwistedPartition {
  std::size_t class_count = 0;
  /// Class id of every tuple. Ids follow the smallest tuple index in the class.
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint64_t> class_sizes;

  friend bool operator==(const TwistedPartition&, const TwistedPartition&) = default;
};

enum class OrbitAlgorithm {
  parallel,    // OpenMP: concurrent union-find along the generators
  expansion,   // serial reference: expand the orbit of each unvisited tuple
  union_find,  // serial: merge tuples along the action of generators
};

struct OrbitLimits {
  std::uint64_t max_tuples = 10'000'000;
  /// Bound on (domain generators) x (tuples).
  std::uint64_t max_work = 1'000'000'000;
};

/// The action of a domain group on codomain^(k-1) induced by k homs. The
/// domain only enters through the distinct image tuples (phi_1(z), ..., phi_k(z)),
/// which form a subgroup of codomain^k.
class TupleAction {
 public:
  /// Throws PreconditionError for k < 2 or mismatched groups, SizeError
  /// beyond the limits.
  TupleAction(std::span<const FiniteHom> homs, const OrbitLimits& limits = {});

  std::size_t tuple_length() const { return length_; }
  TupleIndex tuple_count() const { return tuple_count_; }
  const FiniteGroup& codomain() const { return *codomain_; }
  /// Distinct image tuples, each of length k, sorted.
  const std::vector<std::vector<Element>>& acting() const { return acting_; }
  /// Image tuples of the domain generators.
  const std::vector<std::vector<Element>>& acting_generators() const { return generators_; }

  TupleIndex encode(std::span<const Element> tuple) const;
  void decode(TupleIndex t, std::span<Element> out) const;
  /// Image of tuple t under the acting element a. `scratch` has tuple_length() slots.
  TupleIndex act(std::span<const Element> a, TupleIndex t, std::span<Element> scratch) const;

 private:
  const FiniteGroup* codomain_;
  std::size_t length_;
  TupleIndex tuple_count_;
  std::vector<std::vector<Element>> acting_;
  std::vector<std::vector<Element>> generators_;
};

// Orbit kernels. All three return bit-identical partitions.
TwistedPartition orbits_parallel(const TupleAction& action);
TwistedPartition orbits_by_expansion(const TupleAction& action);
TwistedPartition orbits_by_union_find(const TupleAction& action);

/// R(phi_1, ..., phi_k) with its classes; `homs` share domain and codomain, k >= 2.
TwistedPartition twisted_reidemeister(std::span<const FiniteHom> homs,
                                      OrbitAlgorithm algorithm = OrbitAlgorithm::parallel,
                                      const OrbitLimits& limits = {});

std::size_t conjugacy_class_count(const FiniteGroup& g);

/// The bijection between class sets induced by swapping homs i < j (0-based).
/// For i >= 1 the tuple entries swap; for i == 0 the tuple becomes
/// (a_j^-1 a_2, ..., a_j^-1, ..., a_j^-1 a_k).
std::vector<Element> transport_tuple(const FiniteGroup& codomain, std::span<const Element> tuple,
                                     std::size_t i, std::size_t j);

struct FiniteDivisibility {
  std::size_t multi = 0;
  std::vector<std::size_t> pairwise;  // R(phi_1, phi_j), j = 2..k
  std::uint64_t pairwise_product = 1;
  bool product_divides = false;
};

FiniteDivisibility divisibility_report(std::span<const FiniteHom> homs,
                                       OrbitAlgorithm algorithm = OrbitAlgorithm::parallel);

}  // namespace ckit::finite
