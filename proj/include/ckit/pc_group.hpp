#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ckit/int_matrix.hpp"

/// Torsion-free nilpotent groups of class at most 2 given by a polycyclic
/// presentation with central generators listed last.
namespace ckit::nilpotent {

/// Exponent vector of the normal form g_1^e_1 ... g_n^e_n.
using PcWord = IntVector;

class PcGroup {
 public:
  /// `noncentral` generators come first in the normal form, then `central`.
  /// `comm[i][j]` for i > j (both non-central) is [g_i, g_j] as a vector over
  /// the central generators; missing entries are zero.
  PcGroup(std::vector<std::string> noncentral, std::vector<std::string> central,
          std::vector<std::vector<IntVector>> comm = {});

  /// Free abelian group on `names`.
  static PcGroup abelian(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  std::size_t noncentral_count() const { return noncentral_; }
  std::size_t central_count() const { return names_.size() - noncentral_; }
  bool is_central(std::size_t i) const { return i >= noncentral_; }
  const std::vector<std::string>& names() const { return names_; }
  /// Index of the named generator; throws InputError if absent.
  std::size_t index_of(const std::string& name) const;

  /// [g_i, g_j] over the central generators, for any pair of generators.
  IntVector comm(std::size_t i, std::size_t j) const;

  PcWord identity() const { return PcWord(size()); }
  PcWord generator(std::size_t i) const;
  /// Word with the given central exponents and trivial non-central part.
  PcWord central_word(std::span<const Integer> central) const;

  PcWord multiply(const PcWord& u, const PcWord& v) const;
  PcWord power(const PcWord& u, const Integer& e) const;
  PcWord inverse(const PcWord& u) const { return power(u, Integer(-1)); }
  /// u^-1 v^-1 u v
  PcWord commutator(const PcWord& u, const PcWord& v) const;

  std::string format(const PcWord& u) const;

  friend bool operator==(const PcGroup&, const PcGroup&) = default;

 private:
  // sum over i > j of u_i v_j [g_i, g_j], central coordinates
  IntVector cross(std::span<const Integer> u, std::span<const Integer> v) const;
  void check_word(const PcWord& u) const;

  std::vector<std::string> names_;
  std::size_t noncentral_ = 0;
  // comm_[i * noncentral_ + j] for i > j
  std::vector<IntVector> comm_;
};

/// G^m with generators ordered as the non-central generators of every copy,
/// then the central generators of every copy. Names get the suffix _1.._m.
PcGroup direct_power_pc(const PcGroup& g, std::size_t m);

/// Index in direct_power_pc(g, m) of generator i of copy `copy` (0-based).
std::size_t power_coordinate(const PcGroup& g, std::size_t m, std::size_t copy, std::size_t i);

/// Homomorphism given by the images of the domain generators.
struct PcHom {
  PcGroup domain;
  PcGroup codomain;
  std::vector<PcWord> images;

  /// Image of an arbitrary word: product of images^exponents in normal-form order.
  PcWord operator()(const PcWord& x) const;
};

struct HomValidation {
  bool valid = true;
  std::vector<std::string> diagnostics;
};

/// Checks shapes and that every defining relation [g_i, g_j] = comm(i, j) is
/// preserved.
HomValidation validate_hom(const PcHom& h);

/// (phi_1, ..., phi_m) : G -> H^m into direct_power_pc(H, m).
PcHom hom_into_power(std::span<const PcHom> homs);

}  // namespace ckit::nilpotent
