#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ckit/int_matrix.hpp"

namespace ckit::finite {

using Element = std::uint32_t;

/// Closure cap used when none is given: COINCIDENCE_KIT_MAX_CLOSURE if set,
/// otherwise 10^4.
std::size_t default_closure_cap();

/// Largest direct product built without an explicit cap.
inline constexpr std::size_t kDefaultProductCap = 1'000'000;

/// Dense multiplication table of a single finite group.
struct CayleyTable {
  std::size_t order = 0;
  std::vector<Element> mul;  // order * order, mul[a * order + b] = a b
  std::vector<Element> inv;
  Element identity = 0;
  std::vector<Element> generators;
  std::vector<std::string> labels;

  Element multiply(Element a, Element b) const { return mul[std::size_t(a) * order + b]; }
  friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
    return a.order == b.order && a.identity == b.identity && a.mul == b.mul;
  }
};

/// A finite group stored as a direct product of one or more Cayley tables.
/// Elements are mixed-radix indices, first factor most significant, so a
/// product never needs a table of its own.
class FiniteGroup {
 public:
  /// Trivial group.
  FiniteGroup();

  /// Validates identity, inverses and associativity (exhaustive up to order
  /// 200, random triples beyond). `generators` defaults to all elements.
  static FiniteGroup from_table(const std::vector<std::vector<Element>>& table,
                                std::vector<Element> generators = {},
                                std::vector<std::string> labels = {});

  /// Wraps an already-validated table.
  static FiniteGroup from_cayley(CayleyTable table);

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const;
  /// Generating set; homomorphisms are validated against it.
  const std::vector<Element>& generators() const { return generators_; }
  std::string label(Element a) const;

  std::size_t factor_count() const { return factors_.size(); }
  /// The i-th direct factor as a group of its own.
  FiniteGroup factor(std::size_t i) const;
  /// Component of `a` in factor i.
  Element component(Element a, std::size_t i) const;
  /// Element with the given components.
  Element compose(std::span<const Element> components) const;

  bool is_abelian() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b);
  friend FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap);

 private:
  explicit FiniteGroup(std::vector<std::shared_ptr<const CayleyTable>> factors);

  std::vector<std::shared_ptr<const CayleyTable>> factors_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  Element identity_ = 0;
  std::vector<Element> generators_;
};

/// Componentwise product; throws SizeError when |g||h| > cap.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           std::size_t cap = kDefaultProductCap);

/// Permutation given as images of 0..degree-1.
using Permutation = std::vector<std::size_t>;

/// Parses one-line cycle notation over the points 1..degree, e.g. "(1 2 3)(4 5)".
Permutation parse_cycles(const std::string& text, std::size_t degree);
std::string format_cycles(const Permutation& p);

/// Group generated by permutations of a common degree. Elements are numbered
/// breadth-first from the identity, generators applied in the order given.
FiniteGroup close_permutations(std::span<const Permutation> generators, std::size_t degree,
                               std::size_t cap = default_closure_cap());

/// Group generated by invertible square matrices over the field with p elements.
FiniteGroup close_matrices_mod_p(std::span<const IntMatrix> generators, unsigned long p,
                                 std::size_t cap = default_closure_cap());

/// SL(2,5), generated by [[1,1],[0,1]] and [[0,-1],[1,0]] over F_5: the
/// binary icosahedral group of order 120.
FiniteGroup binary_icosahedral();

/// Z/n generated by the n-cycle.
FiniteGroup cyclic_group(std::size_t n);

/// Homomorphism given by the image of every domain element.
class FiniteHom {
 public:
  /// Validates the homomorphism property against the domain generators.
  FiniteHom(std::shared_ptr<const FiniteGroup> domain, std::shared_ptr<const FiniteGroup> codomain,
            std::vector<Element> image);

  /// Extends generator images to the whole domain, then validates.
  static FiniteHom from_generator_images(std::shared_ptr<const FiniteGroup> domain,
                                         std::shared_ptr<const FiniteGroup> codomain,
                                         std::span<const Element> generator_images);
  static FiniteHom identity(std::shared_ptr<const FiniteGroup> group);
  static FiniteHom trivial(std::shared_ptr<const FiniteGroup> domain,
                           std::shared_ptr<const FiniteGroup> codomain);
  /// Projection of a product domain onto its factor `index`.
  static FiniteHom projection(std::shared_ptr<const FiniteGroup> domain, std::size_t index);

  Element operator()(Element x) const { return image_[x]; }
  const FiniteGroup& domain() const { return *domain_; }
  const FiniteGroup& codomain() const { return *codomain_; }
  std::span<const Element> images() const { return image_; }

 private:
  std::shared_ptr<const FiniteGroup> domain_;
  std::shared_ptr<const FiniteGroup> codomain_;
  std::vector<Element> image_;
};

}  // namespace ckit::finite
