#include "doctest.h"

#include "ckit/errors.hpp"
#include "ckit/twisted.hpp"
#include "support.hpp"

using namespace ckit;
using namespace ckit::finite;

namespace {

struct PoincareData {
  std::shared_ptr<const FiniteGroup> y = std::make_shared<const FiniteGroup>(binary_icosahedral());
  std::shared_ptr<const FiniteGroup> x = std::make_shared<const FiniteGroup>(direct_product(*y, *y));
  FiniteHom p = FiniteHom::projection(x, 0);
  FiniteHom cbar = FiniteHom::trivial(x, y);
};

std::vector<FiniteHom> homs_of(std::initializer_list<FiniteHom> list) { return list; }

}  // namespace

TEST_CASE("binary icosahedral group") {
  const auto g = binary_icosahedral();
  CHECK(g.order() == 120);
  CHECK_FALSE(g.is_abelian());
  CHECK(conjugacy_class_count(g) == 9);
}

TEST_CASE("small groups have the expected orders and classes") {
  CHECK(testing::symmetric_group(3).order() == 6);
  CHECK(conjugacy_class_count(testing::symmetric_group(3)) == 3);
  CHECK(conjugacy_class_count(testing::symmetric_group(4)) == 5);
  CHECK(testing::dihedral_group(4).order() == 8);
  CHECK(conjugacy_class_count(testing::dihedral_group(4)) == 5);
  CHECK(testing::quaternion_group().order() == 8);
  CHECK(conjugacy_class_count(testing::quaternion_group()) == 5);
  CHECK(testing::alternating_group_4().order() == 12);
  CHECK(conjugacy_class_count(testing::alternating_group_4()) == 4);
  CHECK(conjugacy_class_count(cyclic_group(7)) == 7);
  CHECK(FiniteGroup().order() == 1);
}

TEST_CASE("three maps into the Poincare sphere group") {
  const PoincareData d;
  const auto homs = homs_of({d.p, d.p, d.cbar});
  const TupleAction action(homs);
  CHECK(action.tuple_count() == 14400);
  const auto partition = twisted_reidemeister(homs);
  CHECK(partition.class_count == 120);
  REQUIRE(partition.class_sizes.size() == 120);
  for (auto size : partition.class_sizes) CHECK(size == 120);
  CHECK(partition == orbits_by_expansion(action));
  CHECK(partition == orbits_by_union_find(action));

  CHECK(twisted_reidemeister(homs_of({d.p, d.p})).class_count == 9);
  CHECK(twisted_reidemeister(homs_of({d.p, d.cbar})).class_count == 1);

  const auto report = divisibility_report(homs);
  CHECK(report.multi == 120);
  CHECK(report.pairwise == std::vector<std::size_t>{9, 1});
  CHECK(report.pairwise_product == 9);
  CHECK_FALSE(report.product_divides);
}

TEST_CASE("identical homs count twisted conjugacy classes") {
  auto s3 = std::make_shared<const FiniteGroup>(testing::symmetric_group(3));
  const auto id = FiniteHom::identity(s3);
  CHECK(twisted_reidemeister(homs_of({id, id})).class_count == 3);
  // (a, b) up to simultaneous conjugation: 6 * 6 = 36 pairs, orbit count 11
  CHECK(twisted_reidemeister(homs_of({id, id, id})).class_count == 11);
  CHECK(twisted_reidemeister(homs_of({id, FiniteHom::trivial(s3, s3)})).class_count == 1);
}

TEST_CASE("class ids follow the smallest tuple") {
  auto z4 = std::make_shared<const FiniteGroup>(cyclic_group(4));
  const auto id = FiniteHom::identity(z4);
  const auto p = twisted_reidemeister(homs_of({id, id}));
  CHECK(p.class_count == 4);
  for (std::size_t t = 0; t < 4; ++t) CHECK(p.class_of[t] == t);
}

TEST_CASE("transport swaps and shifts") {
  const auto s3 = testing::symmetric_group(3);
  const std::vector<Element> tuple{1, 2, 3};
  const auto swapped = transport_tuple(s3, tuple, 1, 3);
  CHECK(swapped == std::vector<Element>{3, 2, 1});
  const auto shifted = transport_tuple(s3, tuple, 0, 2);
  const Element inv = s3.inverse(2);
  CHECK(shifted == std::vector<Element>{s3.multiply(inv, 1), inv, s3.multiply(inv, 3)});
}

TEST_CASE("invalid homs and mismatched systems are rejected") {
  auto z2 = std::make_shared<const FiniteGroup>(cyclic_group(2));
  auto z3 = std::make_shared<const FiniteGroup>(cyclic_group(3));
  CHECK_THROWS_AS(FiniteHom(z3, z3, std::vector<Element>{0, 1, 1}), InputError);
  CHECK_THROWS_AS(FiniteHom(z3, z3, std::vector<Element>{0, 1}), InputError);
  const auto a = FiniteHom::identity(z2);
  const auto b = FiniteHom::trivial(z3, z2);
  CHECK_THROWS_AS(twisted_reidemeister(homs_of({a, b})), PreconditionError);
  CHECK_THROWS_AS(twisted_reidemeister(homs_of({a})), PreconditionError);
}

TEST_CASE("limits are enforced") {
  auto s3 = std::make_shared<const FiniteGroup>(testing::symmetric_group(3));
  const auto id = FiniteHom::identity(s3);
  const auto homs = homs_of({id, id, id});
  CHECK_THROWS_AS(TupleAction(homs, OrbitLimits{10, 1'000'000}), SizeError);
  CHECK_THROWS_AS(TupleAction(homs, OrbitLimits{1000, 50}), SizeError);
  CHECK_THROWS_AS(direct_product(*s3, *s3, 10), SizeError);
  std::vector<Permutation> gens{parse_cycles("(1 2 3 4 5 6 7)", 7), parse_cycles("(1 2)", 7)};
  CHECK_THROWS_AS(close_permutations(gens, 7, 100), SizeError);
}

TEST_CASE("cycle notation round trip") {
  const auto p = parse_cycles("(1 3)(2 4 5)", 5);
  CHECK(format_cycles(p) == "(1 3)(2 4 5)");
  CHECK_THROWS(parse_cycles("(1 1)", 3));
  CHECK_THROWS(parse_cycles("(1 9)", 3));
}

TEST_CASE("matrix groups") {
  const std::vector<IntMatrix> gens{IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{0, -1}, {1, 0}}};
  CHECK(close_matrices_mod_p(gens, 3).order() == 24);
  CHECK(binary_icosahedral() == close_matrices_mod_p(gens, 5));
}

TEST_CASE("random finite properties") {
  testing::Rng rng(271828);
  for (auto outcome : {testing::finite_permutation_property(rng, 200), testing::orbit_kernel_property(rng, 200),
                       testing::cyclic_cross_engine_property(rng, 200)}) {
    INFO(outcome.summary());
    CHECK(outcome.instances >= 200);
    CHECK(outcome.ok());
  }
}
