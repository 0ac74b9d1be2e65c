#include "doctest.h"

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"
#include "support.hpp"

using namespace ckit;
using namespace ckit::linalg;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("cardinal arithmetic and divisibility") {
  const Cardinal inf = Cardinal::infinite();
  CHECK(inf.to_string() == "infinite");
  CHECK(Cardinal(12L).to_string() == "12");
  CHECK(Cardinal(3L).divides(Cardinal(12L)));
  CHECK_FALSE(Cardinal(5L).divides(Cardinal(12L)));
  CHECK_FALSE(Cardinal(0L).divides(Cardinal(0L)));
  CHECK_FALSE(Cardinal(3L).divides(inf));
  CHECK_FALSE(inf.divides(Cardinal(3L)));
  CHECK((Cardinal(3L) * inf).is_infinite());
  CHECK(Cardinal(3L) * Cardinal(4L) == Cardinal(12L));
  CHECK(Cardinal(1000L) < inf);
  CHECK_THROWS(inf.value());
}

TEST_CASE("worked matrix has divisors 1 and 2") {
  const IntMatrix c{{2, 4, 1}, {2, 6, 2}};
  const auto snf = smith_normal_form(c);
  CHECK(snf.divisors == ints({1, 2}));
  CHECK(snf.s * c * snf.t == snf.d);
  CHECK(elementary_divisors_via_minors(c) == ints({1, 2}));
  CHECK(cokernel_order(c) == Cardinal(2L));
  CHECK(enumerate_cokernel(c, 100).size() == 2);
}

TEST_CASE("smith form of degenerate shapes") {
  CHECK(smith_normal_form(IntMatrix(0, 3)).divisors.empty());
  CHECK(smith_normal_form(IntMatrix(2, 2)).divisors.empty());
  CHECK(cokernel_order(IntMatrix(0, 3)) == Cardinal(1L));
  CHECK(cokernel_order(IntMatrix(2, 0)).is_infinite());
  CHECK(cokernel_order(IntMatrix{{0, 0}, {0, 0}}).is_infinite());
  CHECK(smith_normal_form(IntMatrix{{-6}}).divisors == ints({6}));
  CHECK(smith_normal_form(IntMatrix{{4, 0}, {0, 6}}).divisors == ints({2, 12}));
}

TEST_CASE("rank determinant and kernel") {
  const IntMatrix m{{1, 2, 3}, {2, 4, 6}};
  CHECK(rank(m) == 1);
  const auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) {
    const auto image = m.apply(v);
    CHECK(image == IntVector(2));
  }
  CHECK(determinant(IntMatrix{{2, 1}, {7, 4}}) == 1);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(determinant(m), ShapeError);
  CHECK(kernel_basis(IntMatrix{{1, 0}, {0, 1}}).empty());
}

TEST_CASE("unimodular inverse") {
  const IntMatrix u{{2, 1}, {7, 4}};
  CHECK(u * unimodular_inverse(u) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), PreconditionError);
}

TEST_CASE("hermite form and lattice index") {
  const IntMatrix m{{2, 4}, {0, 6}};
  const auto h = column_hermite_form(m, true);
  CHECK(h.rank() == 2);
  CHECK(m * *h.transform == hstack(h.basis, IntMatrix(2, 0)));
  CHECK(lattice_coordinates(h, IntVector{Integer(2), Integer(6)}).has_value());
  CHECK_FALSE(lattice_coordinates(h, IntVector{Integer(1), Integer(0)}).has_value());

  const std::vector<IntVector> super{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}};
  const std::vector<IntVector> sub{{Integer(2), Integer(0)}, {Integer(0), Integer(3)}};
  CHECK(lattice_index(sub, super) == Cardinal(6L));
  CHECK(lattice_index(std::span<const IntVector>(sub).first(1), super).is_infinite());
  CHECK_THROWS_AS(lattice_index(super, sub), ContainmentError);
}

TEST_CASE("appending zero columns keeps the cokernel") {
  testing::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto m = testing::random_matrix(rng, 2, 3, -5, 5);
    CHECK(cokernel_order(m) == cokernel_order(hstack(m, IntMatrix(2, 2))));
  }
}

TEST_CASE("ragged rows are named") {
  std::vector<IntVector> rows{{Integer(1), Integer(2)}, {Integer(3)}};
  CHECK_THROWS_WITH_AS(IntMatrix::from_rows(rows), doctest::Contains("row 1"), ShapeError);
}

TEST_CASE("enumeration respects its cap") {
  CHECK_THROWS_AS(enumerate_cokernel(IntMatrix{{1000}}, 10), SizeError);
  CHECK_THROWS_AS(enumerate_cokernel(IntMatrix{{0}}, 10), PreconditionError);
}

TEST_CASE("smith form agrees with minors on random matrices") {
  testing::Rng rng(20240501);
  const auto outcome = testing::snf_minors_property(rng, 100);
  INFO(outcome.summary());
  CHECK(outcome.ok());
}

TEST_CASE("cokernel enumeration agrees with the divisor product") {
  testing::Rng rng(99);
  const auto outcome = testing::cokernel_enumeration_property(rng, 200);
  INFO(outcome.summary());
  CHECK(outcome.ok());
}
