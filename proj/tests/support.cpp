#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"
#include "ckit/nilpotent.hpp"
#include "ckit/twisted.hpp"

namespace ckit::testing {

using abelian::AbelianHom;
using abelian::AbelianSystem;
using finite::Element;
using finite::FiniteGroup;
using finite::FiniteHom;
using nilpotent::PcGroup;
using nilpotent::PcHom;
using nilpotent::PcWord;

void PropertyOutcome::fail(const std::string& what) {
  if (failures++ == 0) first_failure = what;
}

std::string PropertyOutcome::summary() const {
  std::ostringstream out;
  out << name << ": " << instances << " instances, " << failures << " failures";
  if (!first_failure.empty()) out << " (first: " << first_failure << ")";
  return out.str();
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(rng, lo, hi);
  return m;
}

AbelianSystem random_system(Rng& rng, std::size_t k, std::size_t target, std::size_t domain, long lo,
                            long hi) {
  std::vector<AbelianHom> homs;
  for (std::size_t i = 0; i < k; ++i) homs.push_back({random_matrix(rng, target, domain, lo, hi)});
  return AbelianSystem(std::move(homs));
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t k) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

std::string describe(const AbelianSystem& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + s[i].matrix.to_string();
  return out;
}

// a system whose multi-map number is usually finite: enough domain columns
AbelianSystem finite_leaning_system(Rng& rng) {
  const std::size_t k = uniform(rng, 2, 4);
  const std::size_t n = uniform(rng, 1, 2);
  const std::size_t m = (k - 1) * n + uniform(rng, 0, 1);
  return random_system(rng, k, n, m, -3, 3);
}

Cardinal product(const std::vector<Cardinal>& values) {
  Cardinal p(1L);
  for (const auto& v : values) p = p * v;
  return p;
}

}  // namespace

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<finite::Permutation> gens{finite::parse_cycles("(1 2)", n)};
  std::string cycle = "(";
  for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  gens.push_back(finite::parse_cycles(cycle, n));
  return finite::close_permutations(gens, n);
}

FiniteGroup dihedral_group(std::size_t n) {
  std::string rotation = "(";
  for (std::size_t i = 1; i <= n; ++i) rotation += std::to_string(i) + (i < n ? " " : ")");
  std::string reflection;
  for (std::size_t i = 2, j = n; i < j; ++i, --j)
    reflection += "(" + std::to_string(i) + " " + std::to_string(j) + ")";
  std::vector<finite::Permutation> gens{finite::parse_cycles(rotation, n),
                                        finite::parse_cycles(reflection, n)};
  return finite::close_permutations(gens, n);
}

FiniteGroup quaternion_group() {
  std::vector<finite::Permutation> gens{finite::parse_cycles("(1 2 3 4)(5 6 7 8)", 8),
                                        finite::parse_cycles("(1 5 3 7)(2 8 4 6)", 8)};
  return finite::close_permutations(gens, 8);
}

FiniteGroup alternating_group_4() {
  std::vector<finite::Permutation> gens{finite::parse_cycles("(1 2 3)", 4),
                                        finite::parse_cycles("(1 2)(3 4)", 4)};
  return finite::close_permutations(gens, 4);
}

std::vector<FiniteGroup> small_groups() {
  return {finite::cyclic_group(6), symmetric_group(3), dihedral_group(4), quaternion_group(),
          alternating_group_4(), direct_product(finite::cyclic_group(2), finite::cyclic_group(4))};
}

std::vector<FiniteHom> random_finite_homs(Rng& rng, std::shared_ptr<const FiniteGroup> codomain,
                                          std::size_t k) {
  const FiniteGroup& g = *codomain;
  const auto pick = [&] { return Element(uniform(rng, 0, long(g.order()) - 1)); };
  std::vector<FiniteHom> homs;
  switch (uniform(rng, 0, 2)) {
    case 0: {  // inner automorphisms and trivial maps of the codomain
      for (std::size_t i = 0; i < k; ++i) {
        if (uniform(rng, 0, 4) == 0) {
          homs.push_back(FiniteHom::trivial(codomain, codomain));
          continue;
        }
        const Element c = pick();
        std::vector<Element> image(g.order());
        for (Element x = 0; x < g.order(); ++x) image[x] = g.multiply(g.multiply(c, x), g.inverse(c));
        homs.emplace_back(codomain, codomain, std::move(image));
      }
      break;
    }
    case 1: {  // conjugated projections of the square
      auto domain = std::make_shared<const FiniteGroup>(direct_product(g, g));
      for (std::size_t i = 0; i < k; ++i) {
        if (uniform(rng, 0, 5) == 0) {
          homs.push_back(FiniteHom::trivial(domain, codomain));
          continue;
        }
        const std::size_t copy = uniform(rng, 0, 1);
        const std::size_t f = g.factor_count();
        const Element c = pick();
        std::vector<Element> image(domain->order()), parts(f);
        for (Element x = 0; x < domain->order(); ++x) {
          for (std::size_t t = 0; t < f; ++t) parts[t] = domain->component(x, copy * f + t);
          image[x] = g.multiply(g.multiply(c, g.compose(parts)), g.inverse(c));
        }
        homs.emplace_back(domain, codomain, std::move(image));
      }
      break;
    }
    default: {  // cyclic domain of order |codomain|: any image of the generator works
      auto domain = std::make_shared<const FiniteGroup>(finite::cyclic_group(g.order()));
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<Element> images(domain->generators().size(), g.identity());
        images.front() = pick();
        homs.push_back(FiniteHom::from_generator_images(domain, codomain, images));
      }
      break;
    }
  }
  return homs;
}

PcGroup heisenberg() { return PcGroup({"alpha", "beta"}, {"gamma"}, {{}, {{Integer(-1)}}}); }

PcGroup heisenberg_times_z() {
  return PcGroup({"alpha", "beta"}, {"gamma", "s"}, {{}, {{Integer(-1), Integer(0)}}});
}

PcGroup example_g1() {
  // non-central a, b, d, t; central c, e; [a, b] = c, [a, d] = e
  std::vector<std::vector<IntVector>> comm(4);
  comm[1] = {{Integer(-1), Integer(0)}};
  comm[2] = {{Integer(0), Integer(-1)}, {Integer(0), Integer(0)}};
  comm[3] = {IntVector(2), IntVector(2), IntVector(2)};
  return PcGroup({"a", "b", "d", "t"}, {"c", "e"}, comm);
}

std::vector<PcHom> example_triple() {
  const PcGroup g1 = example_g1();
  const PcGroup g2 = heisenberg();
  const auto w = [](long a, long b, long c) { return PcWord{Integer(a), Integer(b), Integer(c)}; };
  // images in the order a, b, d, t, c, e
  PcHom f1{g1, g2, {w(2, 0, 0), w(0, 1, 0), w(0, 0, 0), w(0, 0, 0), w(0, 0, 2), w(0, 0, 0)}};
  PcHom f2{g1, g2, {w(1, 0, 0), w(0, 0, 0), w(0, 0, 0), w(1, 0, 0), w(0, 0, 0), w(0, 0, 0)}};
  PcHom f3{g1, g2, {w(0, 1, 0), w(1, 0, 0), w(1, 0, 0), w(0, 0, 0), w(0, 0, -1), w(0, 0, -1)}};
  return {f1, f2, f3};
}

PcWord random_word(Rng& rng, const PcGroup& g, long bound) {
  PcWord w(g.size());
  for (auto& e : w) e = uniform(rng, -bound, bound);
  return w;
}

PcHom random_heisenberg_hom(Rng& rng, const PcGroup& domain) {
  const PcGroup h = heisenberg();
  const long a11 = uniform(rng, -3, 3), a12 = uniform(rng, -3, 3);
  const long a21 = uniform(rng, -3, 3), a22 = uniform(rng, -3, 3);
  std::vector<PcWord> images{
      {Integer(a11), Integer(a21), Integer(uniform(rng, -2, 2))},
      {Integer(a12), Integer(a22), Integer(uniform(rng, -2, 2))},
      {Integer(0), Integer(0), Integer(a11 * a22 - a12 * a21)},
  };
  if (domain.size() == 4) images.push_back({Integer(0), Integer(0), Integer(uniform(rng, -3, 3))});
  return PcHom{domain, h, std::move(images)};
}

PropertyOutcome lower_bound_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"lower bound by pairwise product"};
  while (out.instances < count) {
    const auto s = finite_leaning_system(rng);
    const auto report = abelian::reid_multi(s);
    if (report.value.is_infinite()) continue;
    ++out.instances;
    if (report.value < product(report.pairwise)) out.fail(describe(s));
  }
  return out;
}

PropertyOutcome factorization_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"factorization through ker Psi"};
  while (out.instances < count) {
    const auto s = finite_leaning_system(rng);
    const auto report = abelian::reid_multi(s);
    if (report.value.is_infinite()) continue;
    Cardinal ker;
    try {
      ker = abelian::ker_psi_order_enumerated(s, 100'000);
    } catch (const SizeError&) {
      continue;
    }
    ++out.instances;
    if (report.value != product(report.pairwise) * ker || abelian::ker_psi_order(s) != ker)
      out.fail(describe(s));
  }
  return out;
}

PropertyOutcome pairwise_divisibility_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"pairwise product divides"};
  while (out.instances < count) {
    const auto s = finite_leaning_system(rng);
    const auto report = abelian::divisibility_report(s);
    if (!report.applicable) continue;
    ++out.instances;
    if (!report.product_divides || !product(report.pairwise).divides(report.multi))
      out.fail(describe(s));
  }
  return out;
}

PropertyOutcome abelian_permutation_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"abelian permutation invariance"};
  while (out.instances < count) {
    const auto s = finite_leaning_system(rng);
    const Cardinal value = abelian::reid_multi(s).value;
    ++out.instances;
    for (const auto& sigma : all_permutations(s.size())) {
      if (abelian::reid_multi(abelian::permute_system(s, sigma)).value != value) {
        out.fail(describe(s));
        break;
      }
    }
  }
  return out;
}

namespace {

// Checks the invariance under every ordering and that the transposition maps
// send classes to classes. Returns an empty string on success.
std::string check_finite_orderings(const std::vector<FiniteHom>& homs) {
  const std::size_t k = homs.size();
  const auto base = finite::twisted_reidemeister(homs);
  for (const auto& sigma : all_permutations(k)) {
    std::vector<FiniteHom> permuted;
    for (std::size_t i : sigma) permuted.push_back(homs[i]);
    if (finite::twisted_reidemeister(permuted).class_count != base.class_count)
      return "class count changes under reordering";
  }
  const finite::TupleAction action(homs);
  const std::size_t len = action.tuple_length();
  std::vector<Element> tuple(len);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<FiniteHom> swapped = homs;
      std::swap(swapped[i], swapped[j]);
      const finite::TupleAction swapped_action(swapped);
      const auto target = finite::twisted_reidemeister(swapped);
      std::vector<std::int64_t> image_of(base.class_count, -1);
      for (finite::TupleIndex t = 0; t < action.tuple_count(); ++t) {
        action.decode(t, tuple);
        const auto moved = finite::transport_tuple(action.codomain(), tuple, i, j);
        const auto cls = target.class_of[swapped_action.encode(moved)];
        auto& seen = image_of[base.class_of[t]];
        if (seen == -1) seen = cls;
        else if (seen != std::int64_t(cls)) return "transport map splits a class";
      }
      std::vector<std::int64_t> sorted = image_of;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return "transport map merges classes";
    }
  }
  return {};
}

}  // namespace

PropertyOutcome finite_permutation_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"finite permutation invariance"};
  const auto groups = small_groups();
  while (out.instances < count) {
    auto codomain = std::make_shared<const FiniteGroup>(groups[uniform(rng, 0, long(groups.size()) - 1)]);
    const auto homs = random_finite_homs(rng, codomain, uniform(rng, 2, 4));
    ++out.instances;
    if (auto err = check_finite_orderings(homs); !err.empty())
      out.fail(err + " on a group of order " + std::to_string(codomain->order()));
  }
  return out;
}

PropertyOutcome zero_padding_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"zero column padding"};
  while (out.instances < count) {
    const auto s = finite_leaning_system(rng);
    const std::size_t pad = uniform(rng, 1, 3);
    std::vector<AbelianHom> padded;
    for (const auto& h : s.homs())
      padded.push_back({hstack(h.matrix, IntMatrix(h.matrix.rows(), pad))});
    ++out.instances;
    if (abelian::reid_multi(s).value != abelian::reid_multi(AbelianSystem(padded)).value)
      out.fail(describe(s));
  }
  return out;
}

PropertyOutcome square_determinant_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"square case determinant"};
  while (out.instances < count) {
    const std::size_t n = uniform(rng, 1, 4);
    const AbelianHom phi{random_matrix(rng, n, n, -4, 4)};
    const AbelianHom psi{random_matrix(rng, n, n, -4, 4)};
    const Integer det = abs(linalg::determinant(psi.matrix - phi.matrix));
    const Cardinal expected = det == 0 ? Cardinal::infinite() : Cardinal(det);
    ++out.instances;
    if (abelian::reid_pair(phi, psi) != expected)
      out.fail(phi.matrix.to_string() + " " + psi.matrix.to_string());
  }
  return out;
}

PropertyOutcome snf_minors_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"smith form versus minors"};
  while (out.instances < count) {
    const auto m = random_matrix(rng, uniform(rng, 1, 6), uniform(rng, 1, 6), -20, 20);
    const auto snf = linalg::smith_normal_form(m);
    ++out.instances;
    bool good = snf.divisors == linalg::elementary_divisors_via_minors(m) && snf.s * m * snf.t == snf.d &&
                abs(linalg::determinant(snf.s)) == 1 && abs(linalg::determinant(snf.t)) == 1;
    for (std::size_t i = 0; good && i < snf.divisors.size(); ++i) {
      good = snf.divisors[i] > 0 && snf.d(i, i) == snf.divisors[i];
      if (good && i > 0) good = mpz_divisible_p(snf.divisors[i].get_mpz_t(), snf.divisors[i - 1].get_mpz_t());
    }
    if (!good) out.fail(m.to_string());
  }
  return out;
}

PropertyOutcome cokernel_enumeration_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"cokernel enumeration versus divisor product"};
  while (out.instances < count) {
    const std::size_t rows = uniform(rng, 1, 3);
    const auto m = random_matrix(rng, rows, rows + uniform(rng, 0, 2), -6, 6);
    const Cardinal order = linalg::cokernel_order(m);
    if (order.is_infinite() || order.value() > 10'000) continue;
    Integer divisor_product = 1;
    const auto divisors = linalg::smith_normal_form(m).divisors;
    for (const auto& d : divisors) divisor_product *= d;
    ++out.instances;
    const auto reps = linalg::enumerate_cokernel(m, 10'000);
    if (Integer(reps.size()) != divisor_product || order.value() != divisor_product)
      out.fail(m.to_string());
  }
  return out;
}

PropertyOutcome orbit_kernel_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"orbit kernels agree"};
  const auto groups = small_groups();
  while (out.instances < count) {
    auto codomain = std::make_shared<const FiniteGroup>(groups[uniform(rng, 0, long(groups.size()) - 1)]);
    const auto homs = random_finite_homs(rng, codomain, uniform(rng, 2, 4));
    const finite::TupleAction action(homs);
    const auto p = finite::orbits_parallel(action);
    ++out.instances;
    if (p != finite::orbits_by_expansion(action) || p != finite::orbits_by_union_find(action)) {
      out.fail("partitions differ on a group of order " + std::to_string(codomain->order()));
      continue;
    }
    std::uint64_t total = 0;
    for (auto size : p.class_sizes) {
      total += size;
      if (action.acting().size() % size != 0) out.fail("orbit size does not divide the acting order");
    }
    if (total != action.tuple_count()) out.fail("class sizes do not add up");
  }
  return out;
}

PropertyOutcome cyclic_cross_engine_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"finite and abelian engines agree on cyclic groups"};
  while (out.instances < count) {
    const std::size_t n = uniform(rng, 2, 9);
    const std::size_t k = uniform(rng, 2, 4);
    auto zn = std::make_shared<const FiniteGroup>(finite::cyclic_group(n));
    auto domain = std::make_shared<const FiniteGroup>(direct_product(*zn, *zn));
    // discrete log in Z/n through the generator
    const Element gen = zn->generators().front();
    std::vector<long> log(n);
    Element x = zn->identity();
    std::vector<Element> power(n);
    for (std::size_t e = 0; e < n; ++e, x = zn->multiply(x, gen)) {
      log[x] = long(e);
      power[e] = x;
    }
    std::vector<FiniteHom> homs;
    std::vector<AbelianHom> lifted;
    for (std::size_t i = 0; i < k; ++i) {
      const long a = uniform(rng, 0, long(n) - 1), b = uniform(rng, 0, long(n) - 1);
      std::vector<Element> image(domain->order());
      for (Element z = 0; z < domain->order(); ++z) {
        const long v = a * log[domain->component(z, 0)] + b * log[domain->component(z, 1)];
        image[z] = power[std::size_t(v % long(n))];
      }
      homs.emplace_back(domain, zn, std::move(image));
      // Z^(2 + k - 1) -> Z: the extra columns put n Z into every block
      IntMatrix m(1, 2 + k - 1);
      m(0, 0) = a;
      m(0, 1) = b;
      if (i > 0) m(0, 1 + i) = long(n);
      lifted.push_back({m});
    }
    ++out.instances;
    const auto finite_value = finite::twisted_reidemeister(homs).class_count;
    const auto abelian_value = abelian::reid_multi(AbelianSystem(lifted)).value;
    if (abelian_value != Cardinal(long(finite_value)))
      out.fail("Z/" + std::to_string(n) + ": " + std::to_string(finite_value) + " vs " +
               abelian_value.to_string());
  }
  return out;
}

PropertyOutcome nilpotent_identity_property(Rng& rng, std::size_t count) {
  PropertyOutcome out{"nilpotent reduction identity and recount"};
  const PcGroup domains[] = {heisenberg(), heisenberg_times_z()};
  while (out.instances < count) {
    const PcGroup& domain = domains[uniform(rng, 0, 1)];
    const PcHom phi = random_heisenberg_hom(rng, domain);
    const PcHom psi = random_heisenberg_hom(rng, domain);
    const auto report = nilpotent::reid_nilpotent(phi, psi);
    if (report.status != nilpotent::NilpotentStatus::ok || report.value.is_infinite() || !report.im_delta)
      continue;
    ++out.instances;
    if (report.value * *report.im_delta != report.r_prime * report.r_bar) {
      out.fail("identity fails");
      continue;
    }
    // only s and central elements can lie over the coincidence kernel, so a
    // small box already finds every shift
    const auto recount = nilpotent::recount_by_search(phi, psi, 2);
    if (recount.value != report.value)
      out.fail("recount " + recount.value.to_string() + " vs " + report.value.to_string());
  }
  return out;
}

}  // namespace ckit::testing
