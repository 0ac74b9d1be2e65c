#include "ckit/nilpotent.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"

namespace ckit::nilpotent {

namespace {

IntVector slice(std::span<const Integer> v, std::size_t from, std::size_t count) {
  return IntVector(v.begin() + std::ptrdiff_t(from), v.begin() + std::ptrdiff_t(from + count));
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

void require_valid(const PcHom& h, const char* name) {
  const auto v = validate_hom(h);
  if (!v.valid) {
    std::string msg = std::string(name) + " is not a homomorphism";
    for (const auto& d : v.diagnostics) msg += "; " + d;
    throw InputError(msg);
  }
}

IntMatrix columns_of(const PcHom& h, std::size_t count, std::size_t rows,
                     const std::function<PcWord(std::size_t)>& source,
                     const std::function<IntVector(const PcWord&)>& target) {
  std::vector<IntVector> cols;
  for (std::size_t k = 0; k < count; ++k) cols.push_back(target(h(source(k))));
  return IntMatrix::from_columns(cols, rows);
}

}  // namespace

ExtensionCoordinates ExtensionCoordinates::of(const PcGroup& g) {
  ExtensionCoordinates e;
  e.noncentral = g.noncentral_count();
  e.central = g.central_count();
  std::vector<IntVector> comms;
  for (std::size_t i = 0; i < e.noncentral; ++i)
    for (std::size_t j = 0; j < i; ++j) comms.push_back(g.comm(i, j));
  const auto h = linalg::column_hermite_form(IntMatrix::from_columns(comms, e.central));
  e.a_basis = h.basis;
  e.a_rank = h.rank();
  e.b_rank = e.noncentral + e.central - e.a_rank;

  const auto snf = linalg::smith_normal_form(e.a_basis);
  for (const auto& d : snf.divisors)
    if (d != 1)
      throw InputError("commutator subgroup is not saturated in the central generators "
                       "(abelianization has torsion, elementary divisor " + d.get_str() + ")");
  const IntMatrix s_inv = linalg::unimodular_inverse(snf.s);
  e.q = hstack(e.a_basis, s_inv.block(0, e.a_rank, e.central, e.central - e.a_rank));
  e.q_inv = linalg::unimodular_inverse(e.q);
  return e;
}

IntVector ExtensionCoordinates::project(const PcWord& x) const {
  IntVector b = slice(x, 0, noncentral);
  const IntVector z = q_inv.apply(slice(x, noncentral, central));
  b.insert(b.end(), z.begin() + std::ptrdiff_t(a_rank), z.end());
  return b;
}

std::optional<IntVector> ExtensionCoordinates::a_coordinates(const PcWord& x) const {
  for (std::size_t i = 0; i < noncentral; ++i)
    if (sgn(x[i]) != 0) return std::nullopt;
  const IntVector z = q_inv.apply(slice(x, noncentral, central));
  for (std::size_t i = a_rank; i < central; ++i)
    if (sgn(z[i]) != 0) return std::nullopt;
  return slice(z, 0, a_rank);
}

PcWord ExtensionCoordinates::section(std::span<const Integer> b) const {
  if (b.size() != b_rank) throw ShapeError("section: wrong length");
  PcWord x(noncentral + central);
  std::copy(b.begin(), b.begin() + std::ptrdiff_t(noncentral), x.begin());
  IntVector full(central);
  std::copy(b.begin() + std::ptrdiff_t(noncentral), b.end(), full.begin() + std::ptrdiff_t(a_rank));
  const IntVector z = q.apply(full);
  std::copy(z.begin(), z.end(), x.begin() + std::ptrdiff_t(noncentral));
  return x;
}

PcWord ExtensionCoordinates::a_element(std::span<const Integer> a) const {
  if (a.size() != a_rank) throw ShapeError("a_element: wrong length");
  PcWord x(noncentral + central);
  const IntVector z = a_basis.apply(a);
  std::copy(z.begin(), z.end(), x.begin() + std::ptrdiff_t(noncentral));
  return x;
}

CentralExtensionData central_extension_data(const PcHom& phi, const PcHom& psi) {
  require_valid(phi, "phi");
  require_valid(psi, "psi");
  if (!(phi.domain == psi.domain) || !(phi.codomain == psi.codomain))
    throw InputError("phi and psi do not share domain and codomain");
  CentralExtensionData d{ExtensionCoordinates::of(phi.domain), ExtensionCoordinates::of(phi.codomain), {}, {}, {}, {}};
  const auto& g1 = d.g1;
  const auto& g2 = d.g2;

  auto a2 = [&](const PcWord& y) {
    auto c = g2.a_coordinates(y);
    if (!c)
      throw ConsistencyError("image of a commutator " + phi.codomain.format(y) +
                             " lies outside the target commutator subgroup");
    return *c;
  };
  auto from_a1 = [&](std::size_t k) { return g1.a_element(unit(g1.a_rank, k)); };
  auto from_b1 = [&](std::size_t k) { return g1.section(unit(g1.b_rank, k)); };
  auto to_b2 = [&](const PcWord& y) { return g2.project(y); };

  d.phi_prime = columns_of(phi, g1.a_rank, g2.a_rank, from_a1, a2);
  d.psi_prime = columns_of(psi, g1.a_rank, g2.a_rank, from_a1, a2);
  d.phi_bar = columns_of(phi, g1.b_rank, g2.b_rank, from_b1, to_b2);
  d.psi_bar = columns_of(psi, g1.b_rank, g2.b_rank, from_b1, to_b2);

  for (std::size_t i = 0; i < phi.domain.size(); ++i) {
    const PcWord gi = phi.domain.generator(i);
    const IntVector b1 = g1.project(gi);
    if (g2.project(phi(gi)) != d.phi_bar.apply(b1) || g2.project(psi(gi)) != d.psi_bar.apply(b1))
      throw ConsistencyError("abelianized maps do not commute with projection at generator " +
                             phi.domain.names()[i]);
  }
  return d;
}

std::vector<IntVector> delta_images(const PcHom& phi, const PcHom& psi, const CentralExtensionData& data) {
  std::vector<IntVector> out;
  for (const auto& k : linalg::kernel_basis(data.psi_bar - data.phi_bar)) {
    const PcWord theta = data.g1.section(k);
    const PcWord x = psi.codomain.multiply(psi(theta), psi.codomain.inverse(phi(theta)));
    auto a = data.g2.a_coordinates(x);
    if (!a)
      throw ConsistencyError("delta: psi(theta) phi(theta)^-1 = " + psi.codomain.format(x) +
                             " is not in the commutator subgroup for theta = " + phi.domain.format(theta));
    out.push_back(std::move(*a));
  }
  return out;
}

Cardinal delta_image_order(const PcHom& phi, const PcHom& psi, const CentralExtensionData& data) {
  const IntMatrix dp = data.psi_prime - data.phi_prime;
  if (linalg::cokernel_order(dp).is_infinite())
    throw PreconditionError("delta_image_order: R(phi', psi') is infinite");
  const auto base = dp.columns();
  auto all = base;
  for (auto& v : delta_images(phi, psi, data)) all.push_back(std::move(v));
  if (data.g2.a_rank == 0) return Cardinal(1L);
  return linalg::lattice_index(base, all);
}

NilpotentReport reid_nilpotent(const PcHom& phi, const PcHom& psi) {
  NilpotentReport r;
  r.data = central_extension_data(phi, psi);
  const auto& d = r.data;
  auto& t = r.trace;
  t.push_back("rk A1 = " + std::to_string(d.g1.a_rank) + ", rk B1 = " + std::to_string(d.g1.b_rank) +
              ", rk A2 = " + std::to_string(d.g2.a_rank) + ", rk B2 = " + std::to_string(d.g2.b_rank));
  t.push_back("phi' = " + d.phi_prime.to_string() + ", psi' = " + d.psi_prime.to_string());
  t.push_back("phi_bar = " + d.phi_bar.to_string() + ", psi_bar = " + d.psi_bar.to_string());

  const IntMatrix dbar = d.phi_bar - d.psi_bar;
  const IntMatrix dprime = d.phi_prime - d.psi_prime;
  t.push_back("phi_bar - psi_bar = " + dbar.to_string());
  t.push_back("phi' - psi' = " + dprime.to_string());
  r.r_bar = linalg::cokernel_order(dbar);
  r.r_prime = linalg::cokernel_order(dprime);
  t.push_back("R_bar = " + r.r_bar.to_string());
  t.push_back("R' = " + r.r_prime.to_string());

  const std::size_t rk = linalg::rank(dprime);
  r.r_prime_rank_test = rk == d.g2.a_rank;
  t.push_back("rk Im(phi' - psi') = " + std::to_string(rk) + (r.r_prime_rank_test ? " == " : " != ") +
              "rk A2 = " + std::to_string(d.g2.a_rank));
  const long coin_rank = long(d.g1.a_rank) - long(rk);
  const long expected = long(d.g1.a_rank) - long(d.g2.a_rank);
  r.coin_rank_hypothesis = coin_rank == expected;
  t.push_back("rk Coin(phi', psi') = " + std::to_string(coin_rank) +
              (r.coin_rank_hypothesis ? " == " : " != ") + "rk A1 - rk A2 = " + std::to_string(expected));
  if (r.r_prime_rank_test != r.r_prime.is_finite())
    throw ConsistencyError("rank test and cokernel order disagree on the finiteness of R'");

  if (r.r_bar.is_infinite()) {
    r.value = Cardinal::infinite();
    t.push_back("R_bar infinite, so R(phi, psi) is infinite");
    return r;
  }
  if (r.r_prime.is_infinite() || !r.coin_rank_hypothesis) {
    r.status = NilpotentStatus::unsupported_reduction;
    r.value = Cardinal::infinite();
    r.unsupported_reason = "R(phi', psi') is infinite (rk Im(phi' - psi') = " + std::to_string(rk) +
                           " < rk A2 = " + std::to_string(d.g2.a_rank) +
                           "); the reduction through a smaller quotient of the abelianization is not implemented";
    t.push_back("unsupported reduction: " + r.unsupported_reason);
    return r;
  }
  r.im_delta = delta_image_order(phi, psi, d);
  t.push_back("|Im delta| = " + r.im_delta->to_string());
  const Integer product = r.r_prime.value() * r.r_bar.value();
  const Integer& den = r.im_delta->value();
  if (sgn(den) == 0 || product % den != 0)
    throw ConsistencyError("R' * R_bar = " + product.get_str() + " is not divisible by |Im delta| = " + den.get_str());
  r.value = Cardinal(Integer(product / den));
  if (r.value.value() * den != product) throw ConsistencyError("value * |Im delta| != R' * R_bar");
  t.push_back("R = R' * R_bar / |Im delta| = " + r.value.to_string());
  return r;
}

std::pair<PcHom, PcHom> stacked_pair(std::span<const PcHom> homs) {
  if (homs.size() < 2)
    throw PreconditionError("need at least 2 homomorphisms, got " + std::to_string(homs.size()));
  std::vector<PcHom> firsts(homs.size() - 1, homs[0]);
  return {hom_into_power(firsts), hom_into_power(homs.subspan(1))};
}

NilpotentReport reid_nilpotent_multi(std::span<const PcHom> homs) {
  for (std::size_t i = 0; i < homs.size(); ++i)
    require_valid(homs[i], ("phi_" + std::to_string(i + 1)).c_str());
  if (homs.size() == 2) return reid_nilpotent(homs[0], homs[1]);
  const auto [f, g] = stacked_pair(homs);
  auto r = reid_nilpotent(f, g);
  r.trace.insert(r.trace.begin(), "F = (phi_1, ..., phi_1), G = (phi_2, ..., phi_" +
                                      std::to_string(homs.size()) + ") into " +
                                      std::to_string(homs.size() - 1) + " copies of the codomain");
  return r;
}

long default_search_bound(const PcGroup& domain, std::size_t budget) {
  long b = 0;
  for (;;) {
    const long side = 2 * (b + 1) + 1;
    double total = 1;
    for (std::size_t i = 0; i < domain.size(); ++i) total *= double(side);
    if (total > double(budget)) return b;
    ++b;
    if (b > 1000) return b;
  }
}

RecountResult recount_by_search(const PcHom& phi, const PcHom& psi, long bound) {
  const auto d = central_extension_data(phi, psi);
  const IntMatrix dprime = d.phi_prime - d.psi_prime;
  const Cardinal r_bar = linalg::cokernel_order(d.phi_bar - d.psi_bar);
  if (r_bar.is_infinite() || linalg::cokernel_order(dprime).is_infinite())
    throw PreconditionError("recount_by_search: needs finite R' and R_bar");

  const auto h = linalg::column_hermite_form(dprime);
  const auto classes = linalg::enumerate_cokernel(dprime, 1'000'000);
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);

  RecountResult out;
  std::set<IntVector> shifts;
  const PcGroup& g1 = phi.domain;
  const PcGroup& g2 = phi.codomain;
  PcWord g(g1.size(), Integer(-bound));
  for (;;) {
    ++out.searched;
    const PcWord y = g2.multiply(phi(g), g2.inverse(psi(g)));
    if (auto a = d.g2.a_coordinates(y)) shifts.insert(linalg::reduce_modulo(h, std::move(*a)));
    std::size_t i = 0;
    while (i < g.size() && g[i] == bound) g[i++] = -bound;
    if (i == g.size()) break;
    g[i] += 1;
  }

  std::vector<bool> seen(classes.size(), false);
  std::size_t orbits = 0;
  for (std::size_t s = 0; s < classes.size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    seen[s] = true;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const IntVector& cur = classes[queue.front()];
      queue.pop_front();
      for (const auto& shift : shifts) {
        IntVector next = cur;
        for (std::size_t k = 0; k < next.size(); ++k) next[k] += shift[k];
        const std::size_t j = index.at(linalg::reduce_modulo(h, std::move(next)));
        if (!seen[j]) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
  }
  out.identified_classes = Cardinal(long(orbits));
  out.value = out.identified_classes * r_bar;
  return out;
}

}  // namespace ckit::nilpotent
