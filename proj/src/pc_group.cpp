#include "ckit/pc_group.hpp"

#include <algorithm>

#include "ckit/errors.hpp"

namespace ckit::nilpotent {

PcGroup::PcGroup(std::vector<std::string> noncentral, std::vector<std::string> central,
                 std::vector<std::vector<IntVector>> comm)
    : noncentral_(noncentral.size()) {
  names_ = std::move(noncentral);
  names_.insert(names_.end(), central.begin(), central.end());
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw InputError("pc group: generator name '" + names_[i] + "' repeated");
  const std::size_t c = central_count();
  comm_.assign(noncentral_ * noncentral_, IntVector(c));
  if (comm.size() > noncentral_) throw InputError("pc group: commutator table has too many rows");
  for (std::size_t i = 0; i < comm.size(); ++i) {
    if (comm[i].size() > i)
      throw InputError("pc group: commutator table row " + std::to_string(i) +
                       " must only list j < i");
    for (std::size_t j = 0; j < comm[i].size(); ++j) {
      if (comm[i][j].empty()) continue;
      if (comm[i][j].size() != c)
        throw InputError("pc group: [" + names_[i] + "," + names_[j] + "] has " +
                         std::to_string(comm[i][j].size()) + " entries, expected " + std::to_string(c));
      comm_[i * noncentral_ + j] = comm[i][j];
    }
  }
}

PcGroup PcGroup::abelian(std::vector<std::string> names) { return PcGroup(std::move(names), {}); }

std::size_t PcGroup::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("pc group: unknown generator '" + name + "'");
  return std::size_t(it - names_.begin());
}

IntVector PcGroup::comm(std::size_t i, std::size_t j) const {
  IntVector out(central_count());
  if (is_central(i) || is_central(j) || i == j) return out;
  if (i > j) return comm_[i * noncentral_ + j];
  const auto& v = comm_[j * noncentral_ + i];
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -v[k];
  return out;
}

PcWord PcGroup::generator(std::size_t i) const {
  PcWord w(size());
  w.at(i) = 1;
  return w;
}

PcWord PcGroup::central_word(std::span<const Integer> central) const {
  if (central.size() != central_count()) throw ShapeError("central_word: wrong length");
  PcWord w(size());
  std::copy(central.begin(), central.end(), w.begin() + std::ptrdiff_t(noncentral_));
  return w;
}

void PcGroup::check_word(const PcWord& u) const {
  if (u.size() != size())
    throw ShapeError("pc word of length " + std::to_string(u.size()) + " for a group on " +
                     std::to_string(size()) + " generators");
}

IntVector PcGroup::cross(std::span<const Integer> u, std::span<const Integer> v) const {
  IntVector out(central_count());
  Integer s;
  for (std::size_t i = 1; i < noncentral_; ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (sgn(v[j]) == 0) continue;
      s = u[i] * v[j];
      const auto& c = comm_[i * noncentral_ + j];
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += s * c[k];
    }
  }
  return out;
}

PcWord PcGroup::multiply(const PcWord& u, const PcWord& v) const {
  check_word(u);
  check_word(v);
  PcWord w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = u[i] + v[i];
  const IntVector c = cross(u, v);
  for (std::size_t k = 0; k < c.size(); ++k) w[noncentral_ + k] += c[k];
  return w;
}

PcWord PcGroup::power(const PcWord& u, const Integer& e) const {
  check_word(u);
  PcWord w(size());
  for (std::size_t i = 0; i < size(); ++i) w[i] = e * u[i];
  // (v, z)^e = (e v, e z + C(e, 2) K), K = cross(v, v)
  const Integer binom = e * (e - 1) / 2;
  const IntVector k = cross(u, u);
  for (std::size_t i = 0; i < k.size(); ++i) w[noncentral_ + i] += binom * k[i];
  return w;
}

PcWord PcGroup::commutator(const PcWord& u, const PcWord& v) const {
  return multiply(multiply(inverse(u), inverse(v)), multiply(u, v));
}

std::string PcGroup::format(const PcWord& u) const {
  check_word(u);
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (sgn(u[i]) == 0) continue;
    if (!out.empty()) out += ' ';
    out += names_[i];
    if (u[i] != 1) out += "^" + u[i].get_str();
  }
  return out.empty() ? "1" : out;
}

PcGroup direct_power_pc(const PcGroup& g, std::size_t m) {
  if (m == 0) throw PreconditionError("direct_power_pc: m must be at least 1");
  if (m == 1) return g;
  const std::size_t nc = g.noncentral_count();
  const std::size_t c = g.central_count();
  std::vector<std::string> noncentral, central;
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t i = 0; i < nc; ++i) noncentral.push_back(g.names()[i] + "_" + std::to_string(t + 1));
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t i = 0; i < c; ++i) central.push_back(g.names()[nc + i] + "_" + std::to_string(t + 1));
  std::vector<std::vector<IntVector>> comm(m * nc);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t i = 0; i < nc; ++i) {
      auto& row = comm[t * nc + i];
      row.assign(t * nc + i, IntVector{});
      for (std::size_t j = 0; j < i; ++j) {
        IntVector v(m * c);
        const IntVector base = g.comm(i, j);
        std::copy(base.begin(), base.end(), v.begin() + std::ptrdiff_t(t * c));
        row[t * nc + j] = std::move(v);
      }
    }
  return PcGroup(std::move(noncentral), std::move(central), std::move(comm));
}

std::size_t power_coordinate(const PcGroup& g, std::size_t m, std::size_t copy, std::size_t i) {
  const std::size_t nc = g.noncentral_count();
  if (copy >= m || i >= g.size()) throw PreconditionError("power_coordinate: index out of range");
  if (m == 1) return i;
  return i < nc ? copy * nc + i : m * nc + copy * g.central_count() + (i - nc);
}

PcWord PcHom::operator()(const PcWord& x) const {
  if (x.size() != domain.size()) throw ShapeError("PcHom: word does not belong to the domain");
  PcWord out = codomain.identity();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) out = codomain.multiply(out, codomain.power(images[i], x[i]));
  return out;
}

HomValidation validate_hom(const PcHom& h) {
  HomValidation r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.diagnostics.push_back(std::move(msg));
  };
  if (h.images.size() != h.domain.size()) {
    fail(std::to_string(h.images.size()) + " images for " + std::to_string(h.domain.size()) + " generators");
    return r;
  }
  for (std::size_t i = 0; i < h.images.size(); ++i)
    if (h.images[i].size() != h.codomain.size()) fail("image of " + h.domain.names()[i] + " has wrong length");
  if (!r.valid) return r;
  const auto& d = h.domain;
  const auto& c = h.codomain;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const PcWord lhs = c.commutator(h.images[i], h.images[j]);
      const PcWord rhs = h(d.central_word(d.comm(i, j)));
      if (lhs != rhs)
        fail("[" + d.names()[i] + "," + d.names()[j] + "]: images give " + c.format(lhs) +
             ", relation requires " + c.format(rhs));
    }
  return r;
}

PcHom hom_into_power(std::span<const PcHom> homs) {
  if (homs.empty()) throw PreconditionError("hom_into_power: no homomorphisms");
  const std::size_t m = homs.size();
  const PcGroup& g = homs[0].codomain;
  for (const auto& h : homs)
    if (!(h.domain == homs[0].domain) || !(h.codomain == g))
      throw PreconditionError("hom_into_power: homomorphisms do not share domain and codomain");
  PcHom out{homs[0].domain, direct_power_pc(g, m), {}};
  for (std::size_t x = 0; x < out.domain.size(); ++x) {
    PcWord w = out.codomain.identity();
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t i = 0; i < g.size(); ++i) w[power_coordinate(g, m, t, i)] = homs[t].images[x][i];
    out.images.push_back(std::move(w));
  }
  return out;
}

}  // namespace ckit::nilpotent
