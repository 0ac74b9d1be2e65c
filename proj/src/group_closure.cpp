// Breadth-first closure of concrete generators into Cayley tables.

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>

#include "ckit/errors.hpp"
#include "ckit/finite_group.hpp"
#include "ckit/linalg.hpp"

namespace ckit::finite {

namespace {

using Key = std::vector<long>;

CayleyTable close_keys(const std::vector<Key>& gens, const Key& identity,
                       const std::function<Key(const Key&, const Key&)>& mul,
                       const std::function<std::string(const Key&)>& label, std::size_t cap) {
  std::vector<Key> elements{identity};
  std::map<Key, Element> index{{identity, 0}};
  // discovery edge: elements[j] = elements[parent[j]] * gens[via[j]]
  std::vector<Element> parent{0};
  std::vector<std::size_t> via{0};
  std::vector<Element> rmul;  // rmul[i * gens + g] = elements[i] * gens[g]

  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Key y = mul(elements[i], gens[g]);
      auto [it, inserted] = index.try_emplace(std::move(y), Element(elements.size()));
      if (inserted) {
        if (elements.size() >= cap)
          throw SizeError("group closure exceeds cap of " + std::to_string(cap) +
                          " elements (set COINCIDENCE_KIT_MAX_CLOSURE to raise it)");
        elements.push_back(it->first);
        parent.push_back(Element(i));
        via.push_back(g);
      }
      rmul.push_back(it->second);
    }
  }

  CayleyTable t;
  const std::size_t n = elements.size();
  t.order = n;
  t.identity = 0;
  t.mul.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) t.mul[i * n] = Element(i);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      t.mul[i * n + j] = rmul[std::size_t(t.mul[i * n + parent[j]]) * gens.size() + via[j]];
  t.inv.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t.mul[i * n + j] == 0) {
        t.inv[i] = Element(j);
        break;
      }
  for (const auto& g : gens) {
    const Element e = index.at(g);
    if (std::find(t.generators.begin(), t.generators.end(), e) == t.generators.end() && e != 0)
      t.generators.push_back(e);
  }
  t.labels.reserve(n);
  for (const auto& e : elements) t.labels.push_back(label(e));
  return t;
}

}  // namespace

Permutation parse_cycles(const std::string& text, std::size_t degree) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = i;
  std::vector<bool> moved(degree, false);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("permutation \"" + text + "\": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '(' at offset " + std::to_string(pos));
    ++pos;
    std::vector<std::size_t> cycle;
    for (;;) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("unexpected character");
      std::size_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + std::size_t(text[pos++] - '0');
      if (v < 1 || v > degree) fail("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (moved[v - 1]) fail("point " + std::to_string(v) + " repeated");
      moved[v - 1] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

std::string format_cycles(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FiniteGroup close_permutations(std::span<const Permutation> generators, std::size_t degree,
                               std::size_t cap) {
  std::vector<Key> gens;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& p = generators[g];
    if (p.size() != degree)
      throw InputError("permutation generator " + std::to_string(g) + " has degree " +
                       std::to_string(p.size()) + ", expected " + std::to_string(degree));
    std::vector<bool> hit(degree, false);
    for (std::size_t v : p) {
      if (v >= degree || hit[v]) throw InputError("generator " + std::to_string(g) + " is not a bijection");
      hit[v] = true;
    }
    gens.emplace_back(p.begin(), p.end());
  }
  Key id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = long(i);
  // product a*b acts as "first a, then b" on points
  auto mul = [](const Key& a, const Key& b) {
    Key c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[std::size_t(a[i])];
    return c;
  };
  auto label = [](const Key& k) { return format_cycles(Permutation(k.begin(), k.end())); };
  return FiniteGroup::from_cayley(close_keys(gens, id, mul, label, cap));
}

FiniteGroup close_matrices_mod_p(std::span<const IntMatrix> generators, unsigned long p, std::size_t cap) {
  if (p < 2) throw InputError("matrix group modulus must be a prime, got " + std::to_string(p));
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw InputError("matrix group modulus " + std::to_string(p) + " is not prime");
  const std::size_t dim = generators.empty() ? 1 : generators.front().rows();
  const Integer modulus(p);
  std::vector<Key> gens;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const auto& m = generators[g];
    if (m.rows() != dim || m.cols() != dim)
      throw InputError("matrix generator " + std::to_string(g) + " is not " + std::to_string(dim) +
                       "x" + std::to_string(dim));
    Integer det = linalg::determinant(m);
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), det.get_mpz_t(), modulus.get_mpz_t());
    if (sgn(r) == 0) throw InputError("matrix generator " + std::to_string(g) + " is singular mod p");
    Key k;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), modulus.get_mpz_t());
        k.push_back(r.get_si());
      }
    gens.push_back(std::move(k));
  }
  Key id(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) id[i * dim + i] = 1;
  const long pm = long(p);
  auto mul = [dim, pm](const Key& a, const Key& b) {
    Key c(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < dim; ++j) c[i * dim + j] = (c[i * dim + j] + a[i * dim + k] * b[k * dim + j]) % pm;
    return c;
  };
  auto label = [dim](const Key& k) {
    std::string s = "[";
    for (std::size_t i = 0; i < dim; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < dim; ++j) s += (j ? "," : "") + std::to_string(k[i * dim + j]);
      s += ']';
    }
    return s + "]";
  };
  return FiniteGroup::from_cayley(close_keys(gens, id, mul, label, cap));
}

FiniteGroup binary_icosahedral() {
  const IntMatrix gens[] = {IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{0, -1}, {1, 0}}};
  return close_matrices_mod_p(gens, 5, 120);
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("cyclic_group: order must be positive");
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return close_permutations(std::span<const Permutation>(&p, 1), n, n);
}

}  // namespace ckit::finite
