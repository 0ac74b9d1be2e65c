#include "ckit/finite_group.hpp"

#include <cstdlib>
#include <deque>
#include <random>

#include "ckit/errors.hpp"

namespace ckit::finite {

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("COINCIDENCE_KIT_MAX_CLOSURE")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000;
}

namespace {

std::shared_ptr<const CayleyTable> trivial_table() {
  auto t = std::make_shared<CayleyTable>();
  t->order = 1;
  t->mul = {0};
  t->inv = {0};
  return t;
}

bool generates(const CayleyTable& t, std::span<const Element> gens) {
  std::vector<bool> seen(t.order, false);
  std::deque<Element> queue{t.identity};
  seen[t.identity] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (Element g : gens) {
      const Element y = t.multiply(x, g);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count == t.order;
}

}  // namespace

FiniteGroup::FiniteGroup() : FiniteGroup(std::vector{trivial_table()}) {}

FiniteGroup::FiniteGroup(std::vector<std::shared_ptr<const CayleyTable>> factors)
    : factors_(std::move(factors)) {
  strides_.assign(factors_.size(), 1);
  order_ = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    strides_[i] = order_;
    order_ *= factors_[i]->order;
  }
  identity_ = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    identity_ += static_cast<Element>(factors_[i]->identity * strides_[i]);
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (Element g : factors_[i]->generators) {
      Element e = identity_ - static_cast<Element>(factors_[i]->identity * strides_[i]);
      generators_.push_back(e + static_cast<Element>(g * strides_[i]));
    }
}

FiniteGroup FiniteGroup::from_cayley(CayleyTable table) {
  return FiniteGroup(std::vector{std::make_shared<const CayleyTable>(std::move(table))});
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Element>>& rows,
                                    std::vector<Element> generators,
                                    std::vector<std::string> labels) {
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("Cayley table is empty");
  CayleyTable t;
  t.order = n;
  t.mul.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].size() != n)
      throw InputError("Cayley table row " + std::to_string(a) + " has " +
                       std::to_string(rows[a].size()) + " entries, expected " + std::to_string(n));
    for (Element v : rows[a]) {
      if (v >= n) throw InputError("Cayley table row " + std::to_string(a) + " has entry out of range");
      t.mul.push_back(v);
    }
  }
  // identity: a row equal to 0..n-1
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool is_id = true;
    for (std::size_t x = 0; x < n && is_id; ++x)
      is_id = t.multiply(Element(e), Element(x)) == x && t.multiply(Element(x), Element(e)) == x;
    if (is_id) {
      t.identity = Element(e);
      found = true;
    }
  }
  if (!found) throw InputError("Cayley table has no identity element");
  t.inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t b = 0;
    while (b < n && t.multiply(Element(a), Element(b)) != t.identity) ++b;
    if (b == n || t.multiply(Element(b), Element(a)) != t.identity)
      throw InputError("Cayley table: element " + std::to_string(a) + " has no two-sided inverse");
    t.inv[a] = Element(b);
  }
  auto assoc = [&](Element a, Element b, Element c) {
    if (t.multiply(t.multiply(a, b), c) != t.multiply(a, t.multiply(b, c)))
      throw InputError("Cayley table is not associative at (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 200) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<Element> pick(0, Element(n - 1));
    for (int i = 0; i < 1'000'000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
  if (generators.empty())
    for (Element a = 0; a < n; ++a)
      if (a != t.identity) generators.push_back(a);
  for (Element g : generators)
    if (g >= n) throw InputError("generator index " + std::to_string(g) + " out of range");
  if (!generates(t, generators)) throw InputError("listed generators do not generate the group");
  t.generators = std::move(generators);
  if (!labels.empty() && labels.size() != n)
    throw InputError("element label count does not match the group order");
  t.labels = std::move(labels);
  return from_cayley(std::move(t));
}

Element FiniteGroup::multiply(Element a, Element b) const {
  if (factors_.size() == 1) return factors_.front()->multiply(a, b);
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = *factors_[i];
    const auto ca = Element((a / strides_[i]) % f.order);
    const auto cb = Element((b / strides_[i]) % f.order);
    out += static_cast<Element>(f.multiply(ca, cb) * strides_[i]);
  }
  return out;
}

Element FiniteGroup::inverse(Element a) const {
  if (factors_.size() == 1) return factors_.front()->inv[a];
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = *factors_[i];
    out += static_cast<Element>(f.inv[(a / strides_[i]) % f.order] * strides_[i]);
  }
  return out;
}

std::string FiniteGroup::label(Element a) const {
  auto one = [](const CayleyTable& t, Element x) {
    return t.labels.empty() ? std::to_string(x) : t.labels[x];
  };
  if (factors_.size() == 1) return one(*factors_.front(), a);
  std::string s = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ", ";
    s += one(*factors_[i], component(a, i));
  }
  return s + ")";
}

FiniteGroup FiniteGroup::factor(std::size_t i) const { return FiniteGroup(std::vector{factors_.at(i)}); }

Element FiniteGroup::component(Element a, std::size_t i) const {
  return Element((a / strides_.at(i)) % factors_[i]->order);
}

Element FiniteGroup::compose(std::span<const Element> components) const {
  if (components.size() != factors_.size()) throw ShapeError("compose: wrong number of components");
  Element out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (components[i] >= factors_[i]->order) throw ShapeError("compose: component out of range");
    out += static_cast<Element>(components[i] * strides_[i]);
  }
  return out;
}

bool FiniteGroup::is_abelian() const {
  for (const auto& f : factors_)
    for (Element a : f->generators)
      for (Element b : f->generators)
        if (f->multiply(a, b) != f->multiply(b, a)) return false;
  return true;
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i)
    if (a.factors_[i] != b.factors_[i] && !(*a.factors_[i] == *b.factors_[i])) return false;
  return true;
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap) {
  if (g.order() > cap / h.order() || g.order() * h.order() > cap)
    throw SizeError("direct_product: order " + std::to_string(g.order()) + " x " +
                    std::to_string(h.order()) + " exceeds cap " + std::to_string(cap));
  auto factors = g.factors_;
  factors.insert(factors.end(), h.factors_.begin(), h.factors_.end());
  return FiniteGroup(std::move(factors));
}

// ---------------------------------------------------------------------------

FiniteHom::FiniteHom(std::shared_ptr<const FiniteGroup> domain,
                     std::shared_ptr<const FiniteGroup> codomain, std::vector<Element> image)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), image_(std::move(image)) {
  const auto& d = *domain_;
  const auto& c = *codomain_;
  if (image_.size() != d.order())
    throw InputError("FiniteHom: image table has " + std::to_string(image_.size()) +
                     " entries for a domain of order " + std::to_string(d.order()));
  for (Element v : image_)
    if (v >= c.order()) throw InputError("FiniteHom: image outside the codomain");
  if (image_[d.identity()] != c.identity())
    throw InputError("FiniteHom: identity is not sent to the identity");
  for (Element g : d.generators())
    for (Element x = 0; x < d.order(); ++x)
      if (image_[d.multiply(g, x)] != c.multiply(image_[g], image_[x]))
        throw InputError("FiniteHom: not a homomorphism at generator " + d.label(g) +
                         " and element " + d.label(x));
}

FiniteHom FiniteHom::from_generator_images(std::shared_ptr<const FiniteGroup> domain,
                                           std::shared_ptr<const FiniteGroup> codomain,
                                           std::span<const Element> generator_images) {
  const auto& gens = domain->generators();
  if (generator_images.size() != gens.size())
    throw InputError("FiniteHom: " + std::to_string(generator_images.size()) +
                     " generator images for " + std::to_string(gens.size()) + " generators");
  constexpr Element unset = ~Element{0};
  std::vector<Element> image(domain->order(), unset);
  image[domain->identity()] = codomain->identity();
  std::deque<Element> queue{domain->identity()};
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Element y = domain->multiply(x, gens[i]);
      if (image[y] != unset) continue;
      if (generator_images[i] >= codomain->order()) throw InputError("FiniteHom: image out of range");
      image[y] = codomain->multiply(image[x], generator_images[i]);
      queue.push_back(y);
    }
  }
  return FiniteHom(std::move(domain), std::move(codomain), std::move(image));
}

FiniteHom FiniteHom::identity(std::shared_ptr<const FiniteGroup> group) {
  std::vector<Element> image(group->order());
  for (Element x = 0; x < group->order(); ++x) image[x] = x;
  return FiniteHom(group, group, std::move(image));
}

FiniteHom FiniteHom::trivial(std::shared_ptr<const FiniteGroup> domain,
                             std::shared_ptr<const FiniteGroup> codomain) {
  std::vector<Element> image(domain->order(), codomain->identity());
  return FiniteHom(std::move(domain), std::move(codomain), std::move(image));
}

FiniteHom FiniteHom::projection(std::shared_ptr<const FiniteGroup> domain, std::size_t index) {
  if (index >= domain->factor_count())
    throw InputError("FiniteHom::projection: domain has only " +
                     std::to_string(domain->factor_count()) + " factors");
  auto codomain = std::make_shared<const FiniteGroup>(domain->factor(index));
  std::vector<Element> image(domain->order());
  for (Element x = 0; x < domain->order(); ++x) image[x] = domain->component(x, index);
  return FiniteHom(std::move(domain), std::move(codomain), std::move(image));
}

}  // namespace ckit::finite
