#include "ckit/twisted.hpp"

#include <deque>

#include "ckit/errors.hpp"

namespace ckit::finite {

TwistedPartition twisted_reidemeister(std::span<const FiniteHom> homs, OrbitAlgorithm algorithm,
                                      const OrbitLimits& limits) {
  const TupleAction action(homs, limits);
  switch (algorithm) {
    case OrbitAlgorithm::expansion:
      return orbits_by_expansion(action);
    case OrbitAlgorithm::union_find:
      return orbits_by_union_find(action);
    case OrbitAlgorithm::parallel:
      break;
  }
  return orbits_parallel(action);
}

std::size_t conjugacy_class_count(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::size_t classes = 0;
  std::deque<Element> queue;
  for (Element x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++classes;
    seen[x] = true;
    queue.push_back(x);
    while (!queue.empty()) {
      const Element y = queue.front();
      queue.pop_front();
      for (Element s : g.generators()) {
        const Element c = g.multiply(g.multiply(s, y), g.inverse(s));
        if (!seen[c]) {
          seen[c] = true;
          queue.push_back(c);
        }
      }
    }
  }
  return classes;
}

std::vector<Element> transport_tuple(const FiniteGroup& codomain, std::span<const Element> tuple,
                                     std::size_t i, std::size_t j) {
  if (!(i < j) || j > tuple.size())
    throw PreconditionError("transport_tuple: need i < j <= " + std::to_string(tuple.size()));
  std::vector<Element> out(tuple.begin(), tuple.end());
  if (i >= 1) {
    std::swap(out[i - 1], out[j - 1]);
    return out;
  }
  const Element pivot_inv = codomain.inverse(tuple[j - 1]);
  for (std::size_t h = 0; h < out.size(); ++h)
    out[h] = h == j - 1 ? pivot_inv : codomain.multiply(pivot_inv, tuple[h]);
  return out;
}

FiniteDivisibility divisibility_report(std::span<const FiniteHom> homs, OrbitAlgorithm algorithm) {
  FiniteDivisibility r;
  r.multi = twisted_reidemeister(homs, algorithm).class_count;
  for (std::size_t j = 1; j < homs.size(); ++j) {
    const FiniteHom pair[] = {homs[0], homs[j]};
    r.pairwise.push_back(twisted_reidemeister(pair, algorithm).class_count);
    r.pairwise_product *= r.pairwise.back();
  }
  r.product_divides = r.multi % r.pairwise_product == 0;
  return r;
}

}  // namespace ckit::finite
