#include <deque>
#include <set>

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"

namespace ckit::linalg {

Cardinal lattice_index(std::span<const IntVector> sub, std::span<const IntVector> super) {
  std::size_t ambient = 0;
  if (!super.empty()) ambient = super.front().size();
  else if (!sub.empty()) ambient = sub.front().size();
  for (const auto& v : super)
    if (v.size() != ambient) throw ShapeError("lattice_index: ragged super vectors");
  for (const auto& v : sub)
    if (v.size() != ambient) throw ShapeError("lattice_index: sub/super ambient ranks differ");

  const auto hs = column_hermite_form(IntMatrix::from_columns(super, ambient));
  std::vector<IntVector> coords;
  coords.reserve(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto c = lattice_coordinates(hs, sub[i]);
    if (!c)
      throw ContainmentError("lattice_index: sub vector " + std::to_string(i) + " " +
                             to_string(sub[i]) + " is not in the super lattice");
    coords.push_back(std::move(*c));
  }
  const auto x = IntMatrix::from_columns(coords, hs.rank());
  if (rank(x) < hs.rank()) return Cardinal::infinite();
  return cokernel_order(x);
}

std::vector<IntVector> enumerate_cokernel(const IntMatrix& m, std::size_t cap) {
  const auto h = column_hermite_form(m);
  if (h.rank() < m.rows())
    throw PreconditionError("enumerate_cokernel: cokernel is infinite (rank " +
                            std::to_string(h.rank()) + " < " + std::to_string(m.rows()) + ")");
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  IntVector zero(m.rows(), Integer(0));
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    IntVector cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      IntVector next = cur;
      next[i] += 1;
      next = reduce_modulo(h, std::move(next));
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw SizeError("enumerate_cokernel: more than " + std::to_string(cap) + " classes");
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace ckit::linalg
