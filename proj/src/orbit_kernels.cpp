#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <numeric>

#include <omp.h>

#include "ckit/errors.hpp"
#include "ckit/twisted.hpp"

namespace ckit::finite {

TupleAction::TupleAction(std::span<const FiniteHom> homs, const OrbitLimits& limits) {
  if (homs.size() < 2)
    throw PreconditionError("twisted_reidemeister: need at least 2 homomorphisms, got " +
                            std::to_string(homs.size()));
  const FiniteGroup& domain = homs[0].domain();
  codomain_ = &homs[0].codomain();
  for (std::size_t i = 1; i < homs.size(); ++i)
    if (!(homs[i].domain() == domain) || !(homs[i].codomain() == *codomain_))
      throw PreconditionError("twisted_reidemeister: hom " + std::to_string(i + 1) +
                              " has a different domain or codomain than hom 1");
  length_ = homs.size() - 1;

  const std::uint64_t n = codomain_->order();
  tuple_count_ = 1;
  for (std::size_t i = 0; i < length_; ++i) {
    if (tuple_count_ > limits.max_tuples / n)
      throw SizeError("twisted_reidemeister: tuple space " + std::to_string(n) + "^" +
                      std::to_string(length_) + " exceeds cap " + std::to_string(limits.max_tuples));
    tuple_count_ *= n;
  }
  if (tuple_count_ > limits.max_tuples)
    throw SizeError("twisted_reidemeister: tuple space exceeds cap " + std::to_string(limits.max_tuples));

  auto image_tuple = [&](Element z) {
    std::vector<Element> a(homs.size());
    for (std::size_t i = 0; i < homs.size(); ++i) a[i] = homs[i](z);
    return a;
  };
  acting_.reserve(domain.order());
  for (Element z = 0; z < domain.order(); ++z) acting_.push_back(image_tuple(z));
  std::sort(acting_.begin(), acting_.end());
  acting_.erase(std::unique(acting_.begin(), acting_.end()), acting_.end());
  for (Element g : domain.generators()) generators_.push_back(image_tuple(g));
  if (generators_.size() > limits.max_work / tuple_count_)
    throw SizeError("twisted_reidemeister: " + std::to_string(generators_.size()) +
                    " generators on " + std::to_string(tuple_count_) +
                    " tuples exceeds work cap " + std::to_string(limits.max_work));
}

TupleIndex TupleAction::encode(std::span<const Element> tuple) const {
  TupleIndex t = 0;
  for (Element e : tuple) t = t * codomain_->order() + e;
  return t;
}

void TupleAction::decode(TupleIndex t, std::span<Element> out) const {
  const TupleIndex n = codomain_->order();
  for (std::size_t i = length_; i-- > 0;) {
    out[i] = Element(t % n);
    t /= n;
  }
}

TupleIndex TupleAction::act(std::span<const Element> a, TupleIndex t, std::span<Element> scratch) const {
  decode(t, scratch);
  const FiniteGroup& g = *codomain_;
  for (std::size_t i = 0; i < length_; ++i)
    scratch[i] = g.multiply(g.multiply(a[0], scratch[i]), g.inverse(a[i + 1]));
  return encode(scratch);
}

namespace {

// Numbers classes by their smallest tuple. `rep[t]` must be a tuple of the
// same class with rep[t] <= t and rep[rep[t]] == rep[t].
TwistedPartition label_by_minimum(const std::vector<TupleIndex>& rep) {
  TwistedPartition p;
  p.class_of.resize(rep.size());
  for (TupleIndex t = 0; t < rep.size(); ++t) {
    if (rep[t] == t) {
      p.class_of[t] = std::uint32_t(p.class_count++);
      p.class_sizes.push_back(0);
    } else {
      p.class_of[t] = p.class_of[rep[t]];
    }
    ++p.class_sizes[p.class_of[t]];
  }
  return p;
}

}  // namespace

TwistedPartition orbits_parallel(const TupleAction& action) {
  const auto count = static_cast<std::int64_t>(action.tuple_count());
  std::vector<TupleIndex> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), TupleIndex{0});
  // roots only ever link to a smaller root, so parent[x] <= x throughout
  auto find = [&](TupleIndex x) {
    for (;;) {
      std::atomic_ref<TupleIndex> px(parent[x]);
      TupleIndex p = px.load(std::memory_order_relaxed);
      if (p == x) return x;
      const TupleIndex gp = std::atomic_ref<TupleIndex>(parent[p]).load(std::memory_order_relaxed);
      if (gp != p) px.compare_exchange_weak(p, gp, std::memory_order_relaxed);
      x = gp;
    }
  };
  auto unite = [&](TupleIndex a, TupleIndex b) {
    for (;;) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      if (a < b) std::swap(a, b);
      TupleIndex expected = a;
      if (std::atomic_ref<TupleIndex>(parent[a]).compare_exchange_strong(expected, b, std::memory_order_relaxed))
        return;
    }
  };
  const auto& generators = action.acting_generators();
#pragma omp parallel
  {
    std::vector<Element> scratch(action.tuple_length());
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < count; ++t)
      for (const auto& g : generators) unite(TupleIndex(t), action.act(g, TupleIndex(t), scratch));
  }
  std::vector<TupleIndex> rep(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) rep[std::size_t(t)] = find(TupleIndex(t));
  return label_by_minimum(rep);
}

TwistedPartition orbits_by_expansion(const TupleAction& action) {
  const TupleIndex count = action.tuple_count();
  constexpr TupleIndex unseen = ~TupleIndex{0};
  std::vector<TupleIndex> rep(count, unseen);
  std::vector<Element> scratch(action.tuple_length());
  std::deque<TupleIndex> queue;
  for (TupleIndex start = 0; start < count; ++start) {
    if (rep[start] != unseen) continue;
    rep[start] = start;
    queue.push_back(start);
    while (!queue.empty()) {
      const TupleIndex t = queue.front();
      queue.pop_front();
      for (const auto& g : action.acting_generators()) {
        const TupleIndex u = action.act(g, t, scratch);
        if (rep[u] == unseen) {
          rep[u] = start;
          queue.push_back(u);
        }
      }
    }
  }
  return label_by_minimum(rep);
}

TwistedPartition orbits_by_union_find(const TupleAction& action) {
  const TupleIndex count = action.tuple_count();
  std::vector<TupleIndex> parent(count);
  std::iota(parent.begin(), parent.end(), TupleIndex{0});
  auto find = [&](TupleIndex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<Element> scratch(action.tuple_length());
  for (const auto& g : action.acting_generators())
    for (TupleIndex t = 0; t < count; ++t) {
      const TupleIndex a = find(t);
      const TupleIndex b = find(action.act(g, t, scratch));
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  for (TupleIndex t = 0; t < count; ++t) parent[t] = find(t);
  return label_by_minimum(parent);
}

}  // namespace ckit::finite
