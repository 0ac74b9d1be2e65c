#include "ckit/runner.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ckit/abelian.hpp"
#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"
#include "ckit/nilpotent.hpp"
#include "ckit/twisted.hpp"

namespace ckit::cli {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kEnumerationCap = 1'000'000;
constexpr std::size_t kMinorsLimit = 7;

std::string hom_label(std::size_t i) { return "phi_" + std::to_string(i + 1); }

std::string r_of(const std::vector<std::string>& names) {
  std::string s = "R(";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + ")";
}

ordered_json divisors_json(const std::vector<Integer>& d) {
  ordered_json out = ordered_json::array();
  for (const auto& x : d) out.push_back(x.get_str());
  return out;
}

std::string divides_note(const Cardinal& a, const Cardinal& b) {
  return a.to_string() + (a.divides(b) ? " | " : " ∤ ") + b.to_string();
}

void record_oracle(Report& r, bool agreed, const std::string& line) {
  r.oracle_details.push_back(std::string(agreed ? "agreed: " : "MISMATCH: ") + line);
  if (!agreed) r.oracle = OracleStatus::mismatch;
  else if (r.oracle == OracleStatus::absent) r.oracle = OracleStatus::agreed;
}

// Brute-force class count of Z^rows / m Z^cols, or a rank check when infinite.
void cokernel_oracle(Report& r, const IntMatrix& m, const Cardinal& value, const std::string& what) {
  if (value.is_infinite()) {
    const bool ok = linalg::rank(m) < m.rows();
    record_oracle(r, ok, what + ": rank " + std::to_string(linalg::rank(m)) + " < " +
                             std::to_string(m.rows()) + " confirms an infinite cokernel");
    return;
  }
  if (value.value() > Integer(static_cast<unsigned long>(kEnumerationCap))) {
    r.oracle_details.push_back("skipped: " + what + " cokernel of order " + value.to_string() +
                               " exceeds the enumeration cap");
    return;
  }
  const auto classes = linalg::enumerate_cokernel(m, kEnumerationCap);
  record_oracle(r, Cardinal(long(classes.size())) == value,
                what + ": enumerated " + std::to_string(classes.size()) + " cokernel classes, engine gives " +
                    value.to_string());
}

void snf_intermediates(Report& r, const IntMatrix& m) {
  const auto snf = linalg::smith_normal_form(m);
  r.intermediates["matrix"] = m.to_string();
  r.intermediates["elementary_divisors"] = divisors_json(snf.divisors);
  r.intermediates["rank"] = snf.divisors.size();
  r.trace.push_back("S = " + snf.s.to_string());
  r.trace.push_back("T = " + snf.t.to_string());
  r.trace.push_back("D = S*M*T = " + snf.d.to_string());
  if (!(snf.s * m * snf.t == snf.d)) throw ConsistencyError("Smith normal form: S*M*T != D");
}

void minors_oracle(Report& r, const IntMatrix& m) {
  if (std::min(m.rows(), m.cols()) > kMinorsLimit) {
    r.oracle_details.push_back("skipped: gcd-of-minors oracle limited to " + std::to_string(kMinorsLimit) +
                               " x " + std::to_string(kMinorsLimit) + " minors");
    return;
  }
  const auto a = linalg::smith_normal_form(m).divisors;
  const auto b = linalg::elementary_divisors_via_minors(m);
  record_oracle(r, a == b, "elementary divisors via gcd of minors " + divisors_json(b).dump());
}

// --- abelian ---------------------------------------------------------------

abelian::AbelianSystem system_of(const std::vector<IntMatrix>& homs) {
  std::vector<abelian::AbelianHom> v;
  for (const auto& m : homs) v.push_back({m});
  return abelian::AbelianSystem(std::move(v));
}

Report run_abelian_pair(const AbelianPairProblem& p, const RunOptions& opt) {
  Report r;
  r.kind = "abelian-pair";
  const IntMatrix diff = p.psi - p.phi;
  r.value = abelian::reid_pair({p.phi}, {p.psi});
  r.intermediates["difference"] = diff.to_string();
  r.intermediates["elementary_divisors"] = divisors_json(linalg::smith_normal_form(diff).divisors);
  r.intermediates["nielsen"] = abelian::kJiangAnnotation;
  r.trace.push_back("R(phi,psi) = #coker(psi - phi) = " + r.value.to_string());
  if (opt.oracle) cokernel_oracle(r, diff, r.value, "coker(psi - phi)");
  return r;
}

void sub_system_intermediates(Report& r, const abelian::AbelianSystem& sys, const abelian::DivisibilityReport& d) {
  const std::size_t k = sys.size();
  ordered_json subs = ordered_json::object();
  // leave_one_out[i] drops hom i; list in lexicographic order of the kept homs
  for (std::size_t drop = k; drop-- > 0;) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < k; ++i)
      if (i != drop) kept.push_back(hom_label(i));
    subs[r_of(kept)] = d.leave_one_out[drop].to_string();
  }
  r.intermediates["sub_systems"] = subs;
  Cardinal with_first(1L);
  for (std::size_t drop = 1; drop < k; ++drop) with_first = with_first * d.leave_one_out[drop];
  r.intermediates["sub_systems_with_phi_1_product"] = with_first.to_string();
  r.intermediates["sub_systems_with_phi_1_divides"] = divides_note(with_first, d.multi);
  r.intermediates["sub_systems_product"] = d.leave_one_out_product.to_string();
  r.intermediates["sub_systems_product_divides"] = divides_note(d.leave_one_out_product, d.multi);
}

Report run_abelian_multi(const AbelianMultiProblem& p, const RunOptions& opt) {
  Report r;
  r.kind = "abelian-multi";
  const auto sys = system_of(p.homs);
  const auto rep = abelian::reid_multi(sys);
  r.value = rep.value;
  r.trace = rep.trace;
  const IntMatrix stacked = abelian::stacked_difference(sys);
  r.intermediates["stacked_difference"] = stacked.to_string();
  r.intermediates["elementary_divisors"] = divisors_json(linalg::smith_normal_form(stacked).divisors);
  ordered_json pair = ordered_json::object();
  for (std::size_t j = 1; j < sys.size(); ++j) pair[r_of({hom_label(0), hom_label(j)})] = rep.pairwise[j - 1].to_string();
  r.intermediates["pairwise"] = pair;
  const auto d = abelian::divisibility_report(sys);
  r.intermediates["pairwise_product"] = d.pairwise_product.to_string();
  if (d.applicable) {
    r.intermediates["pairwise_product_divides"] = divides_note(d.pairwise_product, d.multi);
    r.intermediates["ker_psi_order"] = d.ker_psi->to_string();
  }
  if (sys.size() >= 3) sub_system_intermediates(r, sys, d);
  r.intermediates["nielsen"] = abelian::kJiangAnnotation;

  if (opt.oracle) {
    cokernel_oracle(r, stacked, r.value, "stacked difference");
    if (r.value.is_finite() && r.value.value() <= Integer(static_cast<unsigned long>(kEnumerationCap))) {
      const Cardinal enumerated = abelian::ker_psi_order_enumerated(sys, kEnumerationCap);
      record_oracle(r, enumerated == *rep.ker_psi_order,
                    "|ker Psi| by enumeration " + enumerated.to_string() + ", by lattice index " +
                        rep.ker_psi_order->to_string());
    }
  }
  return r;
}

// --- finite ----------------------------------------------------------------

ordered_json size_histogram(const finite::TwistedPartition& p) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto s : p.class_sizes) ++hist[s];
  ordered_json out = ordered_json::object();
  for (auto [size, count] : hist) out[std::to_string(size)] = count;
  return out;
}

Report run_finite(const FiniteProblem& p, const RunOptions& opt) {
  Report r;
  r.kind = "finite";
  const auto part = finite::twisted_reidemeister(p.homs);
  r.value = Cardinal(long(part.class_count));
  r.intermediates["codomain_order"] = p.codomain->order();
  r.intermediates["domain_order"] = p.domain->order();
  r.intermediates["tuple_count"] = part.class_of.size();
  r.intermediates["class_sizes"] = size_histogram(part);
  r.intermediates["codomain_conjugacy_classes"] = finite::conjugacy_class_count(*p.codomain);

  const auto d = finite::divisibility_report(p.homs);
  ordered_json pair = ordered_json::object();
  for (std::size_t j = 1; j < p.homs.size(); ++j) pair[r_of({p.hom_names[0], p.hom_names[j]})] = d.pairwise[j - 1];
  r.intermediates["pairwise"] = pair;
  r.intermediates["pairwise_product"] = d.pairwise_product;
  r.intermediates["pairwise_product_divides"] =
      divides_note(Cardinal(long(d.pairwise_product)), Cardinal(long(d.multi)));
  r.trace.push_back(r_of(p.hom_names) + " = " + r.value.to_string() + " classes on " +
                    std::to_string(part.class_of.size()) + " tuples");

  if (opt.oracle) {
    const finite::TupleAction action(p.homs);
    const auto expansion = finite::orbits_by_expansion(action);
    const auto uf = finite::orbits_by_union_find(action);
    record_oracle(r, expansion == part, "orbit expansion gives " + std::to_string(expansion.class_count) +
                                            " classes with identical numbering");
    record_oracle(r, uf == part, "union-find gives " + std::to_string(uf.class_count) +
                                     " classes with identical numbering");
  }
  return r;
}

// --- nilpotent -------------------------------------------------------------

void nilpotent_intermediates(Report& r, const nilpotent::NilpotentReport& n) {
  const auto& d = n.data;
  const IntMatrix dbar = d.phi_bar - d.psi_bar;
  const IntMatrix dprime = d.phi_prime - d.psi_prime;
  r.intermediates["rank_A1"] = d.g1.a_rank;
  r.intermediates["rank_B1"] = d.g1.b_rank;
  r.intermediates["rank_A2"] = d.g2.a_rank;
  r.intermediates["rank_B2"] = d.g2.b_rank;
  r.intermediates["phi_bar"] = d.phi_bar.to_string();
  r.intermediates["psi_bar"] = d.psi_bar.to_string();
  r.intermediates["phi_prime"] = d.phi_prime.to_string();
  r.intermediates["psi_prime"] = d.psi_prime.to_string();
  r.intermediates["phi_bar_minus_psi_bar"] = dbar.to_string();
  if (dbar.is_square()) r.intermediates["abs_det_bar"] = Integer(abs(linalg::determinant(dbar))).get_str();
  r.intermediates["phi_prime_minus_psi_prime"] = dprime.to_string();
  if (dprime.is_square()) r.intermediates["abs_det_prime"] = Integer(abs(linalg::determinant(dprime))).get_str();
  r.intermediates["R_bar"] = n.r_bar.to_string();
  r.intermediates["R_prime"] = n.r_prime.to_string();
  if (n.im_delta) r.intermediates["im_delta"] = n.im_delta->to_string();
  r.intermediates["rank_test_R_prime_finite"] = n.r_prime_rank_test;
  r.intermediates["coin_rank_hypothesis"] = n.coin_rank_hypothesis;
  if (n.im_delta) {
    const bool ok = n.value.value() * n.im_delta->value() == n.r_prime.value() * n.r_bar.value();
    if (!ok) throw ConsistencyError("value * |Im delta| != R' * R_bar");
    r.intermediates["value_times_im_delta_equals_R_prime_times_R_bar"] = ok;
  }
  if (n.status == nilpotent::NilpotentStatus::unsupported_reduction)
    r.intermediates["unsupported_reason"] = n.unsupported_reason;
  r.intermediates["nielsen"] = abelian::kJiangAnnotation;
}

Report run_nilpotent(const NilpotentProblem& p, const RunOptions& opt) {
  Report r;
  r.kind = "nilpotent";
  const auto n = nilpotent::reid_nilpotent_multi(p.homs);
  r.value = n.value;
  r.status = n.status == nilpotent::NilpotentStatus::ok ? ResultStatus::ok : ResultStatus::unsupported_reduction;
  r.trace = n.trace;
  nilpotent_intermediates(r, n);
  if (opt.oracle) {
    if (n.status != nilpotent::NilpotentStatus::ok || n.value.is_infinite()) {
      r.oracle_details.push_back("skipped: the class-count recount needs finite R' and R_bar");
    } else {
      const auto [f, g] = p.homs.size() == 2 ? std::pair{p.homs[0], p.homs[1]} : nilpotent::stacked_pair(p.homs);
      const long bound = nilpotent::default_search_bound(f.domain);
      const auto rc = nilpotent::recount_by_search(f, g, bound);
      record_oracle(r, rc.value == n.value,
                    "recount over " + std::to_string(rc.searched) + " domain elements (|exponent| <= " +
                        std::to_string(bound) + "): " + rc.identified_classes.to_string() +
                        " identified classes x R_bar = " + rc.value.to_string());
    }
  }
  return r;
}

template <class F>
void for_each_ordering(std::size_t k, F&& f) {
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  do f(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
}

std::string ordering_text(const std::vector<std::size_t>& sigma) {
  std::string s;
  for (auto i : sigma) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
  return "(" + s + ")";
}

constexpr std::size_t kMaxOrderingK = 6;

}  // namespace

Report run(const ProblemFile& problem, const RunOptions& options) {
  return std::visit(
      [&](const auto& p) -> Report {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SnfProblem>) {
          Report r;
          r.kind = "snf";
          r.value = linalg::cokernel_order(p.matrix);
          snf_intermediates(r, p.matrix);
          r.intermediates["cokernel_order"] = r.value.to_string();
          if (options.oracle) {
            minors_oracle(r, p.matrix);
            cokernel_oracle(r, p.matrix, r.value, "cokernel");
          }
          return r;
        } else if constexpr (std::is_same_v<T, AbelianPairProblem>) {
          return run_abelian_pair(p, options);
        } else if constexpr (std::is_same_v<T, AbelianMultiProblem>) {
          return run_abelian_multi(p, options);
        } else if constexpr (std::is_same_v<T, FiniteProblem>) {
          return run_finite(p, options);
        } else {
          return run_nilpotent(p, options);
        }
      },
      problem.payload);
}

Report run_snf(const ProblemFile& problem, const RunOptions& options) {
  IntMatrix m;
  if (const auto* s = std::get_if<SnfProblem>(&problem.payload)) m = s->matrix;
  else if (const auto* a = std::get_if<AbelianPairProblem>(&problem.payload)) m = a->psi - a->phi;
  else if (const auto* b = std::get_if<AbelianMultiProblem>(&problem.payload)) m = abelian::stacked_difference(system_of(b->homs));
  else throw InputError("snf: kind '" + problem.kind + "' has no integer matrix (use snf, abelian-pair or abelian-multi)");
  Report r;
  r.kind = "snf";
  r.value = linalg::cokernel_order(m);
  snf_intermediates(r, m);
  r.intermediates["cokernel_order"] = r.value.to_string();
  if (options.oracle) minors_oracle(r, m);
  return r;
}

Report run_check(const ProblemFile& problem, const RunOptions& options) {
  Report r = run(problem, options);
  auto& checks = r.intermediates["checks"];
  checks = ordered_json::object();
  auto verdict = [&](const std::string& name, bool holds, bool required) {
    checks[name] = holds;
    if (required && !holds) r.check_failed = true;
  };

  if (const auto* a = std::get_if<AbelianMultiProblem>(&problem.payload)) {
    const auto sys = system_of(a->homs);
    const auto d = abelian::divisibility_report(sys);
    verdict("lower_bound_pairwise_product", d.pairwise_product <= d.multi, true);
    if (d.applicable) {
      verdict("pairwise_product_divides", d.product_divides, true);
      verdict("quotient_equals_ker_psi", d.quotient_matches_ker_psi, true);
    }
    if (sys.size() >= 3) verdict("sub_systems_product_divides", d.leave_one_out_divides, false);
    if (sys.size() <= kMaxOrderingK) {
      bool same = true;
      std::size_t count = 0;
      for_each_ordering(sys.size(), [&](const std::vector<std::size_t>& sigma) {
        ++count;
        const auto v = linalg::cokernel_order(abelian::stacked_difference(abelian::permute_system(sys, sigma)));
        if (!(v == d.multi)) {
          same = false;
          r.trace.push_back("ordering " + ordering_text(sigma) + " gives " + v.to_string());
        }
      });
      verdict("permutation_invariance", same, true);
      checks["orderings_checked"] = count;
    }
  } else if (const auto* f = std::get_if<FiniteProblem>(&problem.payload)) {
    const std::size_t k = f->homs.size();
    const auto d = finite::divisibility_report(f->homs);
    verdict("lower_bound_pairwise_product", d.pairwise_product <= d.multi, true);
    verdict("pairwise_product_divides", d.product_divides, f->codomain->is_abelian());
    if (k <= 4) {
      const auto base = finite::twisted_reidemeister(f->homs);
      bool same = true, transport_ok = true;
      std::size_t count = 0;
      for_each_ordering(k, [&](const std::vector<std::size_t>& sigma) {
        ++count;
        std::vector<finite::FiniteHom> homs;
        for (auto i : sigma) homs.push_back(f->homs[i]);
        if (finite::twisted_reidemeister(homs).class_count != base.class_count) {
          same = false;
          r.trace.push_back("ordering " + ordering_text(sigma) + " changes the class count");
        }
      });
      // explicit bijections for every transposition
      const finite::TupleAction action(f->homs);
      std::vector<finite::Element> tuple(k - 1);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          std::vector<finite::FiniteHom> homs = f->homs;
          std::swap(homs[i], homs[j]);
          const auto swapped = finite::twisted_reidemeister(homs);
          std::vector<std::int64_t> image(base.class_count, -1);
          std::vector<bool> hit(swapped.class_count, false);
          for (finite::TupleIndex t = 0; t < action.tuple_count() && transport_ok; ++t) {
            action.decode(t, tuple);
            const auto moved = finite::transport_tuple(*f->codomain, tuple, i, j);
            const auto target = swapped.class_of[action.encode(moved)];
            auto& slot = image[base.class_of[t]];
            if (slot == -1) {
              if (hit[target]) transport_ok = false;
              slot = target;
              hit[target] = true;
            } else if (slot != std::int64_t(target)) {
              transport_ok = false;
            }
          }
          if (!transport_ok)
            r.trace.push_back("transport map for swapping homs " + std::to_string(i + 1) + " and " +
                              std::to_string(j + 1) + " is not a class bijection");
        }
      verdict("permutation_invariance", same, true);
      verdict("transport_maps_are_class_bijections", transport_ok, true);
      checks["orderings_checked"] = count;
    }
  } else if (const auto* n = std::get_if<NilpotentProblem>(&problem.payload)) {
    const std::size_t k = n->homs.size();
    if (k <= 4 && r.status == ResultStatus::ok) {
      bool same = true;
      std::size_t count = 0;
      for_each_ordering(k, [&](const std::vector<std::size_t>& sigma) {
        ++count;
        std::vector<nilpotent::PcHom> homs;
        for (auto i : sigma) homs.push_back(n->homs[i]);
        const auto rep = nilpotent::reid_nilpotent_multi(homs);
        if (rep.status != nilpotent::NilpotentStatus::ok || !(rep.value == r.value)) {
          same = false;
          r.trace.push_back("ordering " + ordering_text(sigma) + " gives " +
                            (rep.status == nilpotent::NilpotentStatus::ok ? rep.value.to_string() : "unsupported"));
        }
      });
      verdict("permutation_invariance", same, true);
      checks["orderings_checked"] = count;
    }
  } else if (std::holds_alternative<AbelianPairProblem>(problem.payload)) {
    const auto& a = std::get<AbelianPairProblem>(problem.payload);
    verdict("symmetric", abelian::reid_pair({a.phi}, {a.psi}) == abelian::reid_pair({a.psi}, {a.phi}), true);
  }
  return r;
}

}  // namespace ckit::cli
