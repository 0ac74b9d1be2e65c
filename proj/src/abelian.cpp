#include "ckit/abelian.hpp"

#include <algorithm>

#include "ckit/errors.hpp"
#include "ckit/linalg.hpp"

namespace ckit::abelian {

AbelianSystem::AbelianSystem(std::vector<AbelianHom> homs) : homs_(std::move(homs)) {
  if (homs_.size() < 2)
    throw PreconditionError("AbelianSystem: need at least 2 homomorphisms, got " +
                            std::to_string(homs_.size()));
  for (std::size_t i = 1; i < homs_.size(); ++i)
    if (homs_[i].matrix.rows() != homs_[0].matrix.rows() ||
        homs_[i].matrix.cols() != homs_[0].matrix.cols())
      throw ShapeError("AbelianSystem: hom " + std::to_string(i + 1) + " is " +
                       std::to_string(homs_[i].matrix.rows()) + "x" +
                       std::to_string(homs_[i].matrix.cols()) + ", hom 1 is " +
                       std::to_string(homs_[0].matrix.rows()) + "x" +
                       std::to_string(homs_[0].matrix.cols()));
}

namespace {

IntMatrix block_difference(const AbelianSystem& system, std::size_t j) {
  return system[j].matrix - system[0].matrix;
}

}  // namespace

IntMatrix stacked_difference(const AbelianSystem& system) {
  IntMatrix out(0, system.domain_rank());
  for (std::size_t j = 1; j < system.size(); ++j) out = vstack(out, block_difference(system, j));
  return out;
}

Cardinal reid_pair(const AbelianHom& phi, const AbelianHom& psi) {
  return linalg::cokernel_order(psi.matrix - phi.matrix);
}

ReidemeisterReport reid_multi(const AbelianSystem& system) {
  ReidemeisterReport report;
  const IntMatrix stacked = stacked_difference(system);
  report.trace.push_back("stacked difference (phi_j - phi_1 blocks): " + stacked.to_string());
  const auto snf = linalg::smith_normal_form(stacked);
  std::string divisors;
  for (const auto& l : snf.divisors) divisors += (divisors.empty() ? "" : ",") + l.get_str();
  report.trace.push_back("elementary divisors: (" + divisors + ")");
  report.value = linalg::cokernel_order(stacked);
  report.trace.push_back("R(phi_1..phi_" + std::to_string(system.size()) +
                         ") = " + report.value.to_string());
  for (std::size_t j = 1; j < system.size(); ++j) {
    report.pairwise.push_back(reid_pair(system[0], system[j]));
    report.trace.push_back("R(phi_1,phi_" + std::to_string(j + 1) +
                           ") = " + report.pairwise.back().to_string());
  }
  if (report.value.is_finite()) {
    report.ker_psi_order = ker_psi_order(system);
    report.trace.push_back("|ker Psi| = " + report.ker_psi_order->to_string());
  }
  return report;
}

Cardinal ker_psi_order(const AbelianSystem& system) {
  const IntMatrix stacked = stacked_difference(system);
  if (linalg::cokernel_order(stacked).is_infinite())
    throw PreconditionError("ker_psi_order: the multi-map Reidemeister number is infinite");
  std::vector<IntMatrix> blocks;
  for (std::size_t j = 1; j < system.size(); ++j) blocks.push_back(block_difference(system, j));
  const IntMatrix product = block_diagonal(blocks);
  return linalg::lattice_index(stacked.columns(), product.columns());
}

Cardinal ker_psi_order_enumerated(const AbelianSystem& system, std::size_t cap) {
  const IntMatrix stacked = stacked_difference(system);
  if (linalg::cokernel_order(stacked).is_infinite())
    throw PreconditionError("ker_psi_order_enumerated: the multi-map Reidemeister number is infinite");
  const std::size_t n = system.target_rank();
  std::vector<linalg::ColumnHermite> block_lattices;
  for (std::size_t j = 1; j < system.size(); ++j)
    block_lattices.push_back(linalg::column_hermite_form(block_difference(system, j)));

  const auto classes = linalg::enumerate_cokernel(stacked, cap);
  std::size_t in_kernel = 0;
  for (const auto& cls : classes) {
    bool trivial = true;
    for (std::size_t b = 0; b < block_lattices.size() && trivial; ++b) {
      IntVector block(cls.begin() + static_cast<std::ptrdiff_t>(b * n),
                      cls.begin() + static_cast<std::ptrdiff_t>((b + 1) * n));
      trivial = linalg::lattice_coordinates(block_lattices[b], std::move(block)).has_value();
    }
    if (trivial) ++in_kernel;
  }
  return Cardinal(static_cast<long>(in_kernel));
}

AbelianSystem permute_system(const AbelianSystem& system, std::span<const std::size_t> sigma) {
  if (sigma.size() != system.size())
    throw PreconditionError("permute_system: permutation has wrong length");
  std::vector<bool> used(sigma.size(), false);
  std::vector<AbelianHom> homs;
  for (std::size_t i : sigma) {
    if (i >= sigma.size() || used[i]) throw PreconditionError("permute_system: not a permutation");
    used[i] = true;
    homs.push_back(system[i]);
  }
  return AbelianSystem(std::move(homs));
}

DivisibilityReport divisibility_report(const AbelianSystem& system) {
  DivisibilityReport r;
  r.multi = linalg::cokernel_order(stacked_difference(system));
  r.pairwise_product = Cardinal(1L);
  r.pairwise_all_finite = true;
  for (std::size_t j = 1; j < system.size(); ++j) {
    r.pairwise.push_back(reid_pair(system[0], system[j]));
    r.pairwise_all_finite = r.pairwise_all_finite && r.pairwise.back().is_finite();
    r.pairwise_product = r.pairwise_product * r.pairwise.back();
  }
  r.applicable = r.multi.is_finite();
  if (r.applicable) {
    r.product_divides = r.pairwise_product.divides(r.multi);
    if (r.product_divides) r.quotient = Cardinal(Integer(r.multi.value() / r.pairwise_product.value()));
    r.ker_psi = ker_psi_order(system);
    r.quotient_matches_ker_psi = r.quotient && *r.quotient == *r.ker_psi;
  }

  if (system.size() >= 3) {
    r.leave_one_out_product = Cardinal(1L);
    for (std::size_t drop = 0; drop < system.size(); ++drop) {
      std::vector<AbelianHom> rest;
      for (std::size_t i = 0; i < system.size(); ++i)
        if (i != drop) rest.push_back(system[i]);
      r.leave_one_out.push_back(linalg::cokernel_order(stacked_difference(AbelianSystem(rest))));
      r.leave_one_out_product = r.leave_one_out_product * r.leave_one_out.back();
    }
    r.leave_one_out_divides = r.leave_one_out_product.divides(r.multi);
  }
  return r;
}

}  // namespace ckit::abelian
