// Copyright 2026 The quasinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "quasinv/compact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace quasinv {

namespace {

constexpr std::size_t kModuleBasisCap = 16;
constexpr std::size_t kFaithfulnessSweep = 200;

void check_group_window(const PermutationGroup& group, const Window& window) {
  if (group.sites() != window.sites()) {
    throw Error(ErrorCode::SizeMismatch, "group size differs from window sites");
  }
}

LocalOperator inverse_of(const LocalOperator& a, ErrorCode code) {
  return {a.window(), checked_inverse(a.matrix(), code)};
}

}  // namespace

LocalOperator haar_average(const PermutationGroup& group, const LocalOperator& a) {
  check_group_window(group, a.window());
  std::vector<CMatrix> terms;
  terms.reserve(group.size());
  for (const Permutation& g : group.elements()) terms.push_back(act(g, a).matrix());
  return {a.window(), tree_sum(terms) / static_cast<double>(group.size())};
}

std::vector<LocalOperator> fixed_point_basis(const PermutationGroup& group,
                                             const Window& window) {
  check_group_window(group, window);
  std::vector<LocalOperator> basis;
  std::vector<CMatrix> ortho;
  for (const LocalOperator& e : matrix_unit_probes(window)) {
    LocalOperator avg = haar_average(group, e);
    CMatrix r = avg.matrix();
    for (const CMatrix& q : ortho) {
      r -= q.conjugate().cwiseProduct(r).sum() * q;
    }
    const double n = r.norm();
    if (n > 1e-9 * std::max(1.0, avg.matrix().norm())) {
      ortho.push_back(r / n);
      basis.push_back(std::move(avg));
    }
  }
  return basis;
}

int fixed_point_dimension(const PermutationGroup& group, const Window& window) {
  check_group_window(group, window);
  double acc = 0.0;
  for (const Permutation& g : group.elements()) {
    const auto map = permutation_index_map(g, window);
    double fixed = 0.0;
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] == static_cast<Eigen::Index>(i)) fixed += 1.0;
    }
    acc += fixed * fixed;
  }
  return static_cast<int>(std::lround(acc / static_cast<double>(group.size())));
}

UmegakiReport verify_umegaki(const PermutationGroup& group, const Window& window,
                             const std::vector<LocalOperator>& probes, double tolerance,
                             std::uint64_t seed) {
  check_group_window(group, window);
  const LocalOperator one = LocalOperator::identity(window);

  double idem = 0.0;
  double pos = 0.0;
  Witness idem_w;
  Witness pos_w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const LocalOperator e = haar_average(group, probes[p]);
    const double r = operator_norm(haar_average(group, e).matrix() - e.matrix());
    if (r > idem) {
      idem = r;
      idem_w = Witness{std::nullopt, std::nullopt, p};
    }
    const CMatrix sq = haar_average(group, probes[p].adjoint() * probes[p]).matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (sq + sq.adjoint()), Eigen::EigenvaluesOnly);
    const double neg = std::max(0.0, -es.eigenvalues()(0));
    if (neg > pos) {
      pos = neg;
      pos_w = Witness{std::nullopt, std::nullopt, p};
    }
  }

  std::vector<LocalOperator> fix = fixed_point_basis(group, window);
  if (fix.size() > kModuleBasisCap) fix.erase(fix.begin() + kModuleBasisCap, fix.end());
  double mod = 0.0;
  Witness mod_w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const LocalOperator e = haar_average(group, probes[p]);
    for (const LocalOperator& b : fix) {
      for (const LocalOperator& c : fix) {
        const double r =
            operator_norm(haar_average(group, b * probes[p] * c).matrix() - (b * e * c).matrix());
        if (r > mod) {
          mod = r;
          mod_w = Witness{std::nullopt, std::nullopt, p};
        }
      }
    }
  }

  double min_norm = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kFaithfulnessSweep; ++k) {
    CMatrix a = random_matrix(window.dim(), window.dim(), seed * 7919ULL + k);
    a /= operator_norm(a);
    const LocalOperator op{window, a};
    min_norm = std::min(min_norm, operator_norm(haar_average(group, op.adjoint() * op).matrix()));
  }

  UmegakiReport out{
      make_report("idempotence", idem, tolerance, idem_w),
      make_report("unitality", operator_norm(haar_average(group, one).matrix() - one.matrix()),
                  tolerance),
      make_report("positivity", pos, tolerance, pos_w),
      make_report("module_property", mod, tolerance, mod_w),
      make_report("faithfulness", std::max(0.0, tolerance - min_norm), 0.0),
  };
  out.faithfulness.details = {{"min_norm", min_norm}};
  out.module_property.details = {{"fixed_point_probes", static_cast<double>(fix.size())}};
  return out;
}

LocalOperator kappa(const CocycleTable& t) {
  std::vector<CMatrix> terms;
  terms.reserve(t.entries().size());
  for (const LocalOperator& x : t.entries()) {
    const Classification c = classify(x.matrix());
    if (!is_hermitian(x.matrix(), 1e-9) || !c.min_eig || *c.min_eig <= tol::kAbs) {
      throw Error(ErrorCode::NotStrongCocycle, "cocycle entry is not positive definite");
    }
    terms.push_back(x.matrix());
  }
  CMatrix k = tree_sum(terms) / static_cast<double>(terms.size());
  return {t.window(), 0.5 * (k + k.adjoint())};
}

WeightedTraceState invariant_state(const WeightedTraceState& phi,
                                   const PermutationGroup& group) {
  const LocalOperator w{phi.window(), phi.density()};
  return WeightedTraceState(phi.window(), haar_average(group, w).matrix());
}

StructureReport verify_decomposition(const WeightedTraceState& phi,
                                     const WeightedTraceState& phi_g,
                                     const LocalOperator& kappa_op, const CocycleTable& t,
                                     const std::vector<LocalOperator>& probes,
                                     double tolerance) {
  const double tol_eff = tolerance * t.scale();
  const LocalOperator kinv = inverse_of(kappa_op, ErrorCode::SingularKappa);

  double dens = 0.0;
  Witness dens_w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double r = std::abs(phi.evaluate(probes[p]) - phi_g.evaluate(kinv * probes[p]));
    if (r > dens) {
      dens = r;
      dens_w = Witness{std::nullopt, std::nullopt, p};
    }
  }

  double triv = 0.0;
  double comm = 0.0;
  Witness triv_w;
  Witness comm_w;
  for (const Permutation& g : t.group().elements()) {
    const LocalOperator moved = act_inverse(g, kinv);
    const CMatrix k_moved = (kappa_op * moved).matrix();
    const double r = operator_norm(t.at(g).matrix() - k_moved);
    if (r > triv) {
      triv = r;
      triv_w = Witness{g, std::nullopt, std::nullopt};
    }
    const double c = operator_norm(k_moved - (moved * kappa_op).matrix());
    if (c > comm) {
      comm = c;
      comm_w = Witness{g, std::nullopt, std::nullopt};
    }
  }

  const double norm_r = operator_norm(haar_average(t.group(), kinv).matrix() -
                                      identity(t.window().dim()));
  return StructureReport{
      make_report("structure_density", dens, tol_eff, dens_w),
      make_report("structure_trivialization", triv, tol_eff * t.scale(), triv_w),
      make_report("structure_normalization", norm_r, tol_eff),
      make_report("structure_commutation", comm, tol_eff * t.scale(), comm_w),
      kappa_op,
  };
}

StructureReport verify_structure(const WeightedTraceState& phi, const CocycleTable& t,
                                 const std::vector<LocalOperator>& probes, double tolerance) {
  return verify_decomposition(phi, invariant_state(phi, t.group()), kappa(t), t, probes,
                              tolerance);
}

ConverseResult converse_construct(const WeightedTraceState& phi_g,
                                  const LocalOperator& kappa_op,
                                  const PermutationGroup& group, double tolerance) {
  const LocalOperator w{phi_g.window(), phi_g.density()};
  for (const Permutation& g : group.elements()) {
    if (operator_norm(act(g, w).matrix() - w.matrix()) > tolerance) {
      throw Error(ErrorCode::NotInvariantBase, "base state is not invariant under the group");
    }
  }
  const CMatrix kinv = checked_inverse(kappa_op.matrix(), ErrorCode::SingularKappa);
  WeightedTraceState phi(phi_g.window(), phi_g.density() * kinv);
  return ConverseResult{std::move(phi), trivial_cocycle(kappa_op, group)};
}

VerificationReport projective_family_check(const PermutationGroup& small,
                                           const PermutationGroup& large,
                                           const std::vector<LocalOperator>& probes,
                                           double tolerance) {
  if (small.sites() != large.sites()) {
    throw Error(ErrorCode::SizeMismatch, "groups act on different numbers of sites");
  }
  for (const Permutation& g : small.elements()) {
    if (!large.contains(g)) throw Error(ErrorCode::NotNested, "subgroup is not nested");
  }
  double worst = 0.0;
  double nesting = 0.0;
  Witness w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const LocalOperator big = haar_average(large, probes[p]);
    const double r =
        operator_norm(haar_average(large, haar_average(small, probes[p])).matrix() - big.matrix());
    if (r > worst) {
      worst = r;
      w = Witness{std::nullopt, std::nullopt, p};
    }
    nesting = std::max(nesting, operator_norm(haar_average(small, big).matrix() - big.matrix()));
  }
  VerificationReport rep = make_report("projectivity", worst, tolerance, w);
  if (!probes.empty()) {
    const Window& window = probes.front().window();
    rep.details = {{"fixed_dim_small", fixed_point_dimension(small, window)},
                   {"fixed_dim_large", fixed_point_dimension(large, window)},
                   {"range_nesting", nesting}};
  }
  if (nesting > tolerance) rep.pass = false;
  return rep;
}

VerificationReport restriction_consistency(const WeightedTraceState& phi,
                                           const CocycleTable& global,
                                           const std::vector<PermutationGroup>& subgroups,
                                           double tolerance) {
  double worst = 0.0;
  Witness w;
  for (const PermutationGroup& sub : subgroups) {
    for (const Permutation& g : sub.elements()) {
      if (!global.group().contains(g)) {
        throw Error(ErrorCode::NotNested, "subgroup element missing from the global table");
      }
    }
    const CocycleTable local = cocycle_from_state(phi, sub);
    for (const Permutation& g : sub.elements()) {
      const double r = operator_norm(local.at(g).matrix() - global.at(g).matrix());
      if (r > worst) {
        worst = r;
        w = Witness{g, std::nullopt, std::nullopt};
      }
    }
  }
  return make_report("restriction_consistency", worst, tolerance * global.scale(), w);
}

AlternativeDecomposition alternative_decomposition(const WeightedTraceState& phi,
                                                   const CocycleTable& t,
                                                   const std::vector<LocalOperator>& probes,
                                                   double tolerance) {
  const Window& window = phi.window();
  const WeightedTraceState phi_g = invariant_state(phi, t.group());
  const CMatrix& w_g = phi_g.density();
  const Eigen::Index dim = window.dim();

  // A hermitian, traceless fixed point commuting with W_G.
  CMatrix f = w_g - (w_g.trace() / static_cast<double>(dim)) * identity(dim);
  if (operator_norm(f) <= 1e-9) {
    f = CMatrix::Zero(dim, dim);
    for (const LocalOperator& b : fixed_point_basis(t.group(), window)) {
      CMatrix h = 0.5 * (b.matrix() + b.matrix().adjoint());
      h -= (h.trace() / static_cast<double>(dim)) * identity(dim);
      if (operator_norm(h) > 1e-9) {
        f = h;
        break;
      }
    }
    if (operator_norm(f) <= 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "the fixed-point algebra is trivial");
    }
  }
  const CMatrix k = identity(dim) + 0.5 * f / operator_norm(f);
  const double c = phi_g.evaluate(LocalOperator(window, k)).real();

  const CMatrix kappa0 = kappa(t).matrix();
  WeightedTraceState phi_g2(window, w_g * k / c);
  const LocalOperator kappa2{window, kappa0 * k / c};
  StructureReport rep = verify_decomposition(phi, phi_g2, kappa2, t, probes, tolerance);

  double inv = 0.0;
  const LocalOperator dens{window, phi_g2.density()};
  for (const Permutation& g : t.group().elements()) {
    inv = std::max(inv, operator_norm(act(g, dens).matrix() - dens.matrix()));
  }
  const LocalOperator kinv2 = inverse_of(kappa2, ErrorCode::SingularKappa);
  const double norm_r = std::abs(phi_g2.evaluate(kinv2) - 1.0);
  return AlternativeDecomposition{std::move(phi_g2), kappa2, LocalOperator(window, k),
                                  std::move(rep), inv, norm_r};
}

}  // namespace quasinv
