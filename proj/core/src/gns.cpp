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


#include "quasinv/gns.hpp"

#include <algorithm>
#include <cmath>

#include "quasinv/compact.hpp"

namespace quasinv {

namespace {

CVector vec(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

}  // namespace

GnsRepresentation::GnsRepresentation(const WeightedTraceState& phi) : phi_(phi) {
  if (!is_faithful(phi).faithful) {
    throw Error(ErrorCode::NotFaithful, "GNS construction needs a faithful state");
  }
  const Eigen::Index d = phi.window().dim();
  gram_ = kron(phi.density().transpose(), identity(d));
  gram_ = 0.5 * (gram_ + gram_.adjoint());
  gram_inv_ = kron(checked_inverse(phi.density(), ErrorCode::NotFaithful).transpose(), identity(d));
  Eigen::LLT<CMatrix> llt(gram_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotFaithful, "gram matrix is not positive definite");
  }
  chol_lower_ = llt.matrixL();
  cyclic_ = vec(identity(d));
}

CVector GnsRepresentation::vector_of(const LocalOperator& a) const {
  if (!(a.window() == window())) {
    throw Error(ErrorCode::SizeMismatch, "operator and representation windows differ");
  }
  return vec(a.matrix());
}

CMatrix GnsRepresentation::pi(const LocalOperator& a) const {
  if (!(a.window() == window())) {
    throw Error(ErrorCode::SizeMismatch, "operator and representation windows differ");
  }
  return kron(identity(window().dim()), a.matrix());
}

Complex GnsRepresentation::inner(const CVector& u, const CVector& v) const {
  return u.dot(gram_ * v);
}

CMatrix GnsRepresentation::adjoint(const CMatrix& op) const {
  return gram_inv_ * op.adjoint() * gram_;
}

CMatrix GnsRepresentation::orthonormalized(const CMatrix& op) const {
  const CMatrix lh = chol_lower_.adjoint();
  return lh * op * lh.triangularView<Eigen::Upper>().solve(identity(dim()));
}

GnsRepresentation build_gns(const WeightedTraceState& phi) { return GnsRepresentation(phi); }

GnsReport verify_gns(const GnsRepresentation& r, const std::vector<LocalOperator>& probes,
                     double tolerance) {
  const Window& w = r.window();
  double repro = 0.0;
  double hom = 0.0;
  double adj = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const LocalOperator& a = probes[i];
    const CMatrix pa = r.pi(a);
    repro = std::max(repro, std::abs(r.inner(r.cyclic_vector(), pa * r.cyclic_vector()) -
                                     r.state().evaluate(a)));
    adj = std::max(adj, operator_norm(r.pi(a.adjoint()) - r.adjoint(pa)));
    const LocalOperator& b = probes[(i * 7 + 3) % probes.size()];
    hom = std::max(hom, operator_norm(r.pi(a * b) - pa * r.pi(b)));
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(r.gram(), Eigen::EigenvaluesOnly);
  const double gram_min = es.eigenvalues()(0);

  const std::vector<LocalOperator> units = matrix_unit_probes(w);
  CMatrix span(r.dim(), static_cast<Eigen::Index>(units.size()));
  for (std::size_t k = 0; k < units.size(); ++k) {
    span.col(static_cast<Eigen::Index>(k)) = r.pi(units[k]) * r.cyclic_vector();
  }
  Eigen::FullPivLU<CMatrix> lu(span);
  lu.setThreshold(1e-10);
  const double deficit = static_cast<double>(r.dim() - lu.rank());

  GnsReport out{
      make_report("gns_state_reproduction", repro, tolerance),
      make_report("gns_homomorphism", hom, tolerance),
      make_report("gns_adjointness", adj, tolerance),
      make_report("gns_unit",
                  operator_norm(r.pi(LocalOperator::identity(w)) - identity(r.dim())), tolerance),
      make_report("gns_gram_positivity", std::max(0.0, tol::kPos - gram_min), 0.0),
      make_report("gns_cyclicity", deficit, 0.0),
  };
  out.gram_positivity.details = {{"gram_min_eigenvalue", gram_min}};
  return out;
}

const CMatrix& GnsUnitaries::at(const Permutation& g) const {
  const auto idx = group.index_of(g);
  if (!idx) throw Error(ErrorCode::InvalidArgument, "element not in the unitaries' group");
  return matrices[*idx];
}

GnsUnitaries build_unitaries(const GnsRepresentation& r, const CocycleTable& t) {
  if (!(t.window() == r.window())) {
    throw Error(ErrorCode::SizeMismatch, "cocycle and representation windows differ");
  }
  for (const LocalOperator& x : t.entries()) {
    const Classification c = classify(x.matrix());
    if (!is_hermitian(x.matrix(), 1e-9) || !c.min_eig || *c.min_eig <= tol::kAbs) {
      throw Error(ErrorCode::NotStrongCocycle, "cocycle entry is not positive definite");
    }
  }
  std::vector<CMatrix> mats;
  mats.reserve(t.group().size());
  for (const Permutation& g : t.group().elements()) {
    const Permutation ginv = g.inverse();
    if (!t.group().contains(ginv)) {
      throw Error(ErrorCode::GroupNotClosed, "group is not closed under inversion");
    }
    const CMatrix s = matrix_power(t.at(ginv).matrix(), 0.5);
    const CMatrix p = permutation_unitary(g, r.window());
    mats.push_back(kron(s.transpose() * p.conjugate(), p));
  }
  return GnsUnitaries{t.group(), std::move(mats)};
}

UnitaryReport verify_unitaries(const GnsRepresentation& r, const GnsUnitaries& u,
                               double tolerance) {
  const CMatrix one = identity(r.dim());
  double unit = 0.0;
  double adj = 0.0;
  double iso = 0.0;
  double law = 0.0;
  Witness unit_w;
  Witness adj_w;
  Witness iso_w;
  Witness law_w;
  for (const Permutation& g : u.group.elements()) {
    const CMatrix& ug = u.at(g);
    const CMatrix dag = r.adjoint(ug);
    const double ru = operator_norm(dag * ug - one);
    if (ru > unit) {
      unit = ru;
      unit_w = Witness{g, std::nullopt, std::nullopt};
    }
    const double ra = operator_norm(dag - u.at(g.inverse()));
    if (ra > adj) {
      adj = ra;
      adj_w = Witness{g, std::nullopt, std::nullopt};
    }
    const double ri = (ug.adjoint() * r.gram() * ug - r.gram()).cwiseAbs().maxCoeff();
    if (ri > iso) {
      iso = ri;
      iso_w = Witness{g, std::nullopt, std::nullopt};
    }
    for (const Permutation& h : u.group.elements()) {
      const double rl = operator_norm(ug * u.at(h) - u.at(g * h));
      if (rl > law) {
        law = rl;
        law_w = Witness{g, h, std::nullopt};
      }
    }
  }
  return UnitaryReport{
      make_report("unitarity", unit, tolerance, unit_w),
      make_report("group_law", law, tolerance, law_w),
      make_report("adjoint_relation", adj, tolerance, adj_w),
      make_report("isometry", iso, tolerance, iso_w),
  };
}

VerificationReport verify_covariance(const GnsRepresentation& r, const GnsUnitaries& u,
                                     const std::vector<LocalOperator>& probes,
                                     double tolerance) {
  double worst = 0.0;
  Witness w;
  for (const Permutation& g : u.group.elements()) {
    const CMatrix& ug = u.at(g);
    const CMatrix dag = r.adjoint(ug);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const double res =
          operator_norm(dag * r.pi(probes[p]) * ug - r.pi(act_inverse(g, probes[p])));
      if (res > worst) {
        worst = res;
        w = Witness{g, std::nullopt, p};
      }
    }
  }
  return make_report("covariance", worst, tolerance, w);
}

CMatrix lift_conditional_expectation(const GnsRepresentation& r, const GnsUnitaries& u,
                                     const PermutationGroup& subgroup, const CMatrix& op) {
  std::vector<CMatrix> terms;
  terms.reserve(subgroup.size());
  for (const Permutation& g : subgroup.elements()) {
    if (!u.group.contains(g)) {
      throw Error(ErrorCode::InvalidArgument, "subgroup element has no unitary");
    }
    const CMatrix& ug = u.at(g);
    terms.push_back(r.adjoint(ug) * op * ug);
  }
  return tree_sum(terms) / static_cast<double>(subgroup.size());
}

VerificationReport verify_lifted_expectation(const GnsRepresentation& r,
                                             const GnsUnitaries& u,
                                             const PermutationGroup& subgroup,
                                             const std::vector<LocalOperator>& probes,
                                             double tolerance) {
  double worst = 0.0;
  Witness w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double res =
        operator_norm(lift_conditional_expectation(r, u, subgroup, r.pi(probes[p])) -
                      r.pi(haar_average(subgroup, probes[p])));
    if (res > worst) {
      worst = res;
      w = Witness{std::nullopt, std::nullopt, p};
    }
  }
  return make_report("lifted_expectation", worst, tolerance, w);
}

VerificationReport lifted_projectivity(const GnsRepresentation& r, const GnsUnitaries& u,
                                       const PermutationGroup& small,
                                       const PermutationGroup& large,
                                       const std::vector<LocalOperator>& probes,
                                       double tolerance) {
  for (const Permutation& g : small.elements()) {
    if (!large.contains(g)) throw Error(ErrorCode::NotNested, "subgroup is not nested");
  }
  double worst = 0.0;
  Witness w;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const CMatrix pa = r.pi(probes[p]);
    const CMatrix big = lift_conditional_expectation(r, u, large, pa);
    const CMatrix both =
        lift_conditional_expectation(r, u, large, lift_conditional_expectation(r, u, small, pa));
    const double res = operator_norm(both - big);
    if (res > worst) {
      worst = res;
      w = Witness{std::nullopt, std::nullopt, p};
    }
  }
  return make_report("lifted_projectivity", worst, tolerance, w);
}

}  // namespace quasinv
