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

#include "quasinv/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace quasinv {

namespace {

const Permutation& identity_of(const PermutationGroup& group, std::size_t& index) {
  const auto idx = group.index_of(Permutation::identity(group.sites()));
  if (!idx) {
    throw Error(ErrorCode::MissingIdentityEntry, "group has no identity element");
  }
  index = *idx;
  return group[*idx];
}

void require_closed(const PermutationGroup& group) {
  if (!group.is_closed()) {
    throw Error(ErrorCode::GroupNotClosed, "group is not closed under composition");
  }
}

// Product over the support of g of site operators, identity elsewhere.
LocalOperator support_product(const Window& window, const Permutation& g,
                              const std::vector<CMatrix>& site_ops) {
  const std::vector<int> supp = support(g);
  CMatrix acc = CMatrix::Identity(1, 1);
  for (int n = 1; n <= window.sites(); ++n) {
    const bool on = std::find(supp.begin(), supp.end(), n) != supp.end();
    acc = kron(acc, on ? site_ops[static_cast<std::size_t>(n - 1)]
                       : identity(window.local_dim()));
  }
  return {window, std::move(acc)};
}

void check_window(const WeightedTraceState& phi, const CocycleTable& t) {
  if (!(phi.window() == t.window())) {
    throw Error(ErrorCode::SizeMismatch, "state and cocycle live on different windows");
  }
}

}  // namespace

std::optional<double> VerificationReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

VerificationReport make_report(std::string name, double residual, double tolerance,
                               std::optional<Witness> witness) {
  VerificationReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  if (!r.pass) r.witness = std::move(witness);
  return r;
}

CocycleTable::CocycleTable(PermutationGroup group, std::vector<LocalOperator> entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  if (entries_.size() != group_.size()) {
    throw Error(ErrorCode::SizeMismatch, "one entry per group element is required");
  }
  for (const LocalOperator& x : entries_) {
    if (!(x.window() == entries_.front().window())) {
      throw Error(ErrorCode::SizeMismatch, "cocycle entries live on different windows");
    }
  }
  if (entries_.front().window().sites() != group_.sites()) {
    throw Error(ErrorCode::SizeMismatch, "group size differs from window sites");
  }
}

const LocalOperator& CocycleTable::at(const Permutation& g) const {
  const auto idx = group_.index_of(g);
  if (!idx) throw Error(ErrorCode::InvalidArgument, "element not in the cocycle's group");
  return entries_[*idx];
}

void CocycleTable::set(const Permutation& g, LocalOperator x) {
  const auto idx = group_.index_of(g);
  if (!idx) throw Error(ErrorCode::InvalidArgument, "element not in the cocycle's group");
  if (!(x.window() == window())) {
    throw Error(ErrorCode::SizeMismatch, "entry lives on a different window");
  }
  entries_[*idx] = std::move(x);
}

double CocycleTable::scale() const {
  double s = 1.0;
  for (const LocalOperator& x : entries_) s = std::max(s, operator_norm(x.matrix()));
  return s;
}

VerificationReport verify_normalization(const CocycleTable& t, double tolerance) {
  std::size_t e = 0;
  identity_of(t.group(), e);
  const double r =
      operator_norm(t.entries()[e].matrix() - identity(t.window().dim()));
  return make_report("normalization", r, tolerance * t.scale());
}

VerificationReport verify_cocycle_law(const CocycleTable& t, double tolerance) {
  require_closed(t.group());
  const PermutationGroup& group = t.group();
  double worst = 0.0;
  Witness w;
  for (const Permutation& g2 : group.elements()) {
    for (const Permutation& g1 : group.elements()) {
      const LocalOperator rhs = t.at(g1) * act_inverse(g1, t.at(g2));
      const double r = operator_norm(t.at(g2 * g1).matrix() - rhs.matrix());
      if (r > worst) {
        worst = r;
        w = Witness{g2, g1, std::nullopt};
      }
    }
  }
  return make_report("cocycle_law", worst, tolerance * t.scale() * t.scale(), w);
}

VerificationReport verify_inverse_relation(const CocycleTable& t, double tolerance) {
  double worst = 0.0;
  Witness w;
  for (const Permutation& g : t.group().elements()) {
    const Permutation ginv = g.inverse();
    if (!t.group().contains(ginv)) {
      throw Error(ErrorCode::GroupNotClosed, "group is not closed under inversion");
    }
    if (!classify(t.at(g).matrix()).invertible) {
      throw Error(ErrorCode::SingularEntry, "cocycle entry is not invertible");
    }
    const LocalOperator prod = t.at(g) * act_inverse(g, t.at(ginv));
    const double r = operator_norm(prod.matrix() - identity(t.window().dim()));
    if (r > worst) {
      worst = r;
      w = Witness{g, std::nullopt, std::nullopt};
    }
  }
  return make_report("inverse_relation", worst, tolerance * t.scale() * t.scale(), w);
}

VerificationReport verify_quasi_invariance(const WeightedTraceState& phi,
                                           const CocycleTable& t,
                                           const std::vector<LocalOperator>& probes,
                                           double tolerance) {
  check_window(phi, t);
  const double tol_eff = tolerance * t.scale();
  double worst = 0.0;
  double norm_worst = 0.0;
  double min_positive = std::numeric_limits<double>::infinity();
  Witness w;
  for (const Permutation& g : t.group().elements()) {
    const LocalOperator& x = t.at(g);
    norm_worst = std::max(norm_worst, std::abs(phi.evaluate(x) - 1.0));
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const LocalOperator& a = probes[p];
      const double r = std::abs(phi.evaluate(act(g, a)) - phi.evaluate(x * a));
      if (r > worst) {
        worst = r;
        w = Witness{g, std::nullopt, p};
      }
      const LocalOperator pos = a.adjoint() * a;
      min_positive = std::min(min_positive, phi.evaluate(x * pos).real());
    }
  }
  VerificationReport rep = make_report("quasi_invariance", worst, tol_eff, w);
  rep.details = {{"normalization", norm_worst}, {"min_positive_value", min_positive}};
  if (norm_worst > tol_eff || min_positive < -tol_eff) {
    rep.pass = false;
    if (!rep.witness) rep.witness = w;
  }
  return rep;
}

StrongReport verify_strong(const CocycleTable& t, const WeightedTraceState& phi,
                           const std::vector<LocalOperator>& probes, double tolerance) {
  check_window(phi, t);
  const double tol_eff = tolerance * t.scale();
  const auto& elems = t.group().elements();

  double herm = 0.0;
  Witness herm_w;
  double s1 = std::numeric_limits<double>::infinity();
  double s2 = -std::numeric_limits<double>::infinity();
  Witness pos_w;
  double centr = 0.0;
  Witness centr_w;
  for (const Permutation& g : elems) {
    const CMatrix& x = t.at(g).matrix();
    const double r = operator_norm(x - x.adjoint());
    if (r > herm) {
      herm = r;
      herm_w = Witness{g, std::nullopt, std::nullopt};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (x + x.adjoint()),
                                              Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    if (ev(0) < s1) {
      s1 = ev(0);
      pos_w = Witness{g, std::nullopt, std::nullopt};
    }
    s2 = std::max(s2, ev(ev.size() - 1));
    const double c = centralizer_residual(phi, t.at(g), probes);
    if (c > centr) {
      centr = c;
      centr_w = Witness{g, std::nullopt, std::nullopt};
    }
  }

  double comm = 0.0;
  Witness comm_w;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const double r = operator_norm(
          commutator(t.entries()[i].matrix(), t.entries()[j].matrix()));
      if (r > comm) {
        comm = r;
        comm_w = Witness{elems[i], elems[j], std::nullopt};
      }
    }
  }

  StrongReport out{
      make_report("hermiticity", herm, tol_eff, herm_w),
      make_report("positivity", std::max(0.0, tol::kPos - s1), 0.0, pos_w),
      make_report("commutativity", comm, tol_eff * t.scale(), comm_w),
      make_report("centralizer", centr, tol_eff, centr_w),
      s1,
      s2,
  };
  out.positivity.details = {{"spectrum_min", s1}, {"spectrum_max", s2}};
  return out;
}

VerificationReport verify_centralizer_transport(const WeightedTraceState& phi,
                                                const CocycleTable& t,
                                                const LocalOperator& x,
                                                const std::vector<LocalOperator>& probes,
                                                double tolerance) {
  check_window(phi, t);
  const double tol_eff = tolerance * t.scale();
  if (centralizer_residual(phi, x, probes) > tol_eff) {
    throw Error(ErrorCode::NotInCentralizer, "operator is not in the centralizer of the state");
  }
  double worst = 0.0;
  Witness w;
  for (const Permutation& g : t.group().elements()) {
    const LocalOperator& xg = t.at(g);
    const LocalOperator xg_inv{xg.window(), checked_inverse(xg.matrix(), ErrorCode::SingularEntry)};
    const LocalOperator gx = act(g, x);
    const LocalOperator moved = act(g, xg * x * xg_inv);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const LocalOperator& a = probes[p];
      const double r = std::abs(phi.evaluate(gx * a) - phi.evaluate(a * moved));
      if (r > worst) {
        worst = r;
        w = Witness{g, std::nullopt, p};
      }
    }
  }
  return make_report("centralizer_transport", worst, tol_eff * t.scale(), w);
}

CocycleTable trivial_cocycle(const LocalOperator& kappa, const PermutationGroup& group) {
  const LocalOperator kinv{kappa.window(),
                           checked_inverse(kappa.matrix(), ErrorCode::SingularKappa)};
  std::vector<LocalOperator> entries;
  entries.reserve(group.size());
  for (const Permutation& g : group.elements()) {
    entries.push_back(kappa * act_inverse(g, kinv));
  }
  return CocycleTable(group, std::move(entries));
}

CocycleTable product_state_cocycle(const ProductState& phi, const PermutationGroup& group) {
  const Window& window = phi.window();
  std::vector<CMatrix> w;
  std::vector<CMatrix> w_inv;
  for (const DensityMatrix& wn : phi.weights()) {
    w.push_back(wn.matrix());
    w_inv.push_back(checked_inverse(wn.matrix(), ErrorCode::SingularWeight));
  }
  std::vector<LocalOperator> entries;
  entries.reserve(group.size());
  for (const Permutation& g : group.elements()) {
    entries.push_back(support_product(window, g, w_inv) *
                      act_inverse(g, support_product(window, g, w)));
  }
  return CocycleTable(group, std::move(entries));
}

CocycleTable reference_cocycle(const ProductState& phi, const DensityMatrix& w_inf,
                               const PermutationGroup& group) {
  const Window& window = phi.window();
  if (w_inf.dim() != window.local_dim()) {
    throw Error(ErrorCode::SizeMismatch, "reference weight has the wrong dimension");
  }
  const CMatrix w_inf_inv = checked_inverse(w_inf.matrix(), ErrorCode::SingularWeight);
  std::vector<CMatrix> ratio;
  std::vector<CMatrix> ratio_inv;
  for (const DensityMatrix& wn : phi.weights()) {
    const CMatrix r = w_inf_inv * wn.matrix();
    ratio.push_back(r);
    ratio_inv.push_back(checked_inverse(r, ErrorCode::SingularWeight));
  }
  std::vector<LocalOperator> entries;
  entries.reserve(group.size());
  for (const Permutation& g : group.elements()) {
    entries.push_back(support_product(window, g, ratio_inv) *
                      act_inverse(g, support_product(window, g, ratio)));
  }
  return CocycleTable(group, std::move(entries));
}

CocycleTable cocycle_from_state(const WeightedTraceState& phi,
                                const PermutationGroup& group) {
  const LocalOperator w{phi.window(), phi.density()};
  const LocalOperator w_inv{phi.window(), checked_inverse(phi.density(), ErrorCode::NotFaithful)};
  std::vector<LocalOperator> entries;
  entries.reserve(group.size());
  for (const Permutation& g : group.elements()) {
    entries.push_back(w_inv * act_inverse(g, w));
  }
  return CocycleTable(group, std::move(entries));
}

CMatrix solve_sw(const DensityMatrix& w, const CMatrix& z) {
  if (z.rows() != w.dim() || z.cols() != w.dim()) {
    throw Error(ErrorCode::SizeMismatch, "z must match the density dimension");
  }
  if (!is_hermitian(z)) throw Error(ErrorCode::NotHermitianZ, "z is not hermitian");
  return checked_inverse(w.matrix(), ErrorCode::SingularWeight) * (0.5 * (z + z.adjoint()));
}

SwCheck check_sw(const DensityMatrix& w, const CMatrix& x, double tolerance) {
  if (x.rows() != w.dim() || x.cols() != w.dim()) {
    throw Error(ErrorCode::SizeMismatch, "x must match the density dimension");
  }
  SwCheck out;
  out.z = w.matrix() * x;
  out.residual = operator_norm(out.z - x.adjoint() * w.matrix());
  out.in_set = out.residual <= tolerance * std::max(1.0, operator_norm(out.z));
  out.z_hermitian = is_hermitian(out.z, tolerance);
  out.x_hermitian = is_hermitian(x, tolerance);
  return out;
}

CocycleTable propagate_single_generator(const LocalOperator& x0, const Permutation& g0,
                                        int n_max) {
  if (x0.window().sites() != g0.size()) {
    throw Error(ErrorCode::SizeMismatch, "generator size differs from window sites");
  }
  const int m = g0.order();
  if (n_max < 0 || n_max > m) {
    throw Error(ErrorCode::OrderExceeded,
                "n_max " + std::to_string(n_max) + " exceeds order " + std::to_string(m));
  }
  std::vector<Permutation> elems{Permutation::identity(g0.size())};
  std::vector<LocalOperator> entries{LocalOperator::identity(x0.window())};
  LocalOperator acc = x0;
  Permutation power = g0;  // g0^n
  Permutation back = Permutation::identity(g0.size());  // g0^(n-1)
  for (int n = 1; n <= std::min(n_max, m - 1); ++n) {
    if (n > 1) {
      back = back * g0;
      acc = acc * act_inverse(back, x0);
    }
    elems.push_back(power);
    entries.push_back(acc);
    power = power * g0;
  }
  return CocycleTable(PermutationGroup(std::move(elems)), std::move(entries));
}

double cyclic_closure_residual(const LocalOperator& x0, const Permutation& g0) {
  const int m = g0.order();
  LocalOperator acc = x0;
  Permutation back = Permutation::identity(g0.size());
  for (int n = 1; n < m; ++n) {
    back = back * g0;
    acc = acc * act_inverse(back, x0);
  }
  return operator_norm(acc.matrix() - identity(x0.window().dim()));
}

std::vector<LocalTrivialityReport> locally_trivial_check(const CocycleTable& t,
                                                         const std::vector<int>& window_sizes,
                                                         double tolerance) {
  std::vector<LocalTrivialityReport> out;
  for (int n : window_sizes) {
    if (n < 1 || n > t.window().sites()) {
      throw Error(ErrorCode::SiteOutOfRange, "window size " + std::to_string(n));
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < t.group().size(); ++i) {
      const std::vector<int> s = support(t.group()[i]);
      if (s.empty() || s.back() <= n) members.push_back(i);
    }
    std::vector<CMatrix> terms;
    for (std::size_t i : members) terms.push_back(t.entries()[i].matrix());
    const CMatrix kappa_m = tree_sum(terms) / static_cast<double>(terms.size());
    const LocalOperator kappa{t.window(), kappa_m};
    const LocalOperator kinv{t.window(), checked_inverse(kappa_m, ErrorCode::SingularKappa)};
    double worst = 0.0;
    Witness w;
    for (std::size_t i : members) {
      const Permutation& g = t.group()[i];
      const double r =
          operator_norm(t.entries()[i].matrix() - (kappa * act_inverse(g, kinv)).matrix());
      if (r > worst) {
        worst = r;
        w = Witness{g, std::nullopt, std::nullopt};
      }
    }
    out.push_back(LocalTrivialityReport{
        n, kappa,
        make_report("local_triviality_" + std::to_string(n), worst,
                    tolerance * t.scale() * t.scale(), w)});
  }
  return out;
}

VerificationReport power_relation_check(const CocycleTable& t, const std::vector<double>& s,
                                        double tolerance) {
  for (const LocalOperator& x : t.entries()) {
    const Classification c = classify(x.matrix());
    if (!c.hermitian || !c.min_eig || *c.min_eig <= tol::kAbs) {
      throw Error(ErrorCode::NotPositiveEntry, "cocycle entry is not positive definite");
    }
  }
  double worst = 0.0;
  Witness w;
  for (const Permutation& g : t.group().elements()) {
    const Permutation ginv = g.inverse();
    if (!t.group().contains(ginv)) {
      throw Error(ErrorCode::GroupNotClosed, "group is not closed under inversion");
    }
    for (double power : s) {
      const CMatrix lhs = matrix_power(t.at(g).matrix(), -power);
      const LocalOperator rhs =
          act_inverse(g, LocalOperator{t.window(), matrix_power(t.at(ginv).matrix(), power)});
      const double r = operator_norm(lhs - rhs.matrix());
      if (r > worst) {
        worst = r;
        w = Witness{g, std::nullopt, std::nullopt};
      }
    }
  }
  double max_s = 0.0;
  for (double power : s) max_s = std::max(max_s, std::abs(power));
  return make_report("power_relation", worst,
                     tolerance * std::pow(t.scale(), std::max(1.0, max_s)), w);
}

}  // namespace quasinv
