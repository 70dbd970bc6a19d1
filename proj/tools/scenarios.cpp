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


#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "quasinv/cocycle.hpp"
#include "quasinv/compact.hpp"
#include "quasinv/gns.hpp"
#include "quasinv/lattice.hpp"
#include "quasinv/limits.hpp"
#include "quasinv/qmc.hpp"
#include "quasinv/states.hpp"

namespace quasinv::tools {

namespace {

constexpr double kDefect = 1e-3;

class Checks {
 public:
  void add(const VerificationReport& r, const std::string& anchor) {
    Json c;
    c["name"] = r.name;
    c["paper_anchor"] = anchor;
    c["residual"] = r.residual;
    c["tolerance"] = r.tolerance;
    c["pass"] = r.pass;
    if (r.witness) c["witness"] = witness_to_json(*r.witness);
    if (!r.details.empty()) {
      Json d = Json::object();
      for (const auto& [k, v] : r.details) d[k] = v;
      c["details"] = std::move(d);
    }
    list_.push_back(std::move(c));
  }

  void add(const std::string& name, double residual, double tolerance,
           const std::string& anchor) {
    add(make_report(name, residual, tolerance), anchor);
  }

  Json take() { return std::move(list_); }

 private:
  Json list_ = Json::array();
};

int default_degree(const ScenarioConfig& c) {
  if (c.group > 0) return c.group;
  const int sites = c.scenario == "markov" ? c.n_sites - 1 : c.n_sites;
  return std::clamp(sites, 1, 6);
}

Window config_window(const ScenarioConfig& c) { return Window(c.d, c.n_sites); }

std::vector<DensityMatrix> random_weights(const ScenarioConfig& c, bool diagonal) {
  std::vector<DensityMatrix> ws;
  for (int n = 1; n <= c.n_sites; ++n) {
    const std::uint64_t s = c.seed * 1009ULL + static_cast<std::uint64_t>(n);
    if (diagonal) {
      Rng rng(s);
      CMatrix w = CMatrix::Zero(c.d, c.d);
      double total = 0.0;
      for (int i = 0; i < c.d; ++i) {
        w(i, i) = rng.uniform() + 0.1;
        total += w(i, i).real();
      }
      w *= (1.0 - c.d * c.floor) / total;
      w += c.floor * identity(c.d);
      ws.emplace_back(w, c.floor);
    } else {
      ws.push_back(random_density(c.d, c.floor, s));
    }
  }
  return ws;
}

// Perturbs x_g for the first non-identity element.
CocycleTable plant(const CocycleTable& t) {
  CocycleTable out = t;
  for (const Permutation& g : t.group().elements()) {
    if (g.is_identity()) continue;
    const LocalOperator& x = t.at(g);
    CMatrix bump = CMatrix::Zero(x.matrix().rows(), x.matrix().cols());
    bump(0, 0) = kDefect;
    out.set(g, LocalOperator(x.window(), x.matrix() + bump));
    break;
  }
  return out;
}

void cocycle_axioms(Checks& checks, const CocycleTable& t, double tol) {
  checks.add(verify_normalization(t, tol), "x_e = 1");
  checks.add(verify_cocycle_law(t, tol), "x_{g2 g1} = x_{g1} g1^{-1}(x_{g2})");
  checks.add(verify_inverse_relation(t, tol), "x_g^{-1} = g^{-1}(x_{g^{-1}})");
}

void strong_suite(Checks& checks, const CocycleTable& t, const WeightedTraceState& phi,
                  const std::vector<LocalOperator>& probes, double tol) {
  const StrongReport s = verify_strong(t, phi, probes, tol);
  checks.add(s.hermiticity, "x_g = x_g*");
  checks.add(s.positivity, "Spec(x_g) in [S1, S2], S1 > 0");
  checks.add(s.commutativity, "[x_g, x_h] = 0");
  checks.add(s.centralizer, "x_g in the centralizer of phi");
}

Json product_scenario(const ScenarioConfig& c, Checks& checks) {
  const ProductState phi(random_weights(c, false));
  const PermutationGroup group = PermutationGroup::symmetric(default_degree(c), c.n_sites);
  CocycleTable t = product_state_cocycle(phi, group);
  if (c.plant_defect) t = plant(t);
  const std::vector<LocalOperator> probes = default_probes(phi.window(), c.seed);
  cocycle_axioms(checks, t, c.tol);
  checks.add(verify_quasi_invariance(phi, t, probes, c.tol), "phi(g(a)) = phi(x_g a)");
  checks.add(restriction_consistency(
                 phi, t, {PermutationGroup::symmetric(std::max(1, default_degree(c) - 1), c.n_sites)},
                 c.tol),
             "x_g = W^{-1} g^{-1}(W) on every subgroup");
  return Json();
}

Json markov_scenario(const ScenarioConfig& c, Checks& checks) {
  const int length = c.n_sites - 1;
  const DensityMatrix w_inf(identity(c.d) / static_cast<double>(c.d), 1.0 / c.d);
  const MarkovState m(w_inf, default_diagonal_chain(length, c.seed));
  const Window full = m.window();
  const Window inner(c.d, length);

  double norm_r = 0.0;
  for (const CMatrix& k : m.chain()) norm_r = std::max(norm_r, cda_normalize_check(k, w_inf));
  checks.add("cda_normalization", norm_r, 1e-12, "Tr_2[K* K (1 (x) W_inf)] = 1");

  double ext = 0.0;
  const CMatrix next = diagonal_cda(0.1);
  CMatrix p = CMatrix::Zero(c.d, c.d);
  p(0, 0) = 1.0;
  ext = window_extension_residual(m, next, embed(inner, 1, p));
  for (const LocalOperator& a : random_hermitian_probes(inner, 20, c.seed)) {
    ext = std::max(ext, window_extension_residual(m, next, a));
  }
  checks.add("window_extension", ext, c.tol, "phi(a) independent of the chain length");

  const PermutationGroup group = PermutationGroup::symmetric(default_degree(c), c.n_sites);
  const std::vector<LocalOperator> probes = default_probes(full, c.seed);
  double sandwich = 0.0;
  double cross = 0.0;
  double trunc = 0.0;
  for (const Permutation& g : group.elements()) {
    sandwich = std::max(sandwich, sandwich_residual(m, g, probes));
    const LocalOperator y = y_cocycle(m, g);
    cross = std::max(cross, operator_norm(x_cocycle_commuting(m, g).matrix() -
                                          y.matrix() * y.matrix().adjoint()));
    trunc = std::max(trunc, y_truncation_residual(m, g));
  }
  checks.add("sandwich_identity", sandwich, c.tol, "phi(g(a)) = phi(y* a y)");
  checks.add("x_equals_y_ystar", cross, c.tol, "x_g = |y*|^2");
  checks.add("y_truncation", trunc, c.tol, "y independent of N >= max supp g");

  CocycleTable t = markov_cocycle_table(m, group);
  if (c.plant_defect) t = plant(t);
  const WeightedTraceState phi = m.state();
  cocycle_axioms(checks, t, c.tol);
  checks.add(verify_quasi_invariance(phi, t, probes, c.tol), "phi(g(a)) = phi(x_g a)");
  strong_suite(checks, t, phi, probes, c.tol);
  return chain_to_json(m);
}

Json trivial_scenario(const ScenarioConfig& c, Checks& checks) {
  const Window w = config_window(c);
  const DensityMatrix rho = random_density(static_cast<int>(w.dim()), c.floor / w.dim(), c.seed);
  const LocalOperator k{w, rho.matrix() * static_cast<double>(w.dim())};
  const PermutationGroup group = PermutationGroup::symmetric(default_degree(c), c.n_sites);
  CocycleTable t = trivial_cocycle(k, group);
  if (c.plant_defect) t = plant(t);
  cocycle_axioms(checks, t, c.tol);
  std::vector<int> sizes;
  for (int n = 1; n <= c.n_sites; ++n) sizes.push_back(n);
  for (const LocalTrivialityReport& r : locally_trivial_check(t, sizes, c.tol)) {
    checks.add(r.report, "x_g = kappa_N g^{-1}(kappa_N^{-1}) on [1, N]");
  }
  const Permutation shift = Permutation::shift(c.n_sites);
  if (group.contains(shift)) {
    checks.add("cyclic_closure", cyclic_closure_residual(t.at(shift), shift),
               c.tol * t.scale() * t.scale(), "x_{g^m} = 1 for m = order(g)");
  }
  return Json();
}

Json sw_scenario(const ScenarioConfig& c, Checks& checks) {
  constexpr int kPairs = 100;
  double worst = 0.0;
  double violations = 0.0;
  for (int k = 0; k < kPairs; ++k) {
    const std::uint64_t s = c.seed * 100003ULL + static_cast<std::uint64_t>(k);
    const DensityMatrix w = random_density(c.d, c.floor, s);
    CMatrix z;
    if (k % 2 == 0) {
      // Commuting z: a real function of W.
      const Spectrum sp = spectral_decompose(w.hermitian());
      RVector f = sp.values;
      Rng rng(s + 17);
      for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = rng.normal();
      z = sp.vectors * f.asDiagonal() * sp.vectors.adjoint();
    } else {
      z = random_hermitian(c.d, s + 31);
    }
    CMatrix x = solve_sw(w, z);
    if (c.plant_defect && k == kPairs - 1) x(0, 0) += kDefect;
    const SwCheck chk = check_sw(w, x, 1e-10);
    worst = std::max(worst, chk.residual);
    const bool commutes =
        operator_norm(commutator(z, w.matrix())) <= 1e-10 * std::max(1.0, operator_norm(z));
    if (commutes != chk.x_hermitian) violations += 1.0;
  }
  checks.add("sw_membership", worst, 1e-10, "W x = x* W for x = W^{-1} z");
  checks.add("sw_hermitian_equivalence", violations, 0.0, "x = x* iff [z, W] = 0");
  return Json();
}

Json convergence_scenario(const ScenarioConfig& c, Checks& checks) {
  const int length = std::max(12, c.n_sites);
  const WindowProductSequence seq = c.plant_defect ? harmonic_preset(length) : summable_preset(length);

  double excess = 0.0;
  double tele_excess = 0.0;
  for (int n = 2; n <= length; ++n) {
    for (int m = 1; m < n; ++m) {
      const CauchyDiagnostic d = cauchy_diagnostic(seq, m, n);
      excess = std::max(excess, d.diff - d.bound);
      tele_excess = std::max(tele_excess, d.bound - d.telescoped_bound);
    }
  }
  checks.add("cauchy_bound", std::max(0.0, excess), 1e-12,
             "||x_N - x_M|| <= ||prod F|| ||prod F - 1||");
  checks.add("telescoped_bound", std::max(0.0, tele_excess), 1e-12,
             "||prod F - 1|| <= sup ||prod F|| sum ||F - 1||");

  double worst_decay = 0.0;
  for (int m = 3; m + 2 <= length; ++m) {
    const double a = cauchy_diagnostic(seq, m, m + 1).diff;
    const double b = cauchy_diagnostic(seq, m + 1, m + 2).diff;
    worst_decay = std::max(worst_decay, b > 0.0 ? 3.0 * b / a : 0.0);
  }
  checks.add("geometric_decay", std::max(0.0, worst_decay - 1.0), 0.0,
             "diff(M, M+1) shrinks by a factor >= 3");

  double cross = 0.0;
  double mult = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      const CauchyDiagnostic fast = cauchy_diagnostic(seq, m, n);
      const CauchyDiagnostic slow = cauchy_diagnostic_explicit(seq, m, n);
      cross = std::max(cross, std::abs(fast.diff - slow.diff));
      mult = std::max(mult, multiplicativity_residual(seq, m, n));
    }
  }
  checks.add("explicit_cross_check", cross, 1e-12, "cross-norm shortcut = explicit norm");
  checks.add("multiplicativity", mult, 1e-12, "x_[1,N] = x_[1,M] x_[M+1,N]");

  double pairing = 0.0;
  const Window one(2, 1);
  for (const LocalOperator& a : random_hermitian_probes(one, 10, c.seed)) {
    for (int n = 1; n <= 4; ++n) pairing = std::max(pairing, pairing_check(seq, a, n));
  }
  checks.add("pairing", pairing, 1e-10, "phi(a) = psi(x_[1,N] a)");

  double tele = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CMatrix> fs;
    for (int h = 0; h < 4; ++h) {
      fs.push_back(identity(3) + 0.5 * random_matrix(3, 3, c.seed * 31ULL + trial * 4ULL + h));
    }
    tele = std::max(tele, telescoping_check(fs));
  }
  checks.add("telescoping_identity", tele, 1e-12,
             "prod a_h - 1 = sum_h (prod_{j<h} a_j)(a_h - 1)");

  const ConvergenceSeries series = convergence_series(seq);
  checks.add("summable_trend", series.non_convergent ? 1.0 : 0.0, 0.0,
             "sum ||W_inf^{-1} W_k - 1|| < infinity");
  return series_to_json(series);
}

Json structure_scenario(const ScenarioConfig& c, Checks& checks) {
  const ProductState phi(random_weights(c, true));
  const int degree = default_degree(c);
  const PermutationGroup group = PermutationGroup::symmetric(degree, c.n_sites);
  CocycleTable t = product_state_cocycle(phi, group);
  if (c.plant_defect) t = plant(t);
  const Window& w = phi.window();
  const std::vector<LocalOperator> probes = default_probes(w, c.seed);

  const StructureReport s = verify_structure(phi, t, probes, c.tol);
  checks.add(s.density, "phi(a) = phi_G(kappa^{-1} a)");
  checks.add(s.trivialization, "x_g = kappa g^{-1}(kappa^{-1})");
  checks.add(s.normalization, "E_G(kappa^{-1}) = 1");
  checks.add(s.commutation, "kappa g^{-1}(kappa^{-1}) = g^{-1}(kappa^{-1}) kappa");

  // A planted defect can leave W_G kappa^{-1} without unit trace; that is
  // reported as a failed round trip rather than aborting the run.
  double round = 0.0;
  try {
    const ConverseResult back = converse_construct(invariant_state(phi, group), s.kappa, group);
    for (const LocalOperator& a : probes) {
      round = std::max(round, std::abs(back.phi.evaluate(a) - phi.evaluate(a)));
    }
  } catch (const Error&) {
    round = 1.0;
  }
  checks.add("converse_round_trip", round, 1e-10, "phi_G(kappa^{-1} .) reproduces phi");

  const UmegakiReport u = verify_umegaki(group, w, probes, 1e-10, c.seed);
  checks.add(u.idempotence, "E_G^2 = E_G");
  checks.add(u.unitality, "E_G(1) = 1");
  checks.add(u.positivity, "E_G(a* a) >= 0");
  checks.add(u.module_property, "E_G(b a c) = b E_G(a) c on Fix(G)");
  checks.add(u.faithfulness, "E_G(a* a) = 0 implies a = 0");
  if (degree > 1) {
    const PermutationGroup small = PermutationGroup::symmetric(degree - 1, c.n_sites);
    checks.add(projective_family_check(small, group, probes, 1e-10),
               "E_{G_{N+1}} E_{G_N} = E_{G_{N+1}}");
  }

  if (w.dim() <= 8) {
    const GnsRepresentation r(phi);
    const GnsUnitaries us = build_unitaries(r, t);
    const UnitaryReport ur = verify_unitaries(r, us, c.tol);
    checks.add(ur.unitarity, "U_g* U_g = 1");
    checks.add(ur.group_law, "U_g U_h = U_{gh}");
    checks.add(ur.adjoint, "U_g* = U_{g^{-1}}");
    checks.add(verify_covariance(r, us, probes, c.tol), "U_g* pi(a) U_g = pi(g^{-1}(a))");
    checks.add(verify_lifted_expectation(r, us, group, probes, c.tol),
               "average of U_g* pi(a) U_g = pi(E_G(a))");
  }
  Json data;
  data["kappa"] = matrix_to_json(s.kappa.matrix());
  return data;
}

using Runner = std::function<Json(const ScenarioConfig&, Checks&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"product", product_scenario},   {"markov", markov_scenario},
      {"trivial", trivial_scenario},   {"sw_solutions", sw_scenario},
      {"convergence", convergence_scenario}, {"structure", structure_scenario},
  };
  return table;
}

Json config_to_json(const ScenarioConfig& c) {
  Json j;
  j["scenario"] = c.scenario;
  j["d"] = c.d;
  j["n_sites"] = c.n_sites;
  j["group"] = default_degree(c);
  j["seed"] = c.seed;
  j["floor"] = c.floor;
  j["tol"] = c.tol;
  j["plant_defect"] = c.plant_defect;
  return j;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_list() {
  static const std::vector<ScenarioInfo> list{
      {"product", "cocycle of a seeded product state under a symmetric group",
       "x_g = W^{-1} g^{-1}(W)"},
      {"markov", "diagonal CDA chain: sandwich cocycle y and commuting x-cocycle",
       "phi(g(a)) = phi(y* a y), x_g = |y*|^2"},
      {"trivial", "coboundary kappa g^{-1}(kappa^{-1}) and local triviality",
       "x_g = kappa g^{-1}(kappa^{-1})"},
      {"sw_solutions", "solutions of W x = x* W", "x = W^{-1} z, z hermitian"},
      {"convergence", "norm convergence of finite-window products",
       "||x_N - x_M|| <= ||prod F|| ||prod F - 1||"},
      {"structure", "Haar averaging, kappa decomposition, Umegaki and GNS checks",
       "phi(a) = phi_G(kappa^{-1} a)"},
  };
  return list;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errs;
  if (!runners().count(c.scenario)) errs.push_back("scenario: unknown kind '" + c.scenario + "'");
  if (c.d < 2) errs.push_back("d: must be >= 2");
  if (c.n_sites < 1) errs.push_back("n_sites: must be >= 1");
  if (c.d >= 2 && c.n_sites >= 1 && c.scenario != "convergence" &&
      std::pow(static_cast<double>(c.d), c.n_sites) > 4096.0) {
    errs.push_back("n_sites: d^n_sites must not exceed 4096");
  }
  if (c.scenario == "markov" && c.n_sites < 2) errs.push_back("n_sites: markov needs >= 2 sites");
  if (c.group < 0) errs.push_back("group: must be >= 0");
  const int limit = c.scenario == "markov" ? c.n_sites - 1 : c.n_sites;
  if (c.group > 6) errs.push_back("group: degree above 6 exceeds 720 elements");
  if (c.group > limit && c.group > 0) {
    errs.push_back("group: degree exceeds the available sites (" + std::to_string(limit) + ")");
  }
  if (!(c.floor > 0.0) || c.floor * c.d >= 1.0) errs.push_back("floor: must lie in (0, 1/d)");
  if (!(c.tol > 0.0)) errs.push_back("tol: must be positive");
  return errs;
}

void apply_json(ScenarioConfig& c, const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") {
        c.scenario = value.get<std::string>();
      } else if (key == "d") {
        c.d = value.get<int>();
      } else if (key == "n_sites") {
        c.n_sites = value.get<int>();
      } else if (key == "group") {
        c.group = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "floor") {
        c.floor = value.get<double>();
      } else if (key == "tol") {
        c.tol = value.get<double>();
      } else if (key == "plant_defect") {
        c.plant_defect = value.get<bool>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else {
        throw Error(ErrorCode::ConfigInvalid, key + ": unknown config key");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
  }
}

Json run_scenario(const ScenarioConfig& config) {
  const std::vector<std::string> errs = validate(config);
  if (!errs.empty()) {
    std::string msg;
    for (const std::string& e : errs) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorCode::ConfigInvalid, msg);
  }
  Checks checks;
  Json data;
  try {
    data = runners().at(config.scenario)(config, checks);
  } catch (const Error& e) {
    throw Error(e.code(), config.scenario + ": " + e.what());
  }
  Json list = checks.take();
  int passed = 0;
  for (const Json& c : list) passed += c["pass"].get<bool>() ? 1 : 0;

  Json report;
  report["scenario"] = config.scenario;
  report["config"] = config_to_json(config);
  report["checks"] = std::move(list);
  if (!data.is_null()) report["data"] = std::move(data);
  Json summary;
  summary["total"] = report["checks"].size();
  summary["passed"] = passed;
  summary["failed"] = static_cast<int>(report["checks"].size()) - passed;
  summary["pass"] = passed == static_cast<int>(report["checks"].size());
  report["summary"] = std::move(summary);
  return report;
}

bool report_passed(const Json& report) { return report.at("summary").at("pass").get<bool>(); }

}  // namespace quasinv::tools
