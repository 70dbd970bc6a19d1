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


// Acceptance suite: one PASS/FAIL line per criterion. An optional argument
// names the command-line binary; determinism is then also checked on its
// written reports.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quasinv/compact.hpp"
#include "quasinv/gns.hpp"
#include "quasinv/limits.hpp"
#include "quasinv/qmc.hpp"
#include "scenarios.hpp"

namespace {

using namespace quasinv;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

DensityMatrix diagonal_weight(Rng& rng) {
  const double p = 0.1 + 0.8 * rng.uniform();
  return DensityMatrix(diag({p, 1 - p}), std::min(p, 1 - p));
}

ProductState seeded_product(std::uint64_t seed) {
  std::vector<DensityMatrix> ws;
  for (int n = 0; n < 3; ++n) ws.push_back(random_density(2, 0.05, seed * 31 + static_cast<std::uint64_t>(n)));
  return ProductState(ws);
}

ProductState seeded_diagonal(std::uint64_t seed, int sites) {
  Rng rng(seed);
  std::vector<DensityMatrix> ws;
  for (int n = 0; n < sites; ++n) ws.push_back(diagonal_weight(rng));
  return ProductState(ws);
}

ProductState anchor() {
  return ProductState({DensityMatrix(diag({0.5, 0.5}), 0.5), DensityMatrix(diag({0.75, 0.25}), 0.25)});
}

Outcome cocycle_axioms() {
  double worst = 0.0;
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CocycleTable t = product_state_cocycle(seeded_product(seed), s3);
    worst = std::max({worst, verify_normalization(t).residual, verify_cocycle_law(t).residual,
                      verify_inverse_relation(t).residual});
  }
  return {worst <= 1e-9, "max residual " + fmt(worst)};
}

Outcome quasi_invariance() {
  double worst = 0.0;
  bool detected = true;
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProductState phi = seeded_product(seed);
    const std::vector<LocalOperator> probes = matrix_unit_probes(phi.window());
    if (probes.size() != 64) return {false, "probe basis has " + std::to_string(probes.size())};
    CocycleTable t = product_state_cocycle(phi, s3);
    worst = std::max(worst, verify_quasi_invariance(phi, t, probes).residual);

    const Permutation g = Permutation::transposition(3, 1, 3);
    CMatrix bumped = t.at(g).matrix();
    bumped(0, 0) += 1e-3;
    t.set(g, LocalOperator(phi.window(), bumped));
    const VerificationReport r = verify_quasi_invariance(phi, t, probes, 1e-10);
    detected = detected && !r.pass && r.witness && r.witness->g == g && r.witness->probe;
  }
  return {worst <= 1e-10 && detected,
          "max residual " + fmt(worst) + ", planted defect " + (detected ? "caught" : "missed")};
}

Outcome strong_bundle() {
  double worst = 0.0;
  double min_spec = 1.0;
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProductState phi = seeded_diagonal(seed, 3);
    const StrongReport s =
        verify_strong(product_state_cocycle(phi, s3), phi, matrix_unit_probes(phi.window()));
    worst = std::max({worst, s.hermiticity.residual, s.commutativity.residual,
                      s.centralizer.residual});
    min_spec = std::min(min_spec, s.spectrum_min);
  }
  // Rotate the second weight off the diagonal.
  const double th = 0.4;
  CMatrix u(2, 2);
  u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const ProductState rotated({DensityMatrix(diag({0.7, 0.3}), 0.3),
                              DensityMatrix(u * diag({0.8, 0.2}) * u.adjoint(), 0.2),
                              DensityMatrix(diag({0.6, 0.4}), 0.4)});
  const CocycleTable t = product_state_cocycle(rotated, s3);
  const auto probes = matrix_unit_probes(rotated.window());
  const double herm = verify_strong(t, rotated, probes).hermiticity.residual;
  const double qi = verify_quasi_invariance(rotated, t, probes).residual;
  return {worst <= 1e-9 && min_spec > 0.0 && herm >= 1e-3 && qi <= 1e-10,
          "diagonal " + fmt(worst) + ", min eig " + fmt(min_spec) + "; rotated hermiticity " +
              fmt(herm) + ", quasi-invariance " + fmt(qi)};
}

Outcome sw_equivalence() {
  double worst = 0.0;
  int mismatches = 0;
  int hermitian = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const DensityMatrix w = random_density(3, 0.05, 9000 + k);
    CMatrix z;
    if (k % 2 == 0) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(w.matrix());
      Rng rng(k);
      RVector f(3);
      for (int i = 0; i < 3; ++i) f(i) = rng.normal();
      z = es.eigenvectors() * f.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    } else {
      z = random_hermitian(3, 7000 + k);
    }
    const CMatrix x = solve_sw(w, z);
    worst = std::max(worst, operator_norm(w.matrix() * x - x.adjoint() * w.matrix()));
    const bool x_herm = operator_norm(x - x.adjoint()) <= 1e-10 * std::max(1.0, operator_norm(x));
    const bool commutes = operator_norm(z * w.matrix() - w.matrix() * z) <= 1e-10;
    hermitian += x_herm ? 1 : 0;
    mismatches += x_herm != commutes ? 1 : 0;
  }
  return {worst <= 1e-10 && mismatches == 0 && hermitian == 50,
          "max ||Wx - x*W|| " + fmt(worst) + ", " + std::to_string(hermitian) +
              " hermitian, " + std::to_string(mismatches) + " mismatches"};
}

Outcome anchor_values() {
  const ProductState phi = anchor();
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 2);
  const Permutation t = Permutation::transposition(2, 1, 2);
  const CocycleTable table = product_state_cocycle(phi, s2);
  const LocalOperator k = kappa(table);
  const LocalOperator kinv{phi.window(), k.matrix().inverse()};
  const double r1 = operator_norm(table.at(t).matrix() - diag({1, 3, 1.0 / 3, 1}));
  const double r2 = operator_norm(k.matrix() - diag({1, 2, 2.0 / 3, 1}));
  const double r3 = operator_norm(haar_average(s2, kinv).matrix() - identity(4));
  const double r4 = operator_norm(table.at(t).matrix() - (k * act_inverse(t, kinv)).matrix());
  const double r5 = std::abs(phi.evaluate(table.at(t)) - 1.0);
  const double worst = std::max({r1, r2, r3, r4, r5});
  return {worst <= 1e-14, "max residual " + fmt(worst)};
}

Outcome structure_round_trip() {
  double worst = 0.0;
  double converse = 0.0;
  const PermutationGroup s3 = PermutationGroup::symmetric(3, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ProductState phi = seeded_diagonal(100 + seed, 3);
    const CocycleTable t = product_state_cocycle(phi, s3);
    const StructureReport s = verify_structure(phi, t, matrix_unit_probes(phi.window()));
    worst = std::max({worst, s.density.residual, s.trivialization.residual,
                      s.normalization.residual, s.commutation.residual});
    const ConverseResult r = converse_construct(invariant_state(phi, s3), s.kappa, s3);
    converse = std::max(converse, operator_norm(r.phi.density() - phi.density()));
  }
  return {worst <= 1e-9 && converse <= 1e-10,
          "structure " + fmt(worst) + ", converse " + fmt(converse)};
}

Outcome umegaki() {
  const Window w(2, 3);
  const auto probes = default_probes(w);
  double worst = 0.0;
  for (int degree : {2, 3}) {
    const UmegakiReport r = verify_umegaki(PermutationGroup::symmetric(degree, 3), w, probes);
    worst = std::max({worst, r.idempotence.residual, r.unitality.residual, r.positivity.residual,
                      r.module_property.residual, r.faithfulness.residual});
  }
  const double proj = projective_family_check(PermutationGroup::symmetric(2, 3),
                                              PermutationGroup::symmetric(3, 3), probes)
                          .residual;
  return {worst <= 1e-10 && proj <= 1e-10, "suite " + fmt(worst) + ", projectivity " + fmt(proj)};
}

Outcome gns_covariance() {
  const ProductState phi = anchor();
  const PermutationGroup s2 = PermutationGroup::symmetric(2, 2);
  const GnsRepresentation r(phi);
  const GnsUnitaries u = build_unitaries(r, product_state_cocycle(phi, s2));
  const auto probes = matrix_unit_probes(phi.window());
  const UnitaryReport ur = verify_unitaries(r, u);
  const double worst = std::max({ur.unitarity.residual, ur.group_law.residual, ur.adjoint.residual,
                                 verify_covariance(r, u, probes).residual,
                                 verify_lifted_expectation(r, u, s2, probes).residual});
  return {r.dim() == 16 && worst <= 1e-9,
          "dim " + std::to_string(r.dim()) + ", max residual " + fmt(worst)};
}

Outcome markov_chain() {
  const DensityMatrix half(identity(2) / 2.0, 0.5);
  double norm = 0.0;
  double ext = 0.0;
  double sandwich = 0.0;
  double cross = 0.0;
  double strong = 0.0;
  bool positive = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MarkovState m(half, default_diagonal_chain(3, seed));
    for (const CMatrix& k : m.chain()) norm = std::max(norm, cda_normalize_check(k, half));
    const Window inner(2, 3);
    for (const LocalOperator& a : random_hermitian_probes(inner, 20, seed + 1)) {
      ext = std::max(ext, window_extension_residual(m, diagonal_cda(0.15), a));
    }
    const PermutationGroup group = PermutationGroup::symmetric(3, 4);
    const auto probes = default_probes(m.window(), seed + 2);
    for (const Permutation& g : group.elements()) {
      sandwich = std::max(sandwich, sandwich_residual(m, g, probes));
      const LocalOperator y = y_cocycle(m, g);
      cross = std::max(cross, operator_norm(x_cocycle_commuting(m, g).matrix() -
                                            y.matrix() * y.matrix().adjoint()));
    }
    const StrongReport s = verify_strong(markov_cocycle_table(m, group), m.state(), probes);
    strong = std::max({strong, s.hermiticity.residual, s.commutativity.residual,
                       s.centralizer.residual});
    positive = positive && s.positivity.pass && s.spectrum_min > 0.0;
  }
  return {norm <= 1e-12 && ext <= 1e-9 && sandwich <= 1e-9 && cross <= 1e-9 && strong <= 1e-9 &&
              positive,
          "normalization " + fmt(norm) + ", extension " + fmt(ext) + ", sandwich " +
              fmt(sandwich) + ", x = yy* " + fmt(cross) + ", strong " + fmt(strong)};
}

Outcome convergence() {
  const WindowProductSequence seq = summable_preset(12);
  double excess = 0.0;
  for (int m = 1; m < 12; ++m) {
    for (int n = m + 1; n <= 12; ++n) {
      const CauchyDiagnostic c = cauchy_diagnostic(seq, m, n);
      excess = std::max(excess, c.diff - c.bound);
    }
  }
  double min_decay = 1e300;
  for (int m = 3; m + 2 <= 12; ++m) {
    min_decay = std::min(min_decay, cauchy_diagnostic(seq, m, m + 1).diff /
                                        cauchy_diagnostic(seq, m + 1, m + 2).diff);
  }
  double tele = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::vector<CMatrix> fs;
    for (std::uint64_t k = 0; k < 8; ++k) fs.push_back(identity(4) + 0.3 * random_matrix(4, 4, s * 64 + k));
    tele = std::max(tele, telescoping_check(fs));
  }
  return {excess <= 0.0 && min_decay >= 3.0 && tele <= 1e-12,
          "diff - bound " + fmt(excess) + ", min decay " + fmt(min_decay) + ", telescoping " +
              fmt(tele)};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  int differing = 0;
  int failed_runs = 0;
  int compared = 0;
  for (const tools::ScenarioInfo& info : tools::scenario_list()) {
    tools::ScenarioConfig c;
    c.scenario = info.name;
    if (info.name == "markov") c.n_sites = 4;
    ++compared;
    if (tools::run_scenario(c).dump(2) != tools::run_scenario(c).dump(2)) ++differing;
    if (cli.empty()) continue;
    const auto dir = std::filesystem::temp_directory_path();
    std::string outs[2];
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("quasinv_det_" + info.name + std::to_string(run) + ".json");
      const std::string cmd = "\"" + cli + "\" run --scenario " + info.name +
                              (info.name == "markov" ? " --n-sites 4" : "") + " --out \"" +
                              path.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) ++failed_runs;
      outs[run] = read_file(path);
      std::filesystem::remove(path);
    }
    if (outs[0].empty() || outs[0] != outs[1]) ++differing;
  }
  return {differing == 0 && failed_runs == 0,
          std::to_string(compared) + " scenarios" + (cli.empty() ? " in-process" : ", in-process and CLI") +
              ", " + std::to_string(differing) + " differing"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cocycle axioms on S3 product states", cocycle_axioms},
      {"quasi-invariance over the matrix-unit basis", quasi_invariance},
      {"strong-case bundle", strong_bundle},
      {"W x = x* W solutions and hermitian equivalence", sw_equivalence},
      {"two-site anchor values", anchor_values},
      {"structure decomposition round trip", structure_round_trip},
      {"Umegaki conditional expectations", umegaki},
      {"GNS covariance on the anchor state", gns_covariance},
      {"diagonal Markov chain", markov_chain},
      {"finite-window convergence", convergence},
      {"report determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first
              << "  (" << o.detail << ")\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
