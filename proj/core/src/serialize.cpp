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


#include "quasinv/serialize.hpp"

#include <string>

namespace quasinv {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) parse_error("matrix must be a list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_error("ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        parse_error("matrix entry must be a number or [re, im]");
      }
    }
  }
  return m;
}

Json permutation_to_json(const Permutation& g) { return g.image(); }

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) parse_error("permutation must be an image list");
  std::vector<int> img;
  for (const Json& e : j) {
    if (!e.is_number_integer()) parse_error("permutation entries must be integers");
    img.push_back(e.get<int>());
  }
  return Permutation(std::move(img));
}

Json witness_to_json(const Witness& w) {
  Json out = Json::object();
  if (w.g) out["g"] = permutation_to_json(*w.g);
  if (w.h) out["h"] = permutation_to_json(*w.h);
  if (w.probe) out["probe"] = *w.probe;
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["name"] = r.name;
  out["residual"] = r.residual;
  out["tolerance"] = r.tolerance;
  out["pass"] = r.pass;
  if (r.witness) out["witness"] = witness_to_json(*r.witness);
  if (!r.details.empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    out["details"] = std::move(d);
  }
  return out;
}

Json cocycle_to_json(const CocycleTable& t) {
  Json out;
  out["local_dim"] = t.window().local_dim();
  out["sites"] = t.window().sites();
  Json entries = Json::array();
  for (std::size_t i = 0; i < t.group().size(); ++i) {
    Json e;
    e["g"] = permutation_to_json(t.group()[i]);
    e["x"] = matrix_to_json(t.entries()[i].matrix());
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

CocycleTable cocycle_from_json(const Json& j) {
  try {
    const Window window(j.at("local_dim").get<int>(), j.at("sites").get<int>());
    std::vector<Permutation> elems;
    std::vector<LocalOperator> entries;
    for (const Json& e : j.at("entries")) {
      elems.push_back(permutation_from_json(e.at("g")));
      entries.emplace_back(window, matrix_from_json(e.at("x")));
    }
    if (entries.empty()) parse_error("cocycle needs entries");
    return CocycleTable(PermutationGroup(std::move(elems)), std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    parse_error(e.what());
  }
}

Json chain_to_json(const MarkovState& m) {
  Json out;
  out["w_inf"] = matrix_to_json(m.w_inf().matrix());
  Json ks = Json::array();
  for (const CMatrix& k : m.chain()) ks.push_back(matrix_to_json(k));
  out["chain"] = std::move(ks);
  return out;
}

Json series_to_json(const ConvergenceSeries& s) {
  Json rows = Json::array();
  for (const ConvergenceRow& r : s.rows) {
    Json row;
    row["n"] = r.n;
    row["diff"] = r.diff;
    row["bound"] = r.bound;
    row["tail"] = r.tail;
    row["ratio"] = r.ratio;
    rows.push_back(std::move(row));
  }
  Json out;
  out["rows"] = std::move(rows);
  out["max_ratio"] = s.max_ratio;
  out["non_convergent"] = s.non_convergent;
  return out;
}

}  // namespace quasinv
