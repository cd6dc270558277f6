// Copyright 2026 The superh Authors
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

#include "superh/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace superh {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ParseError("unknown key '" + it.key() + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
  return v.get<int>();
}

cplx entry(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError("matrix entry must be a number or [re, im]");
}

Matrix matrix_from(const json& v) {
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "I" || name == "X" || name == "Y" || name == "Z") return qubit::pauli(name[0]);
    if (name == "sm") return qubit::lowering();
    if (name == "sp") return qubit::raising();
    if (name == "n") return qubit::number();
    throw ParseError("unknown named operator '" + name + "'");
  }
  if (!v.is_array() || v.empty()) throw ParseError("matrix must be a nonempty list of rows");
  const long rows = static_cast<long>(v.size());
  Matrix m(rows, rows);
  for (long i = 0; i < rows; ++i) {
    const json& r = v[i];
    if (!r.is_array() || static_cast<long>(r.size()) != rows) throw ParseError("matrix must be square");
    for (long j = 0; j < rows; ++j) m(i, j) = entry(r[j]);
  }
  return m;
}

Sites sites_from(const json& v) {
  if (!v.is_array() || v.empty()) throw ParseError("sites must be a nonempty list");
  Sites s;
  for (const auto& x : v) s.push_back(integer(x, "site"));
  return s;
}

std::vector<double> s_list(const json& doc) {
  if (!doc.contains("s")) return {1.0};
  const json& v = doc.at("s");
  std::vector<double> out;
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) throw ParseError("s must be a number or a nonempty list");
  for (const auto& x : v) out.push_back(number(x, "s"));
  return out;
}

void check_sites(const Sites& s, const Lattice& lat, long dim) {
  for (int x : s)
    if (x < 0 || x >= lat.n()) throw ParseError("site index out of range");
  long want = 1;
  for (std::size_t i = 0; i < s.size(); ++i) want *= lat.d();
  if (want != dim) throw ParseError("operator dimension does not match its sites");
}

Matrix gibbs_sigma(const json& g, const Lattice& lat) {
  reject_unknown(g, {"terms", "beta"}, "gibbs");
  const double beta = g.contains("beta") ? number(g.at("beta"), "beta") : 1.0;
  Matrix h = Matrix::Zero(lat.dim(), lat.dim());
  for (const auto& t : require(g, "terms", "gibbs")) {
    reject_unknown(t, {"op", "sites"}, "gibbs term");
    Matrix op = matrix_from(require(t, "op", "gibbs term"));
    Sites s = sites_from(require(t, "sites", "gibbs term"));
    check_sites(s, lat, op.rows());
    embed_add(h, op, s, lat);
  }
  if (hermiticity_residual(h) > 1e-12) throw ParseError("gibbs Hamiltonian is not Hermitian");
  Matrix sigma = hermitian_function(h, [beta](double e) { return std::exp(-beta * e); });
  return sigma / sigma.trace();
}

ModelDocument parse_generic(const json& doc) {
  reject_unknown(doc, {"format", "kind", "lattice", "k", "jumps", "hamiltonian", "sigma", "s", "seed"}, "document");
  ModelDocument out;
  out.kind = ModelKind::kGeneric;
  const json& lj = require(doc, "lattice", "document");
  reject_unknown(lj, {"n", "d"}, "lattice");
  const int n = integer(require(lj, "n", "lattice"), "n");
  const int d = lj.contains("d") ? integer(lj.at("d"), "d") : 2;
  if (n < 1 || d < 2) throw ParseError("lattice needs n >= 1 and d >= 2");
  out.spec.lattice = Lattice(n, d);
  out.spec.k = doc.contains("k") ? integer(doc.at("k"), "k") : n;
  if (doc.contains("jumps")) {
    for (const auto& j : doc.at("jumps")) {
      reject_unknown(j, {"op", "sites", "weight", "partner"}, "jump");
      JumpTerm t;
      t.op = matrix_from(require(j, "op", "jump"));
      t.sites = sites_from(require(j, "sites", "jump"));
      check_sites(t.sites, out.spec.lattice, t.op.rows());
      t.weight = j.contains("weight") ? number(j.at("weight"), "weight") : 1.0;
      t.partner = j.contains("partner") ? integer(j.at("partner"), "partner") : -1;
      out.spec.jumps.push_back(std::move(t));
    }
  }
  for (const auto& j : out.spec.jumps)
    if (j.partner < -1 || j.partner >= static_cast<int>(out.spec.jumps.size()))
      throw ParseError("partner index out of range");
  if (doc.contains("hamiltonian")) {
    for (const auto& h : doc.at("hamiltonian")) {
      reject_unknown(h, {"op", "sites"}, "hamiltonian term");
      HamiltonianTerm t;
      t.op = matrix_from(require(h, "op", "hamiltonian term"));
      t.sites = sites_from(require(h, "sites", "hamiltonian term"));
      check_sites(t.sites, out.spec.lattice, t.op.rows());
      out.spec.hamiltonian.push_back(std::move(t));
    }
  }
  const long dim = out.spec.lattice.dim();
  if (!doc.contains("sigma") || (doc.at("sigma").is_string() && doc.at("sigma").get<std::string>() == "mixed")) {
    out.sigma = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  } else if (doc.at("sigma").is_object()) {
    const json& sj = doc.at("sigma");
    reject_unknown(sj, {"gibbs"}, "sigma");
    out.sigma = gibbs_sigma(require(sj, "gibbs", "sigma"), out.spec.lattice);
  } else if (doc.at("sigma").is_array()) {
    out.sigma = matrix_from(doc.at("sigma"));
    if (out.sigma.rows() != dim) throw ParseError("sigma dimension does not match lattice");
  } else {
    throw ParseError("sigma must be \"mixed\", a matrix or a gibbs object");
  }
  return out;
}

ModelDocument parse_classical(const json& doc) {
  reject_unknown(doc, {"format", "kind", "params", "s", "seed"}, "document");
  const json& pj = require(doc, "params", "document");
  reject_unknown(pj, {"n", "eps", "mu", "u", "beta", "gamma"}, "params");
  ClassicalModelParams p;
  p.n = integer(require(pj, "n", "params"), "n");
  if (p.n < 3) throw ParseError("classical model needs n >= 3");
  const json& ej = require(pj, "eps", "params");
  if (ej.is_number()) {
    p.eps.assign(p.n, ej.get<double>());
  } else {
    for (const auto& e : ej) p.eps.push_back(number(e, "eps"));
  }
  p.mu = pj.contains("mu") ? number(pj.at("mu"), "mu") : 0.0;
  p.u = pj.contains("u") ? number(pj.at("u"), "u") : 0.0;
  p.beta = pj.contains("beta") ? number(pj.at("beta"), "beta") : 1.0;
  if (pj.contains("gamma")) {
    for (const auto& row : pj.at("gamma")) {
      if (!row.is_array() || row.size() != 3) throw ParseError("gamma rows need 3 weights");
      p.gamma.push_back({number(row[0], "gamma"), number(row[1], "gamma"), number(row[2], "gamma")});
    }
  }
  try {
    p.check();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  ModelDocument out;
  out.kind = ModelKind::kClassical;
  out.classical = p;
  ClassicalModel m = build_classical(p);
  out.spec = std::move(m.spec);
  out.sigma = std::move(m.sigma);
  return out;
}

ModelDocument parse_fermionic(const json& doc) {
  reject_unknown(doc, {"format", "kind", "params", "s", "seed"}, "document");
  const json& pj = require(doc, "params", "document");
  reject_unknown(pj, {"n", "gamma_in", "gamma_out"}, "params");
  FermionParams p;
  p.n = integer(require(pj, "n", "params"), "n");
  auto pair = [&](const char* key, double& g0, double& g1) {
    const json& v = require(pj, key, "params");
    if (!v.is_array() || v.size() != 2) throw ParseError(std::string(key) + " must be [g0, g1]");
    g0 = number(v[0], key);
    g1 = number(v[1], key);
  };
  pair("gamma_in", p.gin0, p.gin1);
  pair("gamma_out", p.gout0, p.gout1);
  if (p.n < 1) throw ParseError("fermionic model needs n >= 1");
  ModelDocument out;
  out.kind = ModelKind::kFermionic;
  out.fermion = p;
  try {
    out.spec = build_fermionic_manybody(p);
    out.sigma = fermionic_gibbs(p);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ModelDocument parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be an object");
  const json& fmt = require(doc, "format", "document");
  if (!fmt.is_string() || fmt.get<std::string>() != kSpecFormat)
    throw ParseError(std::string("unsupported format; expected ") + kSpecFormat);
  const std::string kind = doc.contains("kind") ? doc.at("kind").get<std::string>() : "generic";
  ModelDocument out;
  try {
    if (kind == "generic") {
      out = parse_generic(doc);
    } else if (kind == "classical") {
      out = parse_classical(doc);
    } else if (kind == "fermionic") {
      out = parse_fermionic(doc);
    } else {
      throw ParseError("unknown kind '" + kind + "'");
    }
    out.s = s_list(doc);
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
      out.seed = doc.at("seed").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  return out;
}

ModelDocument load_spec(const std::string& path) { return parse_spec(read_file(path)); }

Matrix parse_matrix_text(const std::string& text) {
  try {
    return matrix_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid matrix document: ") + e.what());
  }
}

Matrix load_matrix(const std::string& path) { return parse_matrix_text(read_file(path)); }

std::string classical_document(const ClassicalModelParams& p, const std::vector<double>& s) {
  json doc;
  doc["format"] = kSpecFormat;
  doc["kind"] = "classical";
  json pj;
  pj["n"] = p.n;
  pj["eps"] = p.eps;
  pj["mu"] = p.mu;
  pj["u"] = p.u;
  pj["beta"] = p.beta;
  if (!p.gamma.empty()) pj["gamma"] = p.gamma;
  doc["params"] = pj;
  doc["s"] = s;
  return doc.dump(2) + "\n";
}

std::string fermionic_document(const FermionParams& p, const std::vector<double>& s) {
  json doc;
  doc["format"] = kSpecFormat;
  doc["kind"] = "fermionic";
  doc["params"] = {{"n", p.n}, {"gamma_in", {p.gin0, p.gin1}}, {"gamma_out", {p.gout0, p.gout1}}};
  doc["s"] = s;
  return doc.dump(2) + "\n";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> r;
  for (double x : row) r.push_back(format_double(x));
  add_row(r);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
  if (row.size() != header_.size()) throw std::logic_error("CSV row width mismatch");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

}  // namespace superh
