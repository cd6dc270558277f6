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

#include "superh/commands.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "superh/entanglement.hpp"
#include "superh/knabe_gap.hpp"
#include "superh/spec_io.hpp"
#include "superh/super_hamiltonian.hpp"

namespace superh {

namespace {

// Ordered key/value summary; echoed to stdout and to summary.txt.
class Summary {
 public:
  void add(const std::string& key, const std::string& value) { lines_.push_back(key + ": " + value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void flag(const std::string& key, bool ok) { add(key, ok ? "PASS" : "FAIL"); }
  std::string str() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

struct Context {
  const CommandOptions& opt;
  std::ostream& out;
  Summary summary;
  std::filesystem::path dir;

  std::string path(const std::string& file) const { return (dir / file).string(); }
  double tol(double fallback) const { return opt.tol.value_or(fallback); }
};

struct Loaded {
  ModelDocument doc;
  std::vector<double> s;
};

Loaded load(const Context& ctx) {
  if (ctx.opt.spec_path.empty()) throw ParseError("--spec is required");
  Loaded l{load_spec(ctx.opt.spec_path), {}};
  if (!ctx.opt.sigma.empty()) {
    l.doc.sigma = load_matrix(ctx.opt.sigma);
    if (l.doc.sigma.rows() != l.doc.spec.lattice.dim()) throw ParseError("--sigma dimension does not match lattice");
  }
  l.s = ctx.opt.s.empty() ? l.doc.s : ctx.opt.s;
  if (ctx.opt.seed) l.doc.seed = *ctx.opt.seed;
  return l;
}

void complex_rows(CsvTable& t, const std::vector<cplx>& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    t.add_row(std::vector<double>{static_cast<double>(i), z[i].real(), z[i].imag()});
}

void matrix_rows(CsvTable& t, const Matrix& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      t.add_row(std::vector<double>{static_cast<double>(i), static_cast<double>(j), m(i, j).real(), m(i, j).imag()});
}

CoefficientMatrix pauli_coefficients(const SuperOpMatrix& s, const Lattice& lat) {
  return gks_matrix(s, frame_of(pauli_basis(lat, lat.n())));
}

int cmd_check_qdb(Context& ctx) {
  Loaded l = load(ctx);
  const double tol = ctx.tol(1e-9);
  SuperOpMatrix s = assemble(l.doc.spec);
  CsvTable t({"s[-]", "qdb_residual[relative spectral norm]", "qdb2_residual[relative spectral norm]"});
  bool ok = true;
  double worst = 0.0;
  for (double sp : l.s) {
    QdbResidual r = qdb_residual(s, l.doc.sigma, sp);
    t.add_row(std::vector<double>{sp, r.qdb, r.qdb2});
    worst = std::max(worst, std::max(r.qdb, r.qdb2));
    ok = ok && r.qdb <= tol && r.qdb2 <= tol;
  }
  t.write(ctx.path("qdb.csv"));
  ctx.summary.add("tolerance", tol);
  ctx.summary.add("max_residual", worst);
  try {
    ctx.summary.add("commutator_check", commutator_check(pauli_coefficients(s, l.doc.spec.lattice).K));
  } catch (const std::exception& e) {
    ctx.summary.add("commutator_check", std::string("unavailable (") + e.what() + ")");
  }
  ctx.summary.flag("qdb", ok);
  return ok ? kExitPass : kExitNumericFail;
}

SuperHamiltonian build_route(Route r, const Loaded& l, const SuperOpMatrix& s, CoefficientMatrix* coeffs) {
  switch (r) {
    case Route::kDense:
      return map_dense(s, l.doc.sigma, l.s.front());
    case Route::kThm31:
      return map_local_jumps(l.doc.spec);
    case Route::kThm32: {
      CoefficientMatrix c = pauli_coefficients(s, l.doc.spec.lattice);
      SuperHamiltonian h = map_basis(c);
      if (coeffs) *coeffs = std::move(c);
      return h;
    }
  }
  throw PreconditionError("unknown route");
}

int cmd_map(Context& ctx) {
  Loaded l = load(ctx);
  const double tol = ctx.tol(1e-8);
  const Route route = parse_route(ctx.opt.route);
  SuperOpMatrix s = assemble(l.doc.spec);
  CoefficientMatrix coeffs;
  SuperHamiltonian h = build_route(route, l, s, &coeffs);
  VerificationReport v = verify_mapping(s, h, l.doc.sigma);

  CsvTable spec_t({"index[-]", "re[eigenvalue]", "im[eigenvalue]"});
  complex_rows(spec_t, general_spectrum(h.mat));
  spec_t.write(ctx.path("h_spectrum.csv"));

  if (route == Route::kThm32) {
    DecayProfile p = decay_profile(h.coeff_sqrt, h.supports, l.doc.spec.lattice, &coeffs.K);
    CsvTable d({"distance[sites]", "max_abs[coefficient]", "bound[coefficient]"});
    for (std::size_t i = 0; i < p.distance.size(); ++i)
      d.add_row(std::vector<double>{static_cast<double>(p.distance[i]), p.max_abs[i], p.bound[i]});
    d.write(ctx.path("decay.csv"));
    ctx.summary.add("decay_exp_r2", p.exp_r2);
    ctx.summary.add("decay_poly_r2", p.poly_r2);
  }

  const long dim = l.doc.sigma.rows();
  const Matrix mixed = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  if ((l.doc.sigma - mixed).cwiseAbs().maxCoeff() <= 1e-12)
    ctx.summary.add("h_equals_minus_l", format_double((h.mat + s.mat).cwiseAbs().maxCoeff()));

  double cross = 0.0;
  std::string compared;
  for (Route other : {Route::kDense, Route::kThm31, Route::kThm32}) {
    if (other == route) continue;
    try {
      SuperHamiltonian h2 = build_route(other, l, s, nullptr);
      cross = std::max(cross, (h2.mat - h.mat).cwiseAbs().maxCoeff());
      compared += (compared.empty() ? "" : " ") + route_name(other);
    } catch (const std::exception&) {
      // Route preconditions not met; nothing to compare.
    }
  }
  const bool ok = v.spectrum_distance <= tol && v.kernel_residual <= tol && (compared.empty() || cross <= tol);
  ctx.summary.add("route", route_name(route));
  ctx.summary.add("tolerance", tol);
  ctx.summary.add("spectrum_distance", v.spectrum_distance);
  ctx.summary.add("kernel_residual", v.kernel_residual);
  ctx.summary.add("hermiticity", v.hermiticity);
  ctx.summary.add("min_eigenvalue", v.min_eigenvalue);
  ctx.summary.add("gap_h", v.gap_h);
  ctx.summary.add("gap_l", v.gap_s);
  ctx.summary.add("routes_compared", compared.empty() ? "none" : compared);
  ctx.summary.add("routes_max_difference", cross);
  ctx.summary.flag("map", ok);
  return ok ? kExitPass : kExitNumericFail;
}

int cmd_spectrum(Context& ctx) {
  Loaded l = load(ctx);
  SuperOpMatrix s = assemble(l.doc.spec);
  SpectrumReport r = spectrum_and_gap(s, ctx.opt.tol.value_or(-1.0));
  CsvTable t({"index[-]", "re[eigenvalue]", "im[eigenvalue]"});
  complex_rows(t, r.eigenvalues);
  t.write(ctx.path("spectrum.csv"));
  ctx.summary.add("zero_threshold", r.zero_threshold);
  ctx.summary.add("gap", r.gap);
  ctx.summary.add("zero_count", std::to_string(r.zero_count));
  ctx.summary.add("max_real", r.max_real);
  ctx.summary.flag("left_half_plane", r.left_half_plane);
  return r.left_half_plane ? kExitPass : kExitNumericFail;
}

int cmd_steady_state(Context& ctx) {
  Loaded l = load(ctx);
  const double tol = ctx.tol(1e-8);
  SuperOpMatrix s = assemble(l.doc.spec);
  SteadyStateReport r = steady_states(s);
  CsvTable t({"row[-]", "col[-]", "re[matrix element]", "im[matrix element]"});
  matrix_rows(t, r.states.front());
  t.write(ctx.path("steady_state.csv"));
  const double diff = (r.states.front() - l.doc.sigma).cwiseAbs().maxCoeff();
  const bool ok = r.unique && diff <= tol;
  ctx.summary.add("tolerance", tol);
  ctx.summary.add("kernel_dim", std::to_string(r.kernel_dim));
  ctx.summary.add("min_eigenvalue", r.min_eigenvalue.front());
  ctx.summary.add("distance_to_sigma", diff);
  ctx.summary.flag("steady_state", ok);
  return ok ? kExitPass : kExitNumericFail;
}

int cmd_evolve(Context& ctx) {
  Loaded l = load(ctx);
  SuperOpMatrix s = assemble(l.doc.spec);
  const long dim = l.doc.sigma.rows();
  Matrix rho0 = Matrix::Zero(dim, dim);
  rho0(0, 0) = 1.0;
  Matrix rho = evolve(s, rho0, ctx.opt.time);
  CsvTable t({"row[-]", "col[-]", "re[matrix element]", "im[matrix element]"});
  matrix_rows(t, rho);
  t.write(ctx.path("rho_t.csv"));
  ctx.summary.add("time", ctx.opt.time);
  ctx.summary.add("trace_distance_to_sigma", trace_norm_hermitian(rho - l.doc.sigma));
  ctx.summary.add("trace", rho.trace().real());
  ctx.summary.flag("evolve", true);
  return kExitPass;
}

int cmd_entanglement(Context& ctx) {
  Loaded l = load(ctx);
  const Lattice& lat = l.doc.spec.lattice;
  CsvTable t({"cut_size[sites]", "op_entropy[nats]", "mutual_information[nats]", "mi_bound_ok[bool]"});
  bool ok = true;
  for (int c = 1; c < lat.n(); ++c) {
    Sites cut;
    for (int i = 0; i < c; ++i) cut.push_back(i);
    EntanglementReport r = op_space_entropy(l.doc.sigma, cut, lat);
    t.add_row(std::vector<std::string>{std::to_string(c), format_double(r.op_entropy),
                                       format_double(r.mutual_information), r.mi_bound_ok ? "1" : "0"});
    ok = ok && r.mi_bound_ok;
  }
  t.write(ctx.path("entanglement.csv"));
  const double residual = purification_residual(vectorize_state(l.doc.sigma, lat), l.doc.sigma);
  ctx.summary.add("purification_residual", residual);
  ok = ok && residual <= 1e-9;
  if (!ctx.opt.bond_dims.empty()) {
    auto curve = truncation_curve(l.doc.sigma, lat, ctx.opt.bond_dims);
    CsvTable tc({"bond_dim[-]", "trace_distance[trace norm]", "vec_distance[2-norm]", "overlap[-]",
                 "sound_bound[trace norm]", "sqrt2_bound[trace norm]"});
    int sqrt2_violations = 0;
    for (const auto& p : curve) {
      tc.add_row(std::vector<double>{static_cast<double>(p.bond_dim), p.trace_distance, p.vec_distance, p.overlap,
                                     p.sound_bound, p.sqrt2_bound});
      ok = ok && p.trace_distance <= p.sound_bound + 1e-9;
      if (p.trace_distance > p.sqrt2_bound + 1e-9) ++sqrt2_violations;
    }
    tc.write(ctx.path("truncation.csv"));
    ctx.summary.add("sqrt2_bound_violations", std::to_string(sqrt2_violations));
  }
  ctx.summary.add("tolerance", 1e-8);
  ctx.summary.flag("entanglement", ok);
  return ok ? kExitPass : kExitNumericFail;
}

int cmd_knabe(Context& ctx) {
  const std::uint64_t seed = ctx.opt.seed.value_or(1);
  KnabeTable kt = knabe_table(ctx.opt.beta, ctx.opt.instances, seed);
  std::vector<std::string> header{"row[-]"};
  for (double u : kt.u) header.push_back("gamma_loc_u=" + format_double(u) + "[eigenvalue]");
  CsvTable t(header);
  for (std::size_t r = 0; r < kt.rows.size(); ++r) {
    std::vector<std::string> row{kt.rows[r]};
    for (double v : kt.values[r]) row.push_back(format_double(v));
    t.add_row(row);
  }
  t.write(ctx.path("knabe.csv"));
  ctx.out << t.str();
  ctx.summary.add("beta", kt.beta);
  ctx.summary.add("mu", kt.mu);
  ctx.summary.add("random_instances", std::to_string(kt.random_instances));
  ctx.summary.add("random_ring_sites", std::to_string(kt.random_ring));
  ctx.summary.add("seed", std::to_string(seed));
  ctx.summary.flag("knabe", true);
  return kExitPass;
}

int cmd_models(Context& ctx) {
  ClassicalModelParams cp = ClassicalModelParams::uniform(4, 1.0, 0.0, 0.5, ctx.opt.beta);
  FermionParams fp;
  fp.n = 4;
  write_text(ctx.path("classical.json"), classical_document(cp, {0.0, 0.5, 1.0}));
  write_text(ctx.path("fermionic.json"), fermionic_document(fp, {0.0, 0.5, 1.0}));
  ctx.summary.add("written", "classical.json fermionic.json");
  ctx.summary.flag("models", true);
  return kExitPass;
}

int cmd_decay(Context& ctx) {
  Loaded l = load(ctx);
  if (l.doc.kind != ModelKind::kFermionic) throw ParseError("decay needs a fermionic spec");
  FermionParams p = l.doc.fermion;
  p.n = ctx.opt.sites;
  FermionCoeffs fc = fermionic_super_h_coeffs(single_particle(p));
  CsvTable t({"distance[sites]", "max_abs[coefficient]", "bound[coefficient]"});
  for (std::size_t i = 0; i < fc.profile.distance.size(); ++i)
    t.add_row(std::vector<double>{static_cast<double>(fc.profile.distance[i]), fc.profile.max_abs[i],
                                  fc.profile.bound[i]});
  t.write(ctx.path("decay.csv"));
  const bool bound_ok = !fc.bound_applicable || fc.bound_violation <= 1e-12;
  ctx.summary.add("sites", std::to_string(p.n));
  ctx.summary.add("entrywise_bound", fc.bound_applicable ? format_double(fc.bound_violation) : "not applicable");
  ctx.summary.add("exp_rate", fc.profile.exp_rate);
  ctx.summary.add("exp_r2", fc.profile.exp_r2);
  ctx.summary.add("poly_exponent", fc.profile.poly_exponent);
  ctx.summary.add("poly_r2", fc.profile.poly_r2);
  ctx.summary.add("preferred_fit", fc.profile.prefers_exponential() ? "exponential" : "polynomial");
  ctx.summary.add("tolerance", 1e-12);
  ctx.summary.flag("decay", bound_ok);
  return bound_ok ? kExitPass : kExitNumericFail;
}

const std::map<std::string, std::function<int(Context&)>>& table() {
  static const std::map<std::string, std::function<int(Context&)>> t = {
      {"check-qdb", cmd_check_qdb}, {"map", cmd_map},         {"spectrum", cmd_spectrum},
      {"steady-state", cmd_steady_state}, {"evolve", cmd_evolve}, {"entanglement", cmd_entanglement},
      {"knabe", cmd_knabe},         {"models", cmd_models},   {"decay", cmd_decay},
  };
  return t;
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  return out;
}

int run_command(const std::string& name, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  auto it = table().find(name);
  if (it == table().end()) {
    err << "unknown command '" << name << "'\n";
    return kExitParseFail;
  }
  Context ctx{opt, out, {}, opt.out_dir};
  int code = kExitPass;
  try {
    std::error_code ec;
    std::filesystem::create_directories(ctx.dir, ec);
    if (ec) throw ParseError("cannot create output directory '" + opt.out_dir + "'");
    code = it->second(ctx);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseFail;
  } catch (const std::exception& e) {
    ctx.summary.add("error", e.what());
    code = kExitNumericFail;
  }
  const std::string text = ctx.summary.str();
  out << text;
  try {
    write_text(ctx.path("summary.txt"), text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseFail;
  }
  return code;
}

}  // namespace superh
