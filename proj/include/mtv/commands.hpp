#pragma once

// Command implementations behind the mtv executable.  Each returns a JSON
// report and an exit code; errors surface as exceptions mapped by
// exit_code_for().

#include <cmath>
#include <optional>
#include <string>

#include "mtv/elliptic.hpp"
#include "mtv/io.hpp"

namespace mtv {

enum ExitCode { kExitOk = 0, kExitViolation = 2, kExitUnsupported = 3, kExitInput = 4 };

struct RunConfig {
  long level = 2;
  std::string eta;        ///< empty: bundled quotient for the level
  std::string form_file;  ///< JSON with "g" and "g_fricke" series
  long lambda = 4;
  long mu = 1;
  long M = 1;
  long order = 64;
  std::string curve;       ///< "g2,g3"
  std::string weierstrass; ///< "a1,a2,a3,a4,a6"
  Prec prec = kDefaultPrecBits;
};

struct CommandResult {
  json report;
  int exit_code = kExitOk;
};

/// Bundled eta quotients: cusp forms of level N with rational Fricke scalar.
inline std::string bundled_eta(long level) {
  switch (level) {
    case 1: return "1:24";
    case 2: return "1:8,2:8";
    case 3: return "1:6,3:6";
    case 5: return "1:4,5:4";
    default: throw InputError("no bundled eta quotient for level " + std::to_string(level) + "; pass --eta");
  }
}

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UnsupportedError*>(&e)) return kExitUnsupported;
  if (dynamic_cast<const InvariantViolation*>(&e)) return kExitViolation;
  if (dynamic_cast<const Error*>(&e)) return kExitInput;
  return kExitViolation;
}

inline std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant_violation";
  if (dynamic_cast<const TruncationError*>(&e)) return "truncation";
  if (dynamic_cast<const DomainMismatch*>(&e)) return "domain_mismatch";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
  if (dynamic_cast<const InputError*>(&e)) return "input";
  return "internal";
}

inline json error_report(const std::string& command, const std::exception& e) {
  json j;
  j["command"] = command;
  j["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
  j["exit_code"] = exit_code_for(e);
  return j;
}

// ---------------------------------------------------------------- newforms

inline json orbit_set_json(const GaloisOrbitSet& o, long coeff_upto, Prec prec) {
  json j;
  j["weight"] = o.weight;
  auto [dm, ds] = dim_spaces_level1(o.weight);
  j["dim_M"] = dm;
  j["dim_S"] = ds;
  j["order"] = o.trunc;
  j["t2_charpoly"] = poly_json(o.t2_charpoly);
  j["orbit_count"] = static_cast<long>(o.orbits.size());
  j["maeda"] = o.maeda();
  json orbits = json::array();
  for (const auto& orb : o.orbits) {
    json b;
    b["heckefield"] = heckefield_json(orb.rep.field);
    b["totally_real"] = orb.totally_real;
    json emb = json::array();
    for (const auto& r : orb.embeddings) emb.push_back(complex_json(r, std::min<int>(40, static_cast<int>(prec * 0.3) - 4)));
    b["embeddings"] = emb;
    b["coefficients"] = nf_series_json(orb.rep.coeffs, coeff_upto);
    orbits.push_back(b);
  }
  j["orbits"] = orbits;
  j["checks"] = checks_json(o.checks);
  return j;
}

inline CommandResult cmd_newforms(long k, long order, long coeff_upto, Prec prec) {
  if (order < 2) throw InputError("order must be >= 2");
  if (k < 0) throw InputError("weight must be non-negative");
  CommandResult r;
  r.report["command"] = "newforms";
  if (k % 2 != 0 || dim_spaces_level1(k).second == 0) {
    r.report["weight"] = k;
    auto [dm, ds] = dim_spaces_level1(k);
    r.report["dim_M"] = dm;
    r.report["dim_S"] = ds;
    r.report["orbit_count"] = 0;
    r.report["maeda"] = false;
    r.report["orbits"] = json::array();
    return r;
  }
  GaloisOrbitSet o = newform_basis_level1(k, order);
  json body = orbit_set_json(o, coeff_upto, prec);
  for (auto it = body.begin(); it != body.end(); ++it) r.report[it.key()] = it.value();
  r.report["passed"] = o.all_checks_pass();
  if (!o.all_checks_pass()) r.exit_code = kExitViolation;
  return r;
}

// ---------------------------------------------------------------- theorem

inline TraceInput build_input(const RunConfig& c) {
  if (c.order < 1) throw InputError("order must be >= 1");
  TraceInput in;
  if (!c.form_file.empty()) {
    json f = read_json_file(c.form_file);
    if (!f.contains("g") || !f.contains("g_fricke")) throw InputError("form file needs 'g' and 'g_fricke' series");
    RSeries g = series_from_json(f.at("g")), gf = series_from_json(f.at("g_fricke"));
    if (g.level() != c.level) throw InputError("form file level does not match --level");
    in = trace_input_from_series(g, gf, c.lambda, c.mu, c.order, f.value("label", c.form_file));
  } else {
    const std::string eta = c.eta.empty() ? bundled_eta(c.level) : c.eta;
    in = trace_input_from_eta(EtaQuotientSpec::parse(eta, c.level), c.lambda, c.mu, c.order);
  }
  in.M = c.M;
  validate_trace_input(in);
  return in;
}

inline json theorem_json(const TheoremReport& rep, const TraceInput& in, long order) {
  json j;
  j["input"] = {{"level", rep.level}, {"g", rep.g_label}, {"l", rep.l},     {"lambda", rep.lambda},
                {"mu", rep.mu},       {"k", rep.k},         {"weight", rep.weight}, {"M", rep.M},
                {"order", order}};
  j["input_checks"] = checks_json(in.checks);
  json cond;
  cond["conductor"] = rep.conductor.conductor;
  json adm = json::array();
  for (long m : rep.conductor.admissible_M) adm.push_back(m);
  cond["admissible_M"] = adm;
  j["conductor"] = cond;
  j["trace"] = series_json(rep.trace);
  j["c_M"] = rational_json(rep.cM);
  json xs = json::array();
  for (std::size_t i = 0; i < rep.xi.size(); ++i) {
    const auto& x = rep.xi[i];
    json b;
    b["heckefield"] = heckefield_json(x.field());
    b["expansion_coefficient"] = nfe_json(rep.expansion.coefficients[i]);
    b["xi"] = nfe_json(x);
    b["xi_charpoly"] = poly_json(x.charpoly());
    b["xi_trace"] = rational_json(nf_trace(x));
    b["xi_norm"] = rational_json(nf_norm(x));
    xs.push_back(b);
  }
  j["orbits"] = xs;
  j["assertions"] = checks_json(rep.checks);
  j["passed"] = rep.passed();
  return j;
}

struct TheoremRun {
  TraceInput input;
  GaloisOrbitSet orbits;
  TheoremReport report;
};

inline TheoremRun run_theorem(const RunConfig& c) {
  TheoremRun t;
  t.input = build_input(c);
  t.orbits = newform_basis_level1(t.input.total_weight(), c.order);
  t.report = verify_theorem(t.input, t.orbits, c.order);
  return t;
}

inline CommandResult cmd_theorem(const RunConfig& c) {
  TheoremRun t = run_theorem(c);
  CommandResult r;
  r.report["command"] = "theorem";
  json body = theorem_json(t.report, t.input, c.order);
  for (auto it = body.begin(); it != body.end(); ++it) r.report[it.key()] = it.value();
  r.report["maeda"] = t.orbits.maeda();
  if (!t.report.passed()) r.exit_code = kExitViolation;
  return r;
}

// ---------------------------------------------------------------- corollary

inline std::optional<CurveQ> curve_of(const RunConfig& c) {
  if (!c.curve.empty() && !c.weierstrass.empty()) throw InputError("pass either --curve or --weierstrass, not both");
  if (!c.curve.empty()) return parse_curve(c.curve);
  if (!c.weierstrass.empty()) return parse_weierstrass(c.weierstrass);
  return std::nullopt;
}

inline json curve_json(const CurveQ& e) {
  return {{"g2", rational_json(e.g2)}, {"g3", rational_json(e.g3)}, {"discriminant", rational_json(e.disc)},
          {"j", rational_json(e.j)}};
}

inline CommandResult cmd_corollary(const RunConfig& c) {
  auto curve = curve_of(c);
  if (!curve) throw InputError("corollary needs --curve or --weierstrass");
  TheoremRun t = run_theorem(c);
  CommandResult r;
  r.report["command"] = "corollary";
  r.report["theorem_passed"] = t.report.passed();
  r.report["theorem_assertions"] = checks_json(t.report.checks);
  if (!t.report.passed()) {
    r.exit_code = kExitViolation;
    return r;
  }
  SpecReport s = verify_corollary(t.input, t.report, t.orbits, *curve, c.prec);
  json j;
  j["curve"] = curve_json(*curve);
  j["level"] = t.input.level;
  j["mu"] = t.input.mu;
  j["weight"] = t.report.weight;
  j["specialized_phi"] = poly_json(s.phi);
  j["condition_A"] = {{"irreducible", s.condition_a.irreducible}, {"certificate", s.condition_a.certificate}};
  j["condition_B"] = {{"holds", s.condition_b}, {"note", "base field Q; the intersection condition is automatic"}};
  j["maeda"] = s.maeda;
  j["g2g3_nonzero"] = s.g2g3_nonzero;
  if (!s.g2g3_nonzero) j["note"] = "g2*g3 = 0: CM curve, outside the preferred g2*g3 != 0 range; identity still checked";
  j["field_trace_interpretation"] = s.field_trace_interpretation;
  j["lhs"] = rational_json(s.lhs);
  j["rhs"] = rational_json(s.rhs);
  j["orbit_terms"] = rationals_json(s.orbit_terms);
  j["c_M"] = rational_json(t.report.cM);
  j["equal"] = s.equal;
  if (s.pair) {
    json n;
    n["precision"] = static_cast<long>(c.prec);
    n["tau"] = complex_json(s.pair->tau);
    n["omega2"] = complex_json(s.pair->omega2);
    n["j_residual"] = err_string(s.pair->j_residual);
    if (s.qn) {
      n["J_N_tau"] = bigcomplex_json(s.qn->j_level, 30);
      if (s.qn->degree)
        n["QN_degree"] = *s.qn->degree;
      else
        n["QN_degree"] = nullptr;
    }
    j["numeric"] = n;
  }
  j["checks"] = checks_json(s.checks);
  j["passed"] = s.passed();
  for (auto it = j.begin(); it != j.end(); ++it) r.report[it.key()] = it.value();
  if (!s.passed()) r.exit_code = kExitViolation;
  return r;
}

// ---------------------------------------------------------------- phi

inline CommandResult cmd_phi(const RunConfig& c) {
  auto curve = curve_of(c);
  TraceInput in = build_input(c);
  auto [h, hf] = eisenstein_product(in);
  TransformationPolynomial phi = symmetric_functions(coset_translates(h, hf, in.level, c.order), h.weight());
  CommandResult r;
  r.report["command"] = "phi";
  r.report["level"] = in.level;
  r.report["g"] = in.label;
  r.report["lambda"] = in.lambda;
  r.report["k"] = in.k();
  r.report["degree"] = phi.degree;
  json s = json::array();
  for (const auto& si : phi.s) s.push_back(series_json(si));
  r.report["s"] = s;
  if (curve) {
    UniPoly p = specialize_phi(phi, *curve);
    ConditionA a = condition_A(p);
    r.report["curve"] = curve_json(*curve);
    r.report["specialized_phi"] = poly_json(p);
    r.report["condition_A"] = {{"irreducible", a.irreducible}, {"certificate", a.certificate}};
  }
  return r;
}

// ---------------------------------------------------------------- oracle

/// q-expansion order for full precision at Im(tau) = y.
inline long eval_order(double y, Prec prec) {
  return static_cast<long>(std::ceil(1.5 * static_cast<double>(prec) * std::log(2.0) / (2 * M_PI * y))) + 40;
}

inline CommandResult cmd_oracle(long lambda, long level, const std::string& tau_text, long bound, Prec prec) {
  if (bound < 4) throw InputError("bound must be >= 4");
  Complex tau = Complex::parse(tau_text, prec);
  if (tau.im.sign() <= 0) throw InputError("tau must lie in the upper half-plane");
  RSeries closed = eisenstein_gamma0_infty(lambda, level, eval_order(tau.im.to_double(), prec));
  BigComplex ref = eval_qseries(closed, tau, prec);
  CommandResult r;
  r.report["command"] = "oracle";
  r.report["lambda"] = lambda;
  r.report["level"] = level;
  r.report["tau"] = complex_json(tau, 20);
  r.report["precision"] = static_cast<long>(prec);
  r.report["closed_form"] = bigcomplex_json(ref);
  json rows = json::array();
  double prev = 0.0;
  for (long b : {bound / 4, bound / 2, bound}) {
    BigComplex v = lattice_sum_eisenstein(lambda, level, tau, b, prec);
    double defect = abs(v.value - ref.value).to_double();
    json row;
    row["bound"] = b;
    row["lattice_sum"] = bigcomplex_json(v, 30);
    row["defect"] = err_string(defect);
    if (prev > 0.0 && defect > 0.0)
      row["exponent"] = err_string(std::log2(defect / prev));
    rows.push_back(row);
    prev = defect;
  }
  r.report["plain_sum"] = rows;
  r.report["model_exponent"] = 2 - lambda;
  if (lambda % 2 == 0 && (level == 1 || is_prime(level))) {
    BigComplex v = lattice_sum_eisenstein_completed(lambda, level, tau, prec);
    r.report["completed_sum"] = bigcomplex_json(v, 40);
    r.report["completed_defect"] = err_string(abs(v.value - ref.value).to_double());
  }
  return r;
}

// ---------------------------------------------------------------- form

/// Form file for an eta quotient: g and its Fricke image to input_order(N, T).
inline CommandResult cmd_form(long level, const std::string& eta_text, long order) {
  if (order < 1) throw InputError("order must be >= 1");
  const std::string eta = eta_text.empty() ? bundled_eta(level) : eta_text;
  EtaQuotientSpec spec = EtaQuotientSpec::parse(eta, level);
  const long n = input_order(level, order);
  CommandResult r;
  r.report["label"] = spec.to_string();
  r.report["g"] = series_json(eta_quotient(spec, n));
  r.report["g_fricke"] = series_json(eta_quotient(spec.fricke_image(), n) * spec.fricke_scalar());
  return r;
}

// ---------------------------------------------------------------- validate

inline CommandResult cmd_validate(const std::string& path, long n_max) {
  json f = read_json_file(path);
  RSeries s = series_from_json(f.contains("form") ? f.at("form") : f);
  ValidationReport v = validate_external_newform(s, s.level(), n_max);
  CommandResult r;
  r.report["command"] = "validate";
  r.report["level"] = s.level();
  r.report["weight"] = s.weight();
  r.report["n_max"] = n_max;
  r.report["trusted"] = v.trusted;
  r.report["checks"] = checks_json(v.checks);
  if (v.counterexample)
    r.report["counterexample"] = {v.counterexample->first, v.counterexample->second};
  else
    r.report["counterexample"] = nullptr;
  if (!v.trusted) r.exit_code = kExitInput;
  return r;
}

}  // namespace mtv
