#pragma once

// JSON serialization for series, number-field data, numerics and reports.
// Key order is fixed (ordered_json) so reports are byte-stable.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtv/spaces.hpp"

namespace mtv {

using json = nlohmann::ordered_json;

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational string, got " + j.dump());
}

inline json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

inline json poly_json(const UniPoly& p) { return rationals_json(p.coeffs()); }

/// Form file series: rational coefficients of q^{m/e}, m = 0..e*T.
inline json series_json(const RSeries& f) {
  json j;
  j["weight"] = f.weight();
  j["level"] = f.level();
  j["character"] = f.character().to_string();
  j["qdenom"] = f.qdenom();
  j["trunc"] = f.trunc();
  j["coeffs"] = rationals_json(f.coeffs());
  return j;
}

inline RSeries series_from_json(const json& j) {
  if (!j.is_object()) throw InputError("series must be a JSON object");
  for (const char* key : {"weight", "level", "trunc", "coeffs"})
    if (!j.contains(key)) throw InputError(std::string("series is missing '") + key + "'");
  const long e = j.value("qdenom", 1L);
  const long t = j.at("trunc").get<long>();
  if (e < 1 || t < 0) throw InputError("series needs qdenom >= 1 and trunc >= 0");
  std::vector<Rational> c;
  for (const auto& v : j.at("coeffs")) c.push_back(rational_from_json(v));
  if (static_cast<long>(c.size()) != e * t + 1)
    throw InputError("series has " + std::to_string(c.size()) + " coefficients, expected " + std::to_string(e * t + 1));
  FormMeta meta{j.at("weight").get<int>(), j.at("level").get<long>(),
                Character::parse(j.value("character", std::string("trivial")))};
  if (meta.level < 1) throw InputError("series level must be positive");
  return RSeries(std::move(c), t, static_cast<int>(e), meta);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline json nfe_json(const NumberFieldElem& a) { return rationals_json(a.coords()); }

/// Hecke field block of a newform.
inline json heckefield_json(const FieldPtr& field) {
  json j;
  j["degree"] = field->degree();
  j["modulus"] = poly_json(field->modulus());
  return j;
}

inline json nf_series_json(const QSeries<NumberFieldElem>& f, long upto) {
  json a = json::array();
  for (long n = 0; n <= std::min(upto, f.trunc()); ++n) a.push_back(nfe_json(f.coeff(n)));
  return a;
}

/// Decimal with `digits` significant digits, deterministic.
inline std::string real_string(const Real& x, int digits = 40) {
  if (x.is_zero()) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, x.raw());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

inline std::string err_string(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", e);
  return buf;
}

inline json complex_json(const Complex& z, int digits = 40) {
  json j;
  j["re"] = real_string(z.re, digits);
  j["im"] = real_string(z.im, digits);
  return j;
}

inline json bigcomplex_json(const BigComplex& z, int digits = 40) {
  json j = complex_json(z.value, digits);
  j["err"] = err_string(z.err);
  return j;
}

inline json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    json j;
    j["name"] = c.name;
    j["ok"] = c.ok;
    if (!c.detail.empty()) j["detail"] = c.detail;
    a.push_back(j);
  }
  return a;
}

/// "key.sub[0]: value" lines.
inline void flatten_text(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    bool scalar = true;
    for (const auto& v : j) scalar = scalar && !v.is_structured();
    if (scalar) {
      out << prefix << ": ";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string render(const json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  if (format == "text") {
    std::ostringstream out;
    flatten_text(j, "", out);
    return out.str();
  }
  throw InputError("unknown format '" + format + "'");
}

}  // namespace mtv
