#pragma once

// JSON formats.
//
//   expansion    {"n": 4, "coeffs": [c0, c1, ...]}                  ascending degree
//   code         {"n": 4, "points": [[x0, x1, ...], ...]}           unit vectors (1e-9)
//   matrix cert  {"n": 4, "d": 3, "F0": 0.0, "H": [H0, H1, ...]}    H[k] is (d+1-k)^2
//   explicit     {"terms": [{"i":1,"j":0,"k":0,"a":1.0}, ...], "F0": 0.0}
//                F is the average over variable permutations of sum a t^i u^j v^k
//   DD cert      {"g": expansion, "T": [a, b], "M": real}
//             or {"g": expansion, "T": [a, b], "h": expansion, "h0": real,
//                 "F": matrix or explicit cert, "F0": real}
//                optional: "nonpositive_on": [a, b], "M_source": string
//
// Distance distributions use the ordered-pair convention: A_t is the number
// of ordered pairs (x, y), x != y, with x.y = t, divided by N.

#include <Eigen/Dense>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sphbounds/bounds.hpp"
#include "sphbounds/capopt.hpp"
#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/threepoint.hpp"
#include "sphbounds/verify.hpp"

namespace sphbounds::io {

using json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors are reported with line and column.
inline json parse_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": JSON parse error: " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

namespace detail {

template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": field '" + key + "' has the wrong type (" + e.what() + ")");
  }
}

inline Interval interval(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(std::string(what) + ": expected an interval [a, b]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline GegenbauerExpansion expansion_from_json(const json& j) {
  return {detail::field<int>(j, "n", "expansion"), detail::field<std::vector<double>>(j, "coeffs", "expansion")};
}

inline json to_json(const GegenbauerExpansion& e) {
  return {{"n", e.dimension()}, {"coeffs", std::vector<double>(e.coeffs().begin(), e.coeffs().end())}};
}

inline SphericalCode code_from_json(const json& j) {
  return {detail::field<int>(j, "n", "code"), detail::field<std::vector<std::vector<double>>>(j, "points", "code")};
}

inline TripleCertificate triple_from_json(const json& j) {
  if (j.is_object() && j.contains("H")) {
    const int n = detail::field<int>(j, "n", "matrix certificate");
    const int d = detail::field<int>(j, "d", "matrix certificate");
    const double F0 = j.contains("F0") ? detail::field<double>(j, "F0", "matrix certificate") : 0.0;
    const auto raw = detail::field<std::vector<std::vector<std::vector<double>>>>(j, "H", "matrix certificate");
    std::vector<Eigen::MatrixXd> H;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const auto& rows = raw[k];
      Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw SchemaError("H[" + std::to_string(k) + "] is not square");
        for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
      }
      H.push_back(std::move(m));
    }
    return TripleCertificate::matrix_form(n, d, std::move(H), F0);
  }
  if (j.is_object() && j.contains("terms")) {
    if (!j["terms"].is_array()) throw SchemaError("explicit certificate: 'terms' must be an array");
    std::vector<MonomialTerm> terms;
    for (const auto& t : j["terms"]) {
      terms.push_back({detail::field<int>(t, "i", "term"), detail::field<int>(t, "j", "term"),
                       detail::field<int>(t, "k", "term"), detail::field<double>(t, "a", "term")});
    }
    const double F0 = j.contains("F0") ? detail::field<double>(j, "F0", "explicit certificate") : 0.0;
    return TripleCertificate::explicit_form(terms, F0);
  }
  throw SchemaError("triple certificate needs either 'H' (matrix form) or 'terms' (explicit form)");
}

inline json to_json(const TripleCertificate& F) {
  if (F.is_matrix_form()) {
    const auto& mf = F.matrix();
    json H = json::array();
    for (const auto& m : mf.H) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row(m.cols());
        for (Eigen::Index c = 0; c < m.cols(); ++c) row[c] = m(r, c);
        rows.push_back(row);
      }
      H.push_back(rows);
    }
    return {{"n", mf.n}, {"d", mf.d}, {"F0", F.F0()}, {"H", H}};
  }
  json terms = json::array();
  for (const auto& [e, c] : F.expanded().terms()) terms.push_back({{"i", e[0]}, {"j", e[1]}, {"k", e[2]}, {"a", c}});
  return {{"terms", terms}, {"F0", F.F0()}};
}

inline DDCertificate dd_from_json(const json& j) {
  if (!j.is_object() || !j.contains("g")) throw SchemaError("DD certificate: missing field 'g'");
  GegenbauerExpansion g = expansion_from_json(j["g"]);
  const Interval T = j.contains("T") ? detail::interval(j["T"], "DD certificate 'T'") : Interval{-1.0, 0.5};
  std::variant<ScalarM, FullDD> data = [&]() -> std::variant<ScalarM, FullDD> {
    if (j.contains("M")) return ScalarM{detail::field<double>(j, "M", "DD certificate")};
    if (j.contains("h") && j.contains("F")) {
      FullDD full{expansion_from_json(j["h"]),
                  j.contains("h0") ? detail::field<double>(j, "h0", "DD certificate") : 0.0,
                  triple_from_json(j["F"]), 0.0};
      full.F0 = j.contains("F0") ? detail::field<double>(j, "F0", "DD certificate") : full.F.F0();
      return full;
    }
    throw SchemaError("DD certificate needs either 'M' or both 'h' and 'F'");
  }();
  DDCertificate cert(std::move(g), T, std::move(data));
  if (j.contains("nonpositive_on")) cert.nonpositive_on = detail::interval(j["nonpositive_on"], "nonpositive_on");
  if (j.contains("M_source")) cert.m_source = detail::field<std::string>(j, "M_source", "DD certificate");
  return cert;
}

// ---- reports -------------------------------------------------------------

inline json to_json(const ViolationReport& r) {
  return {{"condition", r.condition},
          {"mode", to_string(r.mode)},
          {"worst_violation", r.worst_violation},
          {"location", r.location},
          {"grid_step", r.grid_step},
          {"certified", r.certified},
          {"sampled_max", r.sampled_max},
          {"grid_max", r.grid_max},
          {"lipschitz_pad", r.lipschitz_pad},
          {"points_evaluated", r.points_evaluated}};
}

inline json to_json(const PsdResult& r) {
  json j{{"psd", r.psd}, {"min_eigenvalue", r.min_eigenvalue}, {"eigenvalues", r.eigenvalues}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

inline json to_json(const CertificateReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x = to_json(e.result);
    x["matrix"] = e.label;
    entries.push_back(std::move(x));
  }
  return {{"valid", r.valid}, {"matrices", entries}};
}

inline json to_json(const InequalityReport& r) {
  return {{"inequality", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"holds", r.holds}};
}

inline json to_json(const TripleSum& s) {
  return {{"total", s.total}, {"S1", s.s1}, {"S2", s.s2}, {"S3", s.s3}};
}

inline json to_json(const DistanceDistribution& d) {
  json entries = json::array();
  for (const auto& e : d.entries()) {
    json x{{"t", e.t}, {"A_t", e.mass}, {"ordered_pairs", e.pair_count}};
    if (e.exact) x["t_exact"] = std::to_string(e.exact->num) + "/" + std::to_string(e.exact->den);
    entries.push_back(std::move(x));
  }
  return {{"N", d.code_size()}, {"total_mass", d.total_mass()}, {"entries", entries}};
}

inline json to_json(const CapResult& r) {
  return {{"m", r.m}, {"value", r.value}, {"best_start", r.best_start}, {"configuration", r.configuration}};
}

inline json to_json(const KissingReport& r) {
  json per_m = json::array();
  for (const auto& c : r.per_m) per_m.push_back(to_json(c));
  return {{"verdict", to_string(r.verdict)},
          {"N", r.N},
          {"M", r.M},
          {"bound_B", r.bound},
          {"upper_estimate", r.upper_estimate},
          {"argmax_m", r.argmax_m},
          {"margin", r.margin},
          {"heuristic", true},
          {"caveat", r.caveat},
          {"sign_check", to_json(r.sign_check)},
          {"sign_tolerance", r.sign_tolerance},
          {"cap_maxima", per_m}};
}

}  // namespace sphbounds::io
