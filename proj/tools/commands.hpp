#pragma once

// Command implementations behind the `sphbounds` executable. Each command
// returns its JSON report and exit code; nothing here touches argv.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "sphbounds/io.hpp"
#include "sphbounds/sphbounds.hpp"

namespace sphbounds::cli {

using io::json;

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kCertificateFailure = 3,
  kContradictionFound = 4,
};

struct CommandResult {
  json report;
  int exit_code = kOk;
  std::vector<std::string> summary;  ///< human-readable lines
};

struct Manifest {
  std::string command;
  std::vector<std::string> inputs;
  json parameters = json::object();
  std::string output = "stdout";
  std::uint64_t seed = 0;

  [[nodiscard]] json to_json() const {
    return {{"command", command},   {"inputs", inputs}, {"parameters", parameters},
            {"outputs", output},    {"seed", seed},     {"tool_version", kToolVersion}};
  }
};

inline std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string file;
  std::vector<double> t_values;
  std::string csv_path;
  int samples = 2001;
  std::string output = "stdout";
};

/// Accepts a bare expansion or any certificate carrying "g".
inline GegenbauerExpansion load_expansion(const std::string& path) {
  const json j = io::read_file(path);
  if (j.is_object() && j.contains("g")) return io::expansion_from_json(j["g"]);
  return io::expansion_from_json(j);
}

inline CommandResult cmd_eval(const EvalArgs& args) {
  const GegenbauerExpansion g = load_expansion(args.file);
  Manifest manifest{"eval", {args.file}, {{"t", args.t_values}, {"csv", args.csv_path}, {"samples", args.samples}},
                    args.output};
  CommandResult result;
  json values = json::array();
  for (double t : args.t_values) {
    const double v = g(t);
    values.push_back({{"t", t}, {"value", v}});
    result.summary.push_back("g(" + fmt(t) + ") = " + fmt(v, 10));
  }
  if (!args.csv_path.empty()) {
    if (args.samples < 2) throw ParameterError("--samples must be >= 2");
    std::ofstream csv(args.csv_path);
    if (!csv) throw ValidationError("cannot write " + args.csv_path);
    csv.precision(17);
    csv << "t,value\n";
    for (int i = 0; i < args.samples; ++i) {
      const double t = i + 1 == args.samples ? 1.0 : -1.0 + 2.0 * i / (args.samples - 1);
      csv << t << ',' << g(t) << '\n';
    }
    result.summary.push_back("wrote " + std::to_string(args.samples) + " samples to " + args.csv_path);
  }
  result.report = {{"manifest", manifest.to_json()},
                   {"expansion", io::to_json(g)},
                   {"value_at_one", g.value_at_one()},
                   {"values", values}};
  return result;
}

// ---- code-stats ----------------------------------------------------------

struct CodeStatsArgs {
  std::string code;  ///< file path or builtin name
  int degree = 6;
  std::vector<Interval> intervals;
  double tol = kDefaultClusterTolerance;
  std::string output = "stdout";
};

inline SphericalCode load_code(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::code_from_json(io::read_file(spec));
  return make_builtin(spec);
}

inline CommandResult cmd_code_stats(const CodeStatsArgs& args) {
  const SphericalCode code = load_code(args.code);
  json intervals = json::array();
  for (const auto& s : args.intervals) intervals.push_back({s.lo, s.hi});
  Manifest manifest{"code-stats", {args.code}, {{"degree", args.degree}, {"interval", intervals}, {"tol", args.tol}},
                    args.output};
  const DistanceDistribution dist = distance_distribution(code, args.tol);
  CommandResult result;
  json moments = json::array();
  for (int k = 0; k <= args.degree; ++k) moments.push_back({{"k", k}, {"M_k", moment(code, k)}});
  json masses = json::array();
  for (const auto& s : args.intervals) {
    const double a = interval_mass(dist, s);
    masses.push_back({{"interval", {s.lo, s.hi}}, {"A", a}});
    result.summary.push_back("A([" + fmt(s.lo) + ", " + fmt(s.hi) + "]) = " + fmt(a));
  }
  result.summary.insert(result.summary.begin(),
                        "N = " + std::to_string(code.size()) + ", n = " + std::to_string(code.dimension()));
  for (const auto& e : dist.entries()) result.summary.push_back("A_{" + fmt(e.t) + "} = " + fmt(e.mass));
  result.report = {{"manifest", manifest.to_json()},
                   {"N", code.size()},
                   {"n", code.dimension()},
                   {"exact", code.has_exact_products()},
                   {"inner_products", dist.inner_products()},
                   {"distance_distribution", io::to_json(dist)},
                   {"moments", moments},
                   {"interval_masses", masses}};
  return result;
}

// ---- verify-cert ---------------------------------------------------------

struct VerifyArgs {
  std::string file;
  CheckMode mode = CheckMode::sampled;
  double grid_step = 1e-5;
  double grid_step_3d = 1e-3;
  double tol = 5e-3;
  double psd_tol = kDefaultPsdTolerance;
  std::string output = "stdout";
};

inline CommandResult cmd_verify(const VerifyArgs& args) {
  const json j = io::read_file(args.file);
  Manifest manifest{"verify-cert",
                    {args.file},
                    {{"mode", to_string(args.mode)},
                     {"grid_step", args.grid_step},
                     {"grid_step_3d", args.grid_step_3d},
                     {"tol", args.tol},
                     {"psd_tol", args.psd_tol}},
                    args.output};
  CommandResult result;
  json checks = json::array();
  bool all_pass = true;
  auto add_violation = [&](const ViolationReport& r) {
    json x = io::to_json(r);
    const bool pass = r.passes(args.tol);
    x["tolerance"] = args.tol;
    x["pass"] = pass;
    all_pass = all_pass && pass;
    result.summary.push_back(r.condition + ": worst " + fmt(r.worst_violation) + (pass ? " PASS" : " FAIL"));
    checks.push_back(std::move(x));
  };
  auto add_psd = [&](const TripleCertificate& F) {
    const CertificateReport rep = certificate_valid(F, args.psd_tol);
    json x = io::to_json(rep);
    x["condition"] = "psd";
    x["pass"] = rep.valid;
    all_pass = all_pass && rep.valid;
    for (const auto& e : rep.entries) {
      result.summary.push_back("psd " + e.label + ": min eigenvalue " + fmt(e.result.min_eigenvalue) +
                               (e.result.psd ? " PASS" : " FAIL"));
    }
    checks.push_back(std::move(x));
  };

  DomainSpec spec;
  spec.mode = args.mode;
  spec.grid_step = args.grid_step;
  spec.grid_step_3d = args.grid_step_3d;

  if (j.is_object() && j.contains("g")) {
    const DDCertificate cert = io::dd_from_json(j);
    spec.T = cert.T();
    if (cert.nonpositive_on) add_violation(check_sign(cert.g(), *cert.nonpositive_on, spec));
    if (!cert.is_scalar()) {
      const auto& full = cert.full();
      add_violation(check_thm31_cond1(full.h, full.h0, full.F, cert.g(), spec));
      add_violation(check_cond2(full.F, cert.g(), spec));
      if (full.F.is_matrix_form()) add_psd(full.F.with_F0(full.F0));
    }
    if (checks.empty()) throw SchemaError("certificate has nothing to verify (no 'nonpositive_on', no full data)");
  } else if (j.is_object() && (j.contains("H") || j.contains("terms"))) {
    add_psd(io::triple_from_json(j));
  } else {
    throw SchemaError("unknown certificate shape: expected a DD certificate ('g') or a triple certificate "
                      "('H' or 'terms')");
  }
  result.report = {{"manifest", manifest.to_json()}, {"pass", all_pass}, {"checks", checks}};
  result.exit_code = all_pass ? kOk : kCertificateFailure;
  return result;
}

// ---- bound ---------------------------------------------------------------

struct BoundArgs {
  std::string file;
  std::vector<long long> sizes;
  std::string output = "stdout";
};

inline CommandResult cmd_bound(const BoundArgs& args) {
  const DDCertificate cert = io::dd_from_json(io::read_file(args.file));
  if (args.sizes.empty()) throw ParameterError("bound needs at least one --N");
  Manifest manifest{"bound", {args.file}, {{"N", args.sizes}}, args.output};
  CommandResult result;
  const bool lp_applicable = cert.g().nonnegative_above_constant();
  json rows = json::array();
  for (long long N : args.sizes) {
    const double B = cor31_bound(cert, N);
    json row{{"N", N}, {"B", B}};
    std::string line = "N = " + std::to_string(N) + ": B = " + fmt(B);
    if (lp_applicable) {
      const double lp = lp_rg_lower(cert.g(), N);
      row["LP"] = lp;
      row["stronger"] = B > lp ? "SDP" : (lp > B ? "LP" : "equal");
      line += ", LP = " + fmt(lp) + ", stronger: " + row["stronger"].get<std::string>();
    } else {
      row["LP"] = nullptr;
      row["stronger"] = "SDP";
      row["lp_note"] = "LP bound not applicable: g has negative Gegenbauer coefficients above degree 0";
      line += ", LP not applicable";
    }
    rows.push_back(std::move(row));
    result.summary.push_back(line);
  }
  result.report = {{"manifest", manifest.to_json()},
                   {"M", cert.M()},
                   {"M_source", cert.is_scalar() ? (cert.m_source.empty() ? "supplied constant" : cert.m_source)
                                                 : "F(1,1,1) + 3 h(1) from the certificate"},
                   {"lp_applicable", lp_applicable},
                   {"bounds", rows}};
  return result;
}

// ---- kissing-check -------------------------------------------------------

struct KissingArgs {
  std::string file;
  double t0 = -std::sqrt(2.0) / 2.0;
  int mu = 4;
  long long N = 25;
  int starts = 200;
  std::uint64_t seed = 0;
  double margin = 1e-3;
  std::string output = "stdout";
};

inline CommandResult cmd_kissing(const KissingArgs& args) {
  const DDCertificate cert = io::dd_from_json(io::read_file(args.file));
  Manifest manifest{"kissing-check",
                    {args.file},
                    {{"t0", args.t0},
                     {"mu", args.mu},
                     {"N", args.N},
                     {"starts", args.starts},
                     {"margin", args.margin}},
                    args.output,
                    args.seed};
  KissingOptions kopts;
  kopts.margin = args.margin;
  const KissingReport rep =
      kissing_check(cert.g(), cert.M(), args.t0, args.mu, args.N, CapOptions{args.starts, args.seed}, kopts);
  CommandResult result;
  result.report = {{"manifest", manifest.to_json()}, {"report", io::to_json(rep)}};
  for (const auto& c : rep.per_m) result.summary.push_back("m = " + std::to_string(c.m) + ": " + fmt(c.value));
  result.summary.push_back("max " + fmt(rep.upper_estimate) + " at m = " + std::to_string(rep.argmax_m) +
                           ", B(" + std::to_string(rep.N) + ") = " + fmt(rep.bound) + " -> " +
                           to_string(rep.verdict));
  result.exit_code = rep.verdict == Verdict::contradiction ? kContradictionFound : kOk;
  return result;
}

}  // namespace sphbounds::cli
