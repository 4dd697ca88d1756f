// sphbounds: evaluate expansions, code statistics, certificate checks, bounds
// and the cap-optimization kissing pipeline. Reports are JSON on stdout (or
// --out); --text prints a short human-readable summary instead.
//
// Exit codes: 0 ok, 2 invalid input, 3 certificate failure, 4 contradiction.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = sphbounds::cli;

namespace {

sphbounds::Interval parse_interval(const std::string& text) {
  std::istringstream is(text);
  double a = 0.0, b = 0.0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof()) {
    throw sphbounds::ParameterError("--interval expects a,b but got '" + text + "'");
  }
  if (a > b) throw sphbounds::ParameterError("--interval needs a <= b");
  return {a, b};
}

sphbounds::CheckMode parse_mode(const std::string& text) {
  if (text == "sampled") return sphbounds::CheckMode::sampled;
  if (text == "certified") return sphbounds::CheckMode::certified;
  throw sphbounds::ParameterError("--mode must be 'sampled' or 'certified'");
}

int emit(const cli::CommandResult& result, const std::string& out, bool text) {
  std::ostringstream os;
  if (text) {
    for (const auto& line : result.summary) os << line << '\n';
  } else {
    os << result.report.dump(2) << '\n';
  }
  if (out.empty() || out == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << '\n';
      return cli::kValidationFailure;
    }
    f << os.str();
  }
  return result.exit_code;
}

void error_report(const char* kind, const std::exception& e) {
  cli::json j{{"error", kind}, {"message", e.what()}, {"tool_version", cli::kToolVersion}};
  std::cerr << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two- and three-point bounds for spherical codes"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string out;
  bool text = false;
  app.add_option("--out", out, "write the report to a file instead of stdout");
  app.add_flag("--text", text, "print a human-readable summary instead of JSON");

  cli::EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a Gegenbauer expansion");
  eval_cmd->add_option("file", eval.file, "expansion or certificate JSON")->required();
  eval_cmd->add_option("-t", eval.t_values, "evaluation points")->delimiter(',');
  eval_cmd->add_option("--csv", eval.csv_path, "write uniform samples on [-1, 1] as CSV");
  eval_cmd->add_option("--samples", eval.samples, "number of CSV samples")->capture_default_str();

  cli::CodeStatsArgs stats;
  std::vector<std::string> interval_text;
  auto* stats_cmd = app.add_subcommand("code-stats", "distance distribution and moments of a code");
  stats_cmd->add_option("code", stats.code, "code JSON or builtin (24cell, simplexN, crossN)")->required();
  stats_cmd->add_option("--degree", stats.degree, "highest moment degree")->capture_default_str();
  stats_cmd->add_option("--interval", interval_text, "interval a,b for A(S); repeatable");
  stats_cmd->add_option("--tol", stats.tol, "inner-product clustering tolerance")->capture_default_str();

  cli::VerifyArgs verify;
  std::string mode_text = "sampled";
  auto* verify_cmd = app.add_subcommand("verify-cert", "check a certificate's side conditions");
  verify_cmd->add_option("file", verify.file, "certificate JSON")->required();
  verify_cmd->add_option("--mode", mode_text, "sampled or certified")->capture_default_str();
  verify_cmd->add_option("--grid-step", verify.grid_step, "1-D grid step")->capture_default_str();
  verify_cmd->add_option("--grid-step-3d", verify.grid_step_3d, "3-D grid step")->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "allowed violation")->capture_default_str();
  verify_cmd->add_option("--psd-tol", verify.psd_tol, "eigenvalue tolerance")->capture_default_str();

  cli::BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "distance-distribution bounds from a certificate");
  bound_cmd->add_option("file", bound.file, "DD certificate JSON")->required();
  bound_cmd->add_option("--N", bound.sizes, "code size; repeatable")->required()->delimiter(',');

  cli::KissingArgs kiss;
  auto* kiss_cmd = app.add_subcommand("kissing-check", "cap-optimization test of a kissing configuration size");
  kiss_cmd->add_option("file", kiss.file, "DD certificate JSON")->required();
  kiss_cmd->add_option("--t0", kiss.t0, "cap boundary")->capture_default_str();
  kiss_cmd->add_option("--mu", kiss.mu, "largest cap population")->capture_default_str();
  kiss_cmd->add_option("--N", kiss.N, "configuration size")->capture_default_str();
  kiss_cmd->add_option("--starts", kiss.starts, "multistart count per m")->capture_default_str();
  kiss_cmd->add_option("--seed", kiss.seed, "RNG seed")->capture_default_str();
  kiss_cmd->add_option("--margin", kiss.margin, "required gap below B(N)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kValidationFailure;
  }

  const std::string out_name = out.empty() ? "stdout" : out;
  try {
    cli::CommandResult result;
    if (*eval_cmd) {
      eval.output = out_name;
      result = cli::cmd_eval(eval);
    } else if (*stats_cmd) {
      for (const auto& s : interval_text) stats.intervals.push_back(parse_interval(s));
      stats.output = out_name;
      result = cli::cmd_code_stats(stats);
    } else if (*verify_cmd) {
      verify.mode = parse_mode(mode_text);
      verify.output = out_name;
      result = cli::cmd_verify(verify);
    } else if (*bound_cmd) {
      bound.output = out_name;
      result = cli::cmd_bound(bound);
    } else {
      kiss.output = out_name;
      result = cli::cmd_kissing(kiss);
    }
    return emit(result, out, text);
  } catch (const sphbounds::PreconditionError& e) {
    error_report("precondition", e);
    return cli::kCertificateFailure;
  } catch (const sphbounds::ValidationError& e) {
    error_report("validation", e);
    return cli::kValidationFailure;
  } catch (const std::invalid_argument& e) {
    error_report("parameter", e);
    return cli::kValidationFailure;
  } catch (const std::domain_error& e) {
    error_report("domain", e);
    return cli::kValidationFailure;
  } catch (const std::logic_error& e) {
    error_report("capability", e);
    return cli::kValidationFailure;
  } catch (const std::exception& e) {
    error_report("runtime", e);
    return 1;
  }
}
