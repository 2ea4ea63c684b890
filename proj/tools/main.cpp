// Command-line front end: summary report, curve export, certificate runs,
// witness and product-basis checks.

#include "locclab/asymptotic.hpp"
#include "locclab/discrim.hpp"
#include "locclab/io.hpp"
#include "locclab/oneway.hpp"
#include "locclab/twoway.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::uint64_t env_seed() {
  const char* s = std::getenv("LOCCLAB_SEED");
  if (!s || !*s) return 0;
  return std::strtoull(s, nullptr, 10);
}

std::string human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string machine(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_report(const std::string& json_out) {
  using namespace locclab;

  ErrorReport sep = helstrom_error(koashi_instance());
  std::vector<oneway::OneWayResult> extrema = oneway::enumerate_extrema();
  double oneway_err = 0.5;
  for (const auto& e : extrema)
    if (e.global_minimum) oneway_err = e.p_err;
  twoway::CurvePoint best = twoway::minimize_total_error(1e-12);

  double norm_oneway = error_to_norm(oneway_err);
  double norm_twoway = error_to_norm(best.p_err);
  double norm_sep = sep.norm_value;

  std::cout << "binary discrimination of |00> vs (|++>,|-->)/2, equal priors\n\n";
  std::cout << "  error probabilities\n";
  std::cout << "    global / separable : " << human(sep.p_err) << "\n";
  std::cout << "    one-way optimum    : " << human(oneway_err) << "\n";
  std::cout << "    two-way upper bound: " << human(best.p_err) << "  (at p = "
            << human(best.p) << ")\n\n";
  std::cout << "  distinguishability norms of M\n";
  std::cout << "    one-way   : " << human(norm_oneway) << "\n";
  std::cout << "    two-way >=: " << human(norm_twoway) << "\n";
  std::cout << "    SEP=global: " << human(norm_sep) << "\n\n";

  bool ordering = norm_oneway < norm_twoway && norm_twoway < norm_sep;
  std::cout << "  ordering one-way < two-way-bound < SEP = global : "
            << (ordering ? "pass" : "FAIL") << "\n";

  locclab::io::json j;
  j["sep_global_error"] = sep.p_err;
  j["oneway_error"] = oneway_err;
  j["twoway_bound_error"] = best.p_err;
  j["twoway_bound_p"] = best.p;
  j["norm_oneway"] = norm_oneway;
  j["norm_twoway_bound"] = norm_twoway;
  j["norm_sep_global"] = norm_sep;
  j["ordering_strict"] = ordering;
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) {
      std::cerr << "cannot write " << json_out << "\n";
      return kExitUsage;
    }
    out << j.dump(2) << "\n";
  } else {
    std::cout << "\n" << j.dump(2) << "\n";
  }
  return ordering ? kExitOk : kExitCheckFailed;
}

int cmd_twoway_curve(int steps, const std::string& out) {
  auto points = locclab::twoway::sample_curve(steps);
  locclab::twoway::write_curve_csv(out, points);
  std::cout << "wrote " << points.size() << " rows to " << out << "\n";
  return kExitOk;
}

int cmd_oneway(int grid) {
  using namespace locclab;
  auto extrema = oneway::enumerate_extrema();
  std::cout << "stationary points of the constrained one-way optimization\n";
  for (const auto& e : extrema)
    std::cout << "  " << e.extremum_label << " : p_err = " << machine(e.p_err)
              << (e.global_minimum ? "  (global minimum)" : "") << "\n";
  oneway::OneWayResult oracle = oneway::grid_oracle(grid, grid);
  double closed = 0.5;
  std::string label;
  for (const auto& e : extrema)
    if (e.global_minimum) {
      closed = e.p_err;
      label = e.extremum_label;
    }
  std::cout << "grid oracle (" << grid << "^2): p_err = " << machine(oracle.p_err)
            << ", label = " << oracle.extremum_label << "\n";
  std::cout << "discrepancy |closed-form - oracle| = " << machine(std::abs(closed - oracle.p_err))
            << "\n";
  return kExitOk;
}

int cmd_domino_check(std::vector<double> xs, int restarts, const std::string& out) {
  using namespace locclab;
  if (xs.empty()) xs = {0.6, 0.75, 0.9};
  asymptotic::NoGoCertificate cert;
  try {
    cert = asymptotic::domino_nogo_certificate(xs, restarts, env_seed());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << "stage (a): " << cert.product_states_in_supp_sigma.size()
            << " product states in supp(sigma)\n";
  for (const auto& stage : cert.forced_form_checks)
    std::cout << "stage (b) x = " << human(stage.x) << ": " << stage.converged << "/"
              << stage.restarts << " converged, " << stage.classified
              << " in the forced family (max distance " << human(stage.max_family_distance)
              << ")\n";
  std::cout << "stage (c): max overlap of |11> with forced supports = "
            << human(cert.max_uncovered_overlap) << "\n";
  std::cout << "conclusion: " << (cert.conclusion ? "certified" : "NOT certified");
  if (cert.inconclusive) std::cout << " (inconclusive)";
  std::cout << "\n" << cert.note << "\n";

  locclab::io::json j = locclab::io::certificate_to_json(cert);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return kExitUsage;
    }
    f << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  if (cert.inconclusive) return kExitInconclusive;
  return cert.conclusion ? kExitOk : kExitCheckFailed;
}

int cmd_product_basis(const std::string& input) {
  using namespace locclab;
  auto [kets, dims] = io::kets_from_json(io::load_json_file(input));
  io::json j;
  if (kets.size() == 2) {
    auto res = asymptotic::product_basis_2d(kets[0], kets[1], dims);
    j["kind"] = res.kind == asymptotic::SpanKind::TensorProductSubspace
                    ? "tensor-product-subspace"
                    : "finite";
    j["states"] = io::json::array();
    for (const auto& s : res.states) j["states"].push_back(io::vector_to_json(s.amplitudes()));
    j["orthogonal"] = res.orthogonal;
    j["residuals"] = res.residuals;
  } else {
    auto res = asymptotic::product_states_in_span(kets, dims);
    switch (res.kind) {
      case asymptotic::SpanKind::Finite: j["kind"] = "finite"; break;
      case asymptotic::SpanKind::TensorProductSubspace:
        j["kind"] = "tensor-product-subspace";
        break;
      case asymptotic::SpanKind::Continuum: j["kind"] = "continuum"; break;
    }
    j["states"] = io::json::array();
    for (const auto& s : res.states) j["states"].push_back(io::vector_to_json(s.amplitudes()));
    j["residuals"] = res.residuals;
    j["note"] = res.note;
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_theorem1_check(const std::string& witness_path, const std::string& instance_path) {
  using namespace locclab;
  BinaryInstance inst = io::instance_from_json(io::load_json_file(instance_path));
  asymptotic::TheoremOneWitness w =
      io::witness_from_json(io::load_json_file(witness_path), inst.rho().dims());
  asymptotic::WitnessReport report;
  try {
    report = asymptotic::check_theorem1_witness(w, inst.rho(), inst.sigma());
  } catch (const std::invalid_argument& e) {
    std::cerr << "witness rejected: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& c : report.conditions)
    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
              << "  residual = " << machine(c.residual) << "\n";
  std::cout << (report.pass ? "all conditions pass" : "witness fails") << "\n";
  std::cout << io::witness_report_to_json(report).dump(2) << "\n";
  return report.pass ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotic LOCC discrimination toolkit"};
  app.require_subcommand(1);

  std::string report_out;
  CLI::App* report = app.add_subcommand("report", "summary of all headline values");
  report->add_option("--out", report_out, "write the JSON report to this path");

  int steps = 200;
  std::string curve_out = "twoway_curve.csv";
  CLI::App* curve = app.add_subcommand("twoway-curve", "export the error curve as CSV");
  curve->add_option("--steps", steps, "number of intervals (steps+1 rows)")
      ->check(CLI::Range(2, 1000000));
  curve->add_option("--out", curve_out, "output CSV path");

  std::vector<double> xs;
  int restarts = 1000;
  std::string cert_out;
  CLI::App* domino = app.add_subcommand("domino-check", "run the domino no-go certificate");
  domino->add_option("--x", xs, "x samples in (1/2, 1)")->delimiter(',');
  domino->add_option("--restarts", restarts, "multi-start budget per x")
      ->check(CLI::Range(1, 1000000));
  domino->add_option("--out", cert_out, "write the certificate JSON to this path");

  int grid = 256;
  CLI::App* ow = app.add_subcommand("oneway", "one-way extrema and grid oracle");
  ow->add_option("--grid", grid, "grid resolution per axis")->check(CLI::Range(2, 100000));

  std::string pb_input;
  CLI::App* pb = app.add_subcommand("product-basis", "product states in a given span");
  pb->add_option("--input", pb_input, "JSON file: {dims, vectors}")->required();

  std::string witness_path, instance_path;
  CLI::App* th = app.add_subcommand("theorem1-check", "verify an asymptotic-LOCC witness");
  th->add_option("--witness", witness_path, "witness JSON file")->required();
  th->add_option("--instance", instance_path, "instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (report->parsed()) return cmd_report(report_out);
    if (curve->parsed()) return cmd_twoway_curve(steps, curve_out);
    if (domino->parsed()) return cmd_domino_check(xs, restarts, cert_out);
    if (ow->parsed()) return cmd_oneway(grid);
    if (pb->parsed()) return cmd_product_basis(pb_input);
    if (th->parsed()) return cmd_theorem1_check(witness_path, instance_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
