#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "liespec/liespec.hpp"

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const std::string& flag) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": cannot parse '" + tok +
                                  "' as a number");
    }
  }
  if (vals.size() != count)
    throw std::invalid_argument(flag + ": expected " + std::to_string(count) +
                                " comma-separated numbers");
  return vals;
}

liespec::Metric resolve_metric(const std::string& milnor,
                               const std::string& berger,
                               const std::string& gram_path) {
  const int given = static_cast<int>(!milnor.empty()) +
                    static_cast<int>(!berger.empty()) +
                    static_cast<int>(!gram_path.empty());
  if (given != 1)
    throw std::invalid_argument(
        "give exactly one of --metric, --berger, --gram");
  if (!milnor.empty()) {
    const auto v = parse_numbers(milnor, 3, "--metric");
    return liespec::milnor_metric(v[0], v[1], v[2]);
  }
  if (!berger.empty()) {
    const auto v = parse_numbers(berger, 2, "--berger");
    return liespec::berger_metric(v[0], v[1]);
  }
  std::ifstream in(gram_path);
  if (!in)
    throw std::invalid_argument("--gram: cannot open file " + gram_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return liespec::metric_from_json_string(buf.str());
}

void add_metric_options(CLI::App* cmd, std::string& milnor,
                        std::string& berger, std::string& gram) {
  cmd->add_option("--metric", milnor, "Milnor parameters a1,a2,a3");
  cmd->add_option("--berger", berger,
                  "axisymmetric parameters alpha,beta "
                  "(equals --metric sqrt(beta),sqrt(alpha),sqrt(alpha))");
  cmd->add_option("--gram", gram,
                  "path to a JSON file {\"gram\": [[...],[...],[...]]}");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectral gap and diameter of left-invariant metrics on SU(2)"};
  app.require_subcommand(1);
  int exit_code = 0;

  // lambda1
  std::string l_milnor, l_berger, l_gram;
  bool l_so3 = false;
  int l_cap = 4096;
  CLI::App* lam = app.add_subcommand(
      "lambda1", "smallest positive Laplace eigenvalue of the metric");
  add_metric_options(lam, l_milnor, l_berger, l_gram);
  lam->add_flag("--so3", l_so3,
                "restrict to representations descending to the quotient by "
                "the center (even labels)");
  lam->add_option("--max-n-cap", l_cap, "truncation guard on the label scan")
      ->capture_default_str();
  lam->callback([&] {
    const liespec::Metric g = resolve_metric(l_milnor, l_berger, l_gram);
    liespec::Lambda1Options opts;
    opts.so3 = l_so3;
    opts.max_n_cap = l_cap;
    const liespec::SpectrumResult res = liespec::lambda1(g, opts);
    nlohmann::ordered_json out;
    out["lambda1"] = res.lambda1;
    out["witness_n"] = res.witness_n;
    out["truncation_n"] = res.truncation_n;
    std::cout << out.dump() << "\n";
  });

  // diameter
  std::string d_milnor, d_berger, d_gram;
  liespec::DiameterParams d_params;
  CLI::App* dia = app.add_subcommand(
      "diameter", "diameter estimate via geodesic shooting from the identity");
  add_metric_options(dia, d_milnor, d_berger, d_gram);
  dia->add_option("--dirs", d_params.n_directions, "number of geodesic shots")
      ->capture_default_str();
  dia->add_option("--probes", d_params.n_probes, "number of probe points")
      ->capture_default_str();
  dia->add_option("--step", d_params.arc_step,
                  "arc-length sample spacing (0 = 0.01*sqrt(lambda_max))");
  dia->add_option("--max-length", d_params.max_length,
                  "integrated length per shot (0 = 4*pi*sqrt(lambda_max))");
  dia->add_option("--match-radius", d_params.match_radius,
                  "probe matching radius (0 = measured covering radius)");
  dia->add_option("--seed", d_params.seed, "seed for the deterministic "
                                           "probe/direction layout")
      ->capture_default_str();
  dia->callback([&] {
    const liespec::Metric g = resolve_metric(d_milnor, d_berger, d_gram);
    const liespec::DiameterEstimate est = liespec::diameter(g, d_params);
    nlohmann::ordered_json out;
    out["value"] = est.value;
    out["n_directions"] = est.n_directions;
    out["n_probes"] = est.n_probes;
    out["arc_step"] = est.arc_step;
    out["match_radius"] = est.match_radius;
    out["max_length"] = est.max_length;
    out["seed"] = est.seed;
    std::cout << out.dump() << "\n";
  });

  // sweep
  double s_bmin = 0.01, s_bmax = 100.0;
  int s_steps = 25;
  bool s_log = true;
  std::string s_out, s_format = "csv";
  liespec::SweepOptions s_opts;
  CLI::App* swp = app.add_subcommand(
      "sweep", "one-parameter family sweep with per-metric checks");
  swp->add_option("--beta-min", s_bmin, "")->capture_default_str();
  swp->add_option("--beta-max", s_bmax, "")->capture_default_str();
  swp->add_option("--steps", s_steps, "grid size")->capture_default_str();
  swp->add_flag("--log,!--linear", s_log, "log-spaced grid (default)");
  swp->add_option("--out", s_out, "output path (default: stdout)");
  swp->add_option("--format", s_format, "csv or json")->capture_default_str();
  swp->add_option("--seed", s_opts.seed, "diameter-engine seed")
      ->capture_default_str();
  swp->add_option("--a2", s_opts.a2,
                  "second Milnor parameter (non-default values sweep a "
                  "general diagonal family)")
      ->capture_default_str();
  swp->add_option("--a3", s_opts.a3, "third Milnor parameter")
      ->capture_default_str();
  swp->add_option("--dirs", s_opts.n_directions,
                  "geodesic shots per grid point")
      ->capture_default_str();
  swp->add_option("--probes", s_opts.n_probes, "probe points per grid point")
      ->capture_default_str();
  swp->callback([&] {
    const liespec::ConjectureReport report =
        liespec::sweep_berger(s_bmin, s_bmax, s_steps, s_log, s_opts);
    const std::string text = liespec::emit_report(report, s_format);
    if (s_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(s_out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file " + s_out);
      out << text;
    }
  });

  // check
  std::string c_suites = "li,scaling,submersion,bracket";
  CLI::App* chk = app.add_subcommand(
      "check", "run named verification suites; nonzero exit on failure");
  chk->add_option("--suite", c_suites, "comma-separated subset of "
                                       "li,scaling,submersion,bracket")
      ->capture_default_str();
  chk->callback([&] {
    std::stringstream ss(c_suites);
    std::string name;
    bool all_ok = true;
    bool any = false;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      any = true;
      bool ok = false;
      if (name == "li") {
        ok = liespec::check_li(liespec::berger_record(1.0));
      } else if (name == "scaling") {
        const liespec::Metric round = liespec::milnor_metric(1.0, 1.0, 1.0);
        ok = liespec::check_scaling(round, 8.0) &&
             liespec::check_scaling(round, 0.25);
      } else if (name == "submersion") {
        std::vector<double> grid(25);
        for (int i = 0; i < 25; ++i)
          grid[i] = std::exp(std::log(0.01) +
                             i * (std::log(100.0) - std::log(0.01)) / 24.0);
        ok = liespec::check_submersion(grid);
      } else if (name == "bracket") {
        ok = liespec::check_bracket_generation();
      } else {
        throw std::invalid_argument("unknown suite '" + name + "'");
      }
      std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
      all_ok = all_ok && ok;
    }
    if (!any) throw std::invalid_argument("--suite: no suites given");
    if (!all_ok) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
