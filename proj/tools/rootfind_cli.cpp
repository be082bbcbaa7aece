// Command-line driver: root approximation via companion-matrix iterations and
// the iteration-count benchmark harness.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootfind/eigenspace.hpp"
#include "rootfind/errors.hpp"
#include "rootfind/pipelines.hpp"
#include "rootfind/poly_io.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"
#include "rootfind/spectral_maps.hpp"

namespace {

using namespace rootfind;

Polynomial resolve_input(const std::string& file, int random_n, std::uint64_t seed) {
  if (!file.empty()) return load_polynomial(file);
  if (random_n >= 1) return random_polynomial(random_n, seed);
  throw RootfindError("provide a polynomial file or --random <degree>");
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

// Real roots through the unit-circle squaring or Moebius isolation maps, with
// the same refinement and reporting conventions as the Newton-Pade pipeline.
RootReport map_based_real_roots(const Polynomial& p, const std::string& method,
                                const MapConfig& map_cfg, double epsilon_real, bool refine,
                                std::uint64_t seed) {
  RootReport report;
  report.seed = seed;
  report.method = method;
  const int r_plus = std::min(p.degree(), 10);
  try {
    EigenspaceResult ext = (method == "squaring")
                               ? real_line_squaring(p, map_cfg, r_plus, seed)
                               : mobius_isolation(p, map_cfg, 8, r_plus, seed);
    report.subspace_dim = ext.basis.cols();
    RealPartition part = filter_real(ext.eigenvalues, NearRealFilter{epsilon_real});
    DenseMatrix companion = companion_matrix(p);
    Rng rng(Rng::derive(seed, 5));
    std::vector<cx> crude;
    for (double v : part.real_values) crude.push_back(cx(v, 0.0));
    for (cx v : part.near_real) crude.push_back(v);
    for (cx c : crude) {
      cx value = c;
      bool was_refined = false;
      if (refine) {
        std::vector<cx> v0(static_cast<std::size_t>(p.degree()));
        for (auto& z : v0) z = rng.gaussian_complex();
        try {
          RqiResult rq = rayleigh_quotient_iteration(companion, c, v0, 25);
          value = rq.lambda;
          was_refined = true;
        } catch (const RootfindError&) {
        }
      }
      if (std::abs(value.imag()) > std::max(1e-10, 1e-8 * std::abs(value)) && refine) continue;
      bool dup = false;
      for (const RootRecord& r : report.real_roots)
        if (std::abs(r.value - cx(value.real(), 0.0)) <= 1e-8 * (1.0 + std::abs(value))) dup = true;
      if (!dup)
        report.real_roots.push_back(
            {cx(value.real(), 0.0), std::abs(evaluate(p, cx(value.real(), 0.0))), was_refined});
    }
  } catch (const RootfindError& e) {
    report.errors.push_back({method, e.what()});
  }
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial root-finding via structured companion-matrix iterations"};
  app.require_subcommand(1);

  // roots real|complex
  auto* roots = app.add_subcommand("roots", "approximate roots of one polynomial");
  roots->require_subcommand(1);

  std::string poly_file;
  int random_n = 0;
  std::uint64_t seed = 1;
  int newton_steps = 5;
  double tol = 1e-6;
  bool refine = false;
  double epsilon_real = 1e-2;
  double tau = 1e8;
  int h_plus = 20;
  std::string variant = "newton_scaled";
  std::string method = "newton-pade";
  std::string records_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("polyfile", poly_file, "polynomial file (text format)");
    cmd->add_option("--random", random_n, "use a random polynomial of this degree");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--tol", tol, "iteration tolerance");
    cmd->add_flag("--refine", refine, "Rayleigh-quotient refinement");
    cmd->add_option("--records", records_path, "also write one CSV record per root");
  };

  auto* real_cmd = roots->add_subcommand("real", "real roots");
  add_common(real_cmd);
  real_cmd->add_option("--newton-steps", newton_steps, "Newton sign steps before the Pade phase");
  real_cmd->add_option("--epsilon-real", epsilon_real, "relative near-real acceptance band");
  real_cmd->add_option("--tau", tau, "squaring stop threshold (map methods)");
  real_cmd->add_option("--h-plus", h_plus, "max squarings (map methods)");
  real_cmd->add_option("--method", method, "newton-pade | squaring | mobius");

  auto* complex_cmd = roots->add_subcommand("complex", "all roots by quad-tree isolation");
  add_common(complex_cmd);
  complex_cmd->add_option("--variant", variant, "sign iteration: newton_scaled | newton | pade20");

  // bench
  auto* bench = app.add_subcommand("bench", "iteration-count experiments");
  std::string suite;
  std::string sizes_csv = "64";
  int trials = 100;
  std::uint64_t bench_seed = 1;
  std::string out_path;
  bench->add_option("suite", suite, "squaring | newton | newton-pade")->required();
  bench->add_option("--n", sizes_csv, "comma-separated degrees, e.g. 64,128,256");
  bench->add_option("--trials", trials, "instances per degree");
  bench->add_option("--seed", bench_seed, "master seed");
  bench->add_option("--out", out_path, "write CSV here (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) {
      Polynomial p = resolve_input(poly_file, random_n, seed);
      RootReport report;
      if (real_cmd->parsed()) {
        if (method == "newton-pade") {
          RealPipelineConfig cfg;
          cfg.newton_steps = newton_steps;
          cfg.epsilon_real = epsilon_real;
          cfg.tol = tol;
          report = real_roots_pipeline(p, cfg, refine, seed);
        } else if (method == "squaring" || method == "mobius") {
          MapConfig map_cfg;
          map_cfg.tau = tau;
          map_cfg.h_plus = h_plus;
          report = map_based_real_roots(p, method, map_cfg, epsilon_real, refine, seed);
        } else {
          std::cerr << "unknown --method " << method << "\n";
          return 2;
        }
      } else {
        ComplexPipelineConfig cfg;
        cfg.sign.tol = std::min(tol, 1e-10);
        if (variant == "pade20")
          cfg.sign.variant = SignVariant::pade20;
        else if (variant == "newton")
          cfg.sign.variant = SignVariant::newton;
        report = complex_roots_pipeline(p, std::nullopt, cfg, refine);
      }
      write_report_text(std::cout, p, report);
      if (!records_path.empty()) {
        std::ofstream f(records_path);
        write_report_records(f, report);
      }
      return report.errors.empty() ? 0 : 1;
    }

    // bench
    BenchSuite bs;
    if (suite == "squaring")
      bs = BenchSuite::squaring;
    else if (suite == "newton")
      bs = BenchSuite::newton;
    else if (suite == "newton-pade" || suite == "newton_pade")
      bs = BenchSuite::newton_pade;
    else {
      std::cerr << "unknown suite " << suite << "\n";
      return 2;
    }
    std::vector<RunStats> all;
    for (int n : parse_sizes(sizes_csv)) {
      std::vector<RunStats> s = benchmark(bs, n, trials, bench_seed);
      all.insert(all.end(), s.begin(), s.end());
    }
    if (out_path.empty()) {
      write_stats_csv(std::cout, all);
    } else {
      std::ofstream f(out_path);
      write_stats_csv(f, all);
      std::cout << "wrote " << out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
