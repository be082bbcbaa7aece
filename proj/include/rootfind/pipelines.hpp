#ifndef ROOTFIND_PIPELINES_HPP
#define ROOTFIND_PIPELINES_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rootfind/matrix_sign.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/spectral_maps.hpp"

namespace rootfind {

struct RootRecord {
  cx value;
  double residual = 0.0;  // |p(value)|
  bool refined = false;
};

struct PhaseError {
  std::string phase;
  std::string message;
};

struct RootReport {
  std::uint64_t seed = 0;
  std::string method;
  std::vector<RootRecord> real_roots;
  std::vector<RootRecord> complex_roots;
  int newton_steps = 0;
  int pade_steps = 0;
  int squarings = 0;
  int subspace_dim = 0;
  int singular_shift_events = 0;
  int refine_iterations = 0;
  double recovery_pct = -1.0;  // vs the scan oracle; -1 when not computed
  std::vector<PhaseError> errors;
};

struct RunStats {
  std::string suite;
  int n = 0;
  std::string metric;
  std::vector<double> samples;
  double min = 0.0, max = 0.0, mean = 0.0, std_dev = 0.0;  // population std
  int failures = 0;

  static RunStats from_samples(std::string suite, int n, std::string metric,
                               std::vector<double> samples, int failures);
};

// Independent scan oracle: sign changes on a 10^4 n grid over the Cauchy bound
// interval, bisected to 1e-12, cross-checked against the dense companion
// eigensolve for degree <= 64.
std::vector<double> oracle_real_roots(const Polynomial& p);

struct RealPipelineConfig {
  int newton_steps = 5;
  int max_pade_steps = 16;
  int r_plus = 10;
  int power_sweeps = 1;
  double epsilon_real = 1e-2;  // capture band for near-real candidates
  bool norm_control = true;    // stabilize the Pade phase
  double tol = 1e-6;
  double shift_range = -1.0;
};

// Real-root pipeline: Newton sign steps, Pade steps with per-step
// dominant-eigenspace extraction (candidates accumulate across steps),
// Rayleigh-quotient refinement, strict re-filtering and residual checks.
// Phase failures are recorded in the report, not thrown.
RootReport real_roots_pipeline(const Polynomial& p, const RealPipelineConfig& cfg, bool refine,
                               std::uint64_t seed);

// Repeated structured squaring of (x - s); reports the squarings needed for
// a dominance gap and the recovered dominant eigenvalues. s is drawn
// uniformly from [-1, 1] when not provided.
RootReport squaring_pipeline(const Polynomial& p, std::optional<double> s, const MapConfig& cfg,
                             int r_plus, std::uint64_t seed);

struct ComplexPipelineConfig {
  SignIterConfig sign;
  int target_count = 2;
  double min_width = 1e-6;
  int rq_iters = 25;
};

// Quad-tree complex pipeline: isolate roots in boxes, extract each box's
// eigenvalues through its projector basis, refine optionally.
RootReport complex_roots_pipeline(const Polynomial& p, std::optional<Box> box,
                                  const ComplexPipelineConfig& cfg, bool refine);

enum class BenchSuite { squaring, newton, newton_pade };

// Iteration-count experiment harness; deterministic per (suite, n, trials,
// seed). Failed trials are excluded from the samples and counted.
std::vector<RunStats> benchmark(BenchSuite suite, int n, int trials, std::uint64_t seed);

void write_stats_csv(std::ostream& os, const std::vector<RunStats>& stats);
void write_report_text(std::ostream& os, const Polynomial& p, const RootReport& report);
void write_report_records(std::ostream& os, const RootReport& report);

}  // namespace rootfind

#endif
