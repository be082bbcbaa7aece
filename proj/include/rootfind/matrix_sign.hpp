#ifndef ROOTFIND_MATRIX_SIGN_HPP
#define ROOTFIND_MATRIX_SIGN_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "rootfind/dense.hpp"
#include "rootfind/polynomial.hpp"

namespace rootfind {

enum class SignVariant {
  newton,
  newton_scaled,
  pade20,
  real_newton,
  real_newton_scaled,
  real_pade,
};

struct SignIterConfig {
  SignVariant variant = SignVariant::newton_scaled;
  double tol = 1e-10;      // relative step-size stop
  int max_iters = 64;
  double shift_range = -1.0;  // < 0: default 0.1 ||M||inf / n
  bool norm_control = false;  // real_pade stabilization transform
  std::uint64_t seed = 1;     // randomized singularity shifts
};

struct SignResult {
  DenseMatrix sign_matrix;
  int iters = 0;
  std::vector<double> history;  // relative step sizes
  int singular_shift_events = 0;
  bool converged = false;
};

// Newton iteration N <- (N + a N^-1)/2, a = 1 or ||N||/||N^-1|| (scaled).
SignResult sign_newton(const DenseMatrix& a, const SignIterConfig& cfg);

// Inversion-free [2/0] Pade iteration N <- (15 I - 10 N^2 + 3 N^4) N / 8;
// cubic inside the basin |lambda -+ 1| <= 1/2, Diverged outside.
SignResult sign_pade20(const DenseMatrix& a, const SignIterConfig& cfg);

// Real form N <- (N - N^-1)/2 for real eigen-solving; singular steps are
// retried with a random shift N + rho I (the events are counted).
SignResult sign_real_newton(const DenseMatrix& m, const SignIterConfig& cfg);

// Real form N <- -(3 N^5 + 10 N^3 + 15 N)/8; with norm_control set, the
// transform N <- N (N^2 + 2I)^-1 is applied when ||N||inf > 10.
SignResult sign_real_pade(const DenseMatrix& m, const SignIterConfig& cfg);

// 0.1 T_k +- iI: real-root images land inside D_0.2(+-i), inside the Pade
// basin, while nonreal images stay far outside for large k.
std::pair<DenseMatrix, DenseMatrix> basin_move(const Polynomial& p, int k);

struct Projectors {
  DenseMatrix p_minus;  // I - sign
  DenseMatrix p_plus;   // I + sign
  DenseMatrix p_axis;   // I - sign^2
  int count_minus = 0;  // left half plane
  int count_plus = 0;   // right half plane
  int count_axis = 0;
};

Projectors spectral_projectors(const SignResult& s);

// Eigenvalue counts of alpha*A - sigma*I left/right of the imaginary axis,
// from projector traces rounded with a 0.1 guard.
std::pair<int, int> count_in_halfplane(const DenseMatrix& a, cx alpha, cx sigma,
                                       const SignIterConfig& cfg);
std::pair<int, int> count_in_halfplane(const Polynomial& p, cx alpha, cx sigma,
                                       const SignIterConfig& cfg);

struct Box {
  cx center;
  double half_width = 0.0;
};

struct BoxCount {
  Box box;
  int count = 0;
};

// Shared sign matrices for the subdivision grid lines. A line whose sign
// iteration fails is nudged and the nudged matrix is cached, so every box
// sees the same effective geometry. Evaluations are budgeted.
class LineSignCache {
 public:
  LineSignCache(DenseMatrix a, SignIterConfig cfg, int budget);

  // axis 0: vertical line Re = offset; axis 1: horizontal line Im = offset.
  const DenseMatrix& sign_for(int axis, double offset);
  int evaluations() const { return evaluations_; }
  const DenseMatrix& matrix() const { return a_; }

 private:
  DenseMatrix a_;
  SignIterConfig cfg_;
  int budget_;
  int evaluations_ = 0;
  std::map<std::pair<int, double>, DenseMatrix> cache_;
};

// Eigenvalue count in an axis-aligned box via four half-plane projectors.
int count_in_box(LineSignCache& lines, const Box& box);

// Weyl-style recursive subdivision: boxes holding more than target_count
// eigenvalues split in four until the count bound or min_width is reached.
// Empty boxes are pruned. The returned leaves partition the root set.
std::vector<BoxCount> quadtree_isolate(const Polynomial& p, const Box& box, int target_count,
                                       double min_width, const SignIterConfig& cfg,
                                       LineSignCache* shared_lines = nullptr);

// Scalar models of the Newton / Pade sign recurrences: per-step distances to
// the limit sign, used to validate the convergence envelopes.
enum class ScalarSignVariant { newton, pade };
std::vector<double> scalar_convergence_check(cx lambda0, ScalarSignVariant variant, int iters);

}  // namespace rootfind

#endif
