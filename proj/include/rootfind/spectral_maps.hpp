#ifndef ROOTFIND_SPECTRAL_MAPS_HPP
#define ROOTFIND_SPECTRAL_MAPS_HPP

#include <cstdint>
#include <utility>

#include "rootfind/eigenspace.hpp"
#include "rootfind/frobenius.hpp"

namespace rootfind {

// Knobs for the unit-circle mapping pipelines. v_param/w_param belong to the
// defining recipe of the shift heuristic but play no role in the computation;
// they are stored for completeness.
struct MapConfig {
  double tau = 1e8;          // squaring stop threshold (> 1)
  int h_plus = 20;           // max squarings (>= 1)
  bool use_one_norm = false; // false: infinity norm
  double a_scale = 1.0;
  double t_shift = 0.0;
  bool use_trace_shift = true;
  double v_param = 0.0;
  double w_param = 1.0;
  int power_sweeps = 1;      // extra power passes in the extraction step
};

// Shift heuristic: t = -Re(trace(M)), a = t/n, with a = 1 when the trace is
// degenerate (|t| < 1e-12 n).
std::pair<double, double> trace_shift(const DenseMatrix& m);

// Back-map M_k = i (P^k + I)(P^k - I)^{-1}; the argument is the k-th power.
FrobeniusElement mk_map(const FrobeniusElement& p_power);
DenseMatrix mk_map(const DenseMatrix& p_power);

// Q_k = M_k^2 + I.
DenseMatrix qk_map(const DenseMatrix& m_k);

// Moebius image T_k = P^k + P^-k.
FrobeniusElement tk_map(const FrobeniusElement& p, int k);
DenseMatrix tk_map(const DenseMatrix& p, int k);

FrobeniusElement element_pow(const FrobeniusElement& a, int k);
DenseMatrix dense_pow(const DenseMatrix& a, int k);

// Unit-circle squaring pipeline: Cayley map of the shifted-scaled companion
// matrix, repeated scaled squaring until the unscaled norm passes tau (or the
// squaring budget h_plus, doubled up to twice more on failure), back-maps
// M_k -> Q_k, and dominant-eigenspace extraction compressed against the
// companion matrix. Reported eigenvalues belong to C_p.
EigenspaceResult real_line_squaring(const Polynomial& p, const MapConfig& cfg, int r_plus,
                                    std::uint64_t seed);

// Variant that interrupts squaring with T_k = P^k + P^-k: real-root images
// land in [-2,2], nonreal ones outside the 8/3 disc, and repeated squaring of
// the normalized inverse makes the real-image eigenspace dominant.
EigenspaceResult mobius_isolation(const Polynomial& p, const MapConfig& cfg, int k, int r_plus,
                                  std::uint64_t seed);

enum class ShiftedPowerMode { largest, nearest };

// Repeated squaring of (x - s) in the algebra (mode largest), or of the
// reversed shifted polynomial's companion matrix (mode nearest, the
// inversion-free route to the eigenvalues closest to s).
EigenspaceResult shifted_power_pipeline(const Polynomial& p, cx s, ShiftedPowerMode mode,
                                        int h, int r_plus, std::uint64_t seed);

// A-priori squaring count estimate from the Gerschgorin discs of the dense
// Cayley image (diagnostic companion to the h_plus retry policy).
int suggested_squarings(const DenseMatrix& p_dense, double tau);

}  // namespace rootfind

#endif
