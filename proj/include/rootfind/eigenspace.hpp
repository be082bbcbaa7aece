#ifndef ROOTFIND_EIGENSPACE_HPP
#define ROOTFIND_EIGENSPACE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rootfind/dense.hpp"
#include "rootfind/frobenius.hpp"

namespace rootfind {

// Orthonormal basis of an (approximately) invariant subspace together with
// its compressed block L = U^H M U and the block eigenvalues.
struct EigenspaceResult {
  DenseMatrix basis;            // n x r, orthonormal columns
  DenseMatrix block;            // r x r
  std::vector<cx> eigenvalues;  // eigenvalues of block
  double residual;              // ||M U - U L||_inf / ||M||_inf
};

struct NearRealFilter {
  double epsilon = 1e-6;  // relative imaginary tolerance
};

struct RealPartition {
  std::vector<double> real_values;
  std::vector<cx> near_real;
  std::vector<cx> rest;
};

// Orthonormal basis for the strongly dominant eigenspace of W: one power pass
// W*G against a random (r_plus+1)-column multiplier, rank-revealing QR, and a
// cut at the first >= 1e3 decay of consecutive R-diagonal entries within the
// first r_plus positions. Throws NoDominance when no such gap shows.
// power_sweeps > 1 re-orthonormalizes W*basis for sharper subspaces.
DenseMatrix dominant_eigenspace(const DenseMatrix& w, int r_plus, std::uint64_t seed,
                                int power_sweeps = 1);
// Same, with a Gaussian Toeplitz multiplier for structured operands.
DenseMatrix dominant_eigenspace(const FrobeniusElement& w, int r_plus, std::uint64_t seed,
                                int power_sweeps = 1);
// Operator form for callers that can apply W to a block cheaper than forming it.
DenseMatrix dominant_eigenspace_op(const std::function<DenseMatrix(const DenseMatrix&)>& apply,
                                   int n, int r_plus, std::uint64_t seed, int power_sweeps = 1);

// Extraction with the rank-revealing diagnostics: the R diagonal of the
// sampled product tracks the image magnitudes, so tail/head measures how far
// the dominated images have decayed.
struct DominantCut {
  DenseMatrix basis;
  int cut = 0;
  double head = 0.0;       // |r_11|
  double last_kept = 0.0;  // |r_{cut,cut}|, the weakest accepted direction
  double tail = 0.0;       // |r_{cut+1,cut+1}|, 0 when past the sampled columns
};
DominantCut dominant_eigenspace_diag(const std::function<DenseMatrix(const DenseMatrix&)>& apply,
                                     int n, int r_plus, std::uint64_t seed,
                                     int power_sweeps = 1);

EigenspaceResult compress(const DenseMatrix& m, const DenseMatrix& basis);

// Inverse orthogonal iteration for the strongly dominated eigenspace.
DenseMatrix dominated_eigenspace(const DenseMatrix& w, int r_plus, int iters,
                                 std::uint64_t seed);

struct RqiResult {
  cx lambda;
  std::vector<cx> v;
  int iters;
  std::vector<double> residuals;  // ||M v - lambda v|| after each iteration
};

// Shifted inverse iteration with Rayleigh-quotient shift updates; near-singular
// solves are expected and handled by pivot flooring.
RqiResult rayleigh_quotient_iteration(const DenseMatrix& m, cx lambda0,
                                      std::vector<cx> v0, int max_iters);

// Three-way partition of eigenvalues into real / nearly real / rest.
RealPartition filter_real(const std::vector<cx>& values, const NearRealFilter& f);

}  // namespace rootfind

#endif
