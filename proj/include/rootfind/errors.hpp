#ifndef ROOTFIND_ERRORS_HPP
#define ROOTFIND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rootfind {

struct RootfindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : RootfindError {
  using RootfindError::RootfindError;
};
struct SingularElement : RootfindError {
  using RootfindError::RootfindError;
};
struct ModulusMismatch : RootfindError {
  using RootfindError::RootfindError;
};
struct DimensionMismatch : RootfindError {
  using RootfindError::RootfindError;
};
struct RankDeficient : RootfindError {
  using RootfindError::RootfindError;
};
struct NoConvergence : RootfindError {
  using RootfindError::RootfindError;
};
struct NoDominance : RootfindError {
  using RootfindError::RootfindError;
};
struct Diverged : RootfindError {
  using RootfindError::RootfindError;
};
struct AmbiguousCount : RootfindError {
  using RootfindError::RootfindError;
};
struct LargeResidual : RootfindError {
  using RootfindError::RootfindError;
};
struct ZeroConstantTerm : RootfindError {
  using RootfindError::RootfindError;
};
struct Overflow : RootfindError {
  using RootfindError::RootfindError;
};
struct BudgetExceeded : RootfindError {
  using RootfindError::RootfindError;
};

}  // namespace rootfind

#endif
