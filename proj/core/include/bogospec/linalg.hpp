#pragma once

#include <functional>

#include "bogospec/types.hpp"

namespace bogospec {

using MatVec = std::function<Vec(const Vec&)>;

struct LanczosOptions {
  int max_basis = 600;     // total Krylov vectors
  double tol = 1e-11;      // residual tolerance, relative to (|theta|+1)
  unsigned seed = 12345;   // start-vector seed (deterministic)
};

struct EigenPairs {
  Vec values;   // ascending
  Mat vectors;  // orthonormal columns
};

/// k lowest eigenpairs of a symmetric operator given through its matvec.
/// Block Lanczos with full reorthogonalization; the block width exceeds k so
/// degenerate and near-degenerate levels resolve with their multiplicities.
/// warm_start columns, when given, seed the first block.
EigenPairs lanczos_lowest(const MatVec& apply, Index dim, int k,
                          const LanczosOptions& opts = {});
EigenPairs lanczos_lowest(const MatVec& apply, Index dim, int k, const Mat* warm_start,
                          const LanczosOptions& opts = {});

/// w = exp(t*A) v by scaling and repeated Taylor application.
/// Intended for sparse generators of moderate norm (skew or symmetric).
Vec expm_multiply(const SpMat& A, const Vec& v, double t = 1.0);

}  // namespace bogospec
