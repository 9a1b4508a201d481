#include "bogospec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace bogospec {

namespace {

void fill_random(Mat& Q, std::mt19937& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Index c = 0; c < Q.cols(); ++c)
    for (Index r = 0; r < Q.rows(); ++r) Q(r, c) = dist(gen);
}

void project_out(Eigen::Ref<Mat> W, const Eigen::Ref<const Mat>& basis) {
  if (basis.cols() == 0) return;
  W -= basis * (basis.transpose() * W);
  W -= basis * (basis.transpose() * W);
}

/// MGS factorization W = Q R (R upper triangular). Rank-deficient columns are
/// replaced by random vectors orthogonal to `prior` and get R(c,c) = 0.
void block_qr(Mat& W, Mat& R, const Eigen::Ref<const Mat>& prior, std::mt19937& gen,
              double breakdown_tol) {
  const Index b = W.cols();
  R = Mat::Zero(b, b);
  for (Index c = 0; c < b; ++c) {
    for (Index r = 0; r < c; ++r) {
      R(r, c) = W.col(r).dot(W.col(c));
      W.col(c) -= R(r, c) * W.col(r);
    }
    double nrm = W.col(c).norm();
    if (nrm < breakdown_tol) {
      // invariant subspace hit: restart this direction randomly
      Mat fresh(W.rows(), 1);
      fill_random(fresh, gen);
      project_out(fresh, prior);
      for (Index r = 0; r < c; ++r) fresh.col(0) -= W.col(r).dot(fresh.col(0)) * W.col(r);
      W.col(c) = fresh.col(0) / fresh.col(0).norm();
      R(c, c) = 0.0;
    } else {
      W.col(c) /= nrm;
      R(c, c) = nrm;
    }
  }
}

/// Block Lanczos with full reorthogonalization. The block width (>= k, plus
/// slack) resolves degenerate and quasi-degenerate clusters that defeat
/// single-vector iteration.
bool block_lanczos(const MatVec& apply, Index dim, int k, const LanczosOptions& opts,
                   const Mat* warm, EigenPairs& out) {
  const Index b = std::min<Index>(dim, std::max<Index>(4, (k + 1) / 2));
  const Index max_blocks = std::max<Index>(1, std::min<Index>(dim, opts.max_basis) / b);
  std::mt19937 gen(opts.seed);

  Mat V(dim, b * max_blocks);
  Mat T = Mat::Zero(b * max_blocks, b * max_blocks);

  Mat Q(dim, b);
  fill_random(Q, gen);
  if (warm != nullptr) {
    const Index wc = std::min<Index>(warm->cols(), b);
    Q.leftCols(wc) = warm->leftCols(wc);
  }
  {
    Mat R;
    block_qr(Q, R, Mat(dim, 0), gen, 1e-12);
  }
  V.leftCols(b) = Q;

  Mat Bprev;
  double op_scale = 1.0;

  for (Index j = 0; j < max_blocks; ++j) {
    auto Qj = V.middleCols(j * b, b);
    Mat W(dim, b);
    for (Index c = 0; c < b; ++c) W.col(c) = apply(Qj.col(c));

    Mat Aj = Qj.transpose() * W;
    Aj = 0.5 * (Aj + Aj.transpose()).eval();
    T.block(j * b, j * b, b, b) = Aj;
    op_scale = std::max(op_scale, Aj.cwiseAbs().maxCoeff());

    W -= Qj * Aj;
    if (j > 0) W -= V.middleCols((j - 1) * b, b) * Bprev.transpose();
    project_out(W, V.leftCols((j + 1) * b));

    Mat R;
    block_qr(W, R, V.leftCols((j + 1) * b), gen, 1e-13 * op_scale);

    // Ritz pairs of the block-tridiagonal section
    const Index m = (j + 1) * b;
    Eigen::SelfAdjointEigenSolver<Mat> eig(T.topLeftCorner(m, m));
    const int keep = static_cast<int>(std::min<Index>(k, m));
    bool converged = (keep == k);
    for (int i = 0; i < keep && converged; ++i) {
      double resid = (R * eig.eigenvectors().col(i).tail(b)).norm();
      converged = resid <= opts.tol * (std::abs(eig.eigenvalues()(i)) + 1.0);
    }
    const bool last = (j + 1 == max_blocks);
    if (converged || last) {
      out.values = eig.eigenvalues().head(keep);
      out.vectors = V.leftCols(m) * eig.eigenvectors().leftCols(keep);
      // columns stay orthonormal since V is; normalize against drift
      for (int i = 0; i < keep; ++i) out.vectors.col(i).normalize();
      if (converged) return true;
      return false;
    }

    T.block((j + 1) * b, j * b, b, b) = R;
    T.block(j * b, (j + 1) * b, b, b) = R.transpose();
    V.middleCols((j + 1) * b, b) = W;
    Bprev = R;
  }
  return false;
}

}  // namespace

EigenPairs lanczos_lowest(const MatVec& apply, Index dim, int k, const LanczosOptions& opts) {
  return lanczos_lowest(apply, dim, k, nullptr, opts);
}

EigenPairs lanczos_lowest(const MatVec& apply, Index dim, int k, const Mat* warm_start,
                          const LanczosOptions& opts) {
  if (k < 1) throw std::invalid_argument("lanczos_lowest: need k >= 1");
  if (static_cast<Index>(k) > dim) throw std::invalid_argument("lanczos_lowest: k exceeds dimension");

  EigenPairs out;
  if (block_lanczos(apply, dim, k, opts, warm_start, out)) return out;

  LanczosOptions wide = opts;
  wide.max_basis = 2 * opts.max_basis;
  wide.seed = opts.seed + 104729u;
  if (block_lanczos(apply, dim, k, wide, warm_start, out)) return out;
  throw std::runtime_error("lanczos_lowest: no convergence within " +
                           std::to_string(wide.max_basis) + " basis vectors");
}

Vec expm_multiply(const SpMat& A, const Vec& v, double t) {
  if (A.rows() != A.cols() || A.rows() != v.size())
    throw std::invalid_argument("expm_multiply: dimension mismatch");

  double norm1 = 0.0;
  for (int col = 0; col < A.outerSize(); ++col) {
    double s = 0.0;
    for (SpMat::InnerIterator it(A, col); it; ++it) s += std::abs(it.value());
    norm1 = std::max(norm1, s);
  }
  int segments = 1;
  while (std::abs(t) * norm1 / segments > 1.0 && segments < (1 << 24)) segments *= 2;
  const double dt = t / segments;

  Vec w = v;
  for (int seg = 0; seg < segments; ++seg) {
    Vec term = w;
    Vec acc = w;
    const double target = 1e-17 * acc.norm();
    bool done = false;
    for (int j = 1; j <= 64; ++j) {
      term = (A * term) * (dt / j);
      acc += term;
      if (term.norm() <= target) {
        done = true;
        break;
      }
    }
    if (!done) throw std::runtime_error("expm_multiply: Taylor series did not converge");
    w = acc;
  }
  return w;
}

}  // namespace bogospec
