#include "bogospec/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bogospec {

namespace {

unsigned long long binomial_capped(int n, int k, unsigned long long cap) {
  unsigned long long c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // stays integral: prefix binomials
    if (c > 64 * cap) return c;
  }
  return c;
}

}  // namespace

FockBasis::FockBasis(int excited_modes_M, int particles_N, std::size_t cap)
    : nmodes_(excited_modes_M + 1), particles_(particles_N) {
  if (excited_modes_M < 1) throw std::invalid_argument("FockBasis: need M >= 1");
  if (particles_N < 2) throw std::invalid_argument("FockBasis: need N >= 2");

  const unsigned long long count =
      binomial_capped(particles_N + excited_modes_M, excited_modes_M, cap);
  if (count > cap)
    throw std::invalid_argument("FockBasis: state count " + std::to_string(count) +
                                " exceeds cap " + std::to_string(cap));
  size_ = static_cast<std::size_t>(count);
  occ_.reserve(size_ * nmodes_);

  std::vector<int> st(nmodes_, 0);
  // lexicographic: leftmost occupation varies slowest
  auto rec = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == nmodes_ - 1) {
      st[mode] = remaining;
      occ_.insert(occ_.end(), st.begin(), st.end());
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      st[mode] = c;
      self(self, mode + 1, remaining - c);
    }
  };
  rec(rec, 0, particles_N);
  if (occ_.size() != size_ * nmodes_) throw std::logic_error("FockBasis: enumeration mismatch");
}

std::span<const int> FockBasis::state(std::size_t idx) const {
  return {occ_.data() + idx * nmodes_, static_cast<std::size_t>(nmodes_)};
}

std::size_t FockBasis::index(std::span<const int> s) const {
  if (s.size() != static_cast<std::size_t>(nmodes_)) throw std::invalid_argument("FockBasis: bad state size");
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const int* row = occ_.data() + mid * nmodes_;
    int cmp = 0;
    for (int i = 0; i < nmodes_; ++i) {
      if (row[i] != s[i]) {
        cmp = row[i] < s[i] ? -1 : 1;
        break;
      }
    }
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == size_) throw std::out_of_range("FockBasis: state not in basis");
  const int* row = occ_.data() + lo * nmodes_;
  for (int i = 0; i < nmodes_; ++i)
    if (row[i] != s[i]) throw std::out_of_range("FockBasis: state not in basis");
  return lo;
}

std::size_t FockBasis::condensate_index() const {
  std::vector<int> st(nmodes_, 0);
  st[0] = particles_;
  return index(st);
}

ManyBodyTensors compute_tensors(const OneBodySet& ob, const GridSpec& grid,
                                const ExternalPotential& vext, const Interaction& v, int nmodes,
                                double stationarity_tol) {
  if (nmodes < 2 || nmodes > ob.m) throw std::invalid_argument("compute_tensors: need 2 <= nmodes <= m");

  ManyBodyTensors t;
  t.nmodes = nmodes;

  Mat A = one_body_operator(grid, vext).dense();
  Mat modes = ob.modes.leftCols(nmodes);
  t.h = grid.h * (modes.transpose() * (A * modes));
  t.h = 0.5 * (t.h + t.h.transpose()).eval();

  // v_ijkl = <phi_i phi_j| v |phi_k phi_l>: x carries (i,k), y carries (j,l)
  Mat K = kernel_matrix(v, grid);
  Mat P(grid.n, nmodes * nmodes);
  for (int i = 0; i < nmodes; ++i)
    for (int k = 0; k < nmodes; ++k)
      P.col(i * nmodes + k) = grid.weights.cwiseProduct(modes.col(i)).cwiseProduct(modes.col(k));
  Mat G = P.transpose() * K * P;

  t.vt.resize(static_cast<std::size_t>(nmodes) * nmodes * nmodes * nmodes);
  for (int i = 0; i < nmodes; ++i)
    for (int j = 0; j < nmodes; ++j)
      for (int k = 0; k < nmodes; ++k)
        for (int l = 0; l < nmodes; ++l)
          t.vt[static_cast<std::size_t>(((i * nmodes + j) * nmodes + k)) * nmodes + l] =
              G(i * nmodes + k, j * nmodes + l);

  // Hartree stationarity h_{i0} + v_{i000} = 0 for i != 0
  for (int i = 1; i < nmodes; ++i) {
    const double viol = std::abs(t.h(i, 0) + t.v(i, 0, 0, 0));
    if (viol > stationarity_tol)
      throw std::runtime_error("compute_tensors: Hartree stationarity violated by " +
                               std::to_string(viol) + " at mode " + std::to_string(i));
  }
  return t;
}

namespace {

struct TensorTerm {
  int i, j, k, l;
  double value;
};

SpMat symmetrized(SpMat H) {
  SpMat Ht = SpMat(H.transpose());
  return 0.5 * (H + Ht);
}

/// Per-column accumulator: merges duplicate targets before the triplet list
/// so big bases stay memory-light.
class ColumnMerger {
 public:
  void add(std::size_t row, double val) { entries_.emplace_back(row, val); }

  void flush(std::size_t col, std::vector<Eigen::Triplet<double>>& out) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries_.size();) {
      double sum = entries_[i].second;
      std::size_t j = i + 1;
      while (j < entries_.size() && entries_[j].first == entries_[i].first) sum += entries_[j++].second;
      out.emplace_back(static_cast<int>(entries_[i].first), static_cast<int>(col), sum);
      i = j;
    }
    entries_.clear();
  }

 private:
  std::vector<std::pair<std::size_t, double>> entries_;
};

}  // namespace

SpMat assemble_HN(const ManyBodyTensors& t, const FockBasis& basis) {
  const int nm = basis.num_modes();
  if (t.nmodes != nm) throw std::invalid_argument("assemble_HN: tensor/basis mode mismatch");
  const int N = basis.particles();
  const std::size_t S = basis.size();
  const double coupling = 1.0 / (2.0 * (N - 1));

  double vmax = 0.0;
  for (double x : t.vt) vmax = std::max(vmax, std::abs(x));
  std::vector<TensorTerm> terms;
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j)
      for (int k = 0; k < nm; ++k)
        for (int l = 0; l < nm; ++l) {
          double w = t.v(i, j, k, l);
          if (std::abs(w) > 1e-15 * vmax) terms.push_back({i, j, k, l, w});
        }

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<int> scratch(nm);
  ColumnMerger merger;

  for (std::size_t col = 0; col < S; ++col) {
    auto st = basis.state(col);

    double diag = 0.0;
    for (int i = 0; i < nm; ++i) diag += t.h(i, i) * st[i];
    merger.add(col, diag);

    for (int i = 0; i < nm; ++i)
      for (int j = 0; j < nm; ++j) {
        if (i == j || st[j] == 0 || t.h(i, j) == 0.0) continue;
        double amp = t.h(i, j) * std::sqrt(double(st[j]) * (st[i] + 1));
        std::copy(st.begin(), st.end(), scratch.begin());
        --scratch[j];
        ++scratch[i];
        merger.add(basis.index(scratch), amp);
      }

    // 1/(2(N-1)) v_ijkl a_j+ a_i+ a_k a_l  (a_l acts first)
    for (const auto& term : terms) {
      if (st[term.l] == 0) continue;
      std::copy(st.begin(), st.end(), scratch.begin());
      double amp = scratch[term.l];
      --scratch[term.l];
      if (scratch[term.k] == 0) continue;
      amp *= scratch[term.k];
      --scratch[term.k];
      amp = std::sqrt(amp);
      double raise = (scratch[term.i] + 1);
      ++scratch[term.i];
      raise *= (scratch[term.j] + 1);
      ++scratch[term.j];
      amp *= std::sqrt(raise);
      merger.add(basis.index(scratch), coupling * term.value * amp);
    }
    merger.flush(col, trip);
  }

  SpMat H(S, S);
  H.setFromTriplets(trip.begin(), trip.end());
  return symmetrized(std::move(H));
}

SpMat assemble_HBog(const Vec& eps_gaps, const Mat& Vq, const FockBasis& basis) {
  const int M = basis.excited_modes();
  if (eps_gaps.size() != M || Vq.rows() != M || Vq.cols() != M)
    throw std::invalid_argument("assemble_HBog: block size mismatch");
  const int N = basis.particles();
  const std::size_t S = basis.size();
  const double inv = 1.0 / (N - 1);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(S * (M * M / 2 + 2));
  std::vector<int> scratch(basis.num_modes());

  for (std::size_t col = 0; col < S; ++col) {
    auto st = basis.state(col);
    const double hop_factor = (st[0] + 1) * inv;  // a_0 a_0+ / (N-1)

    // sum' (eps_i - eps_0) b_i+ b_i  and the 2 b_i+ b_j part of the V term
    double diag = 0.0;
    for (int i = 1; i <= M; ++i) diag += (eps_gaps(i - 1) + Vq(i - 1, i - 1)) * st[i] * hop_factor;
    trip.emplace_back(static_cast<int>(col), static_cast<int>(col), diag);

    for (int i = 1; i <= M; ++i)
      for (int j = 1; j <= M; ++j) {
        if (i == j || st[j] == 0) continue;
        double vij = Vq(i - 1, j - 1);
        if (vij == 0.0) continue;
        double amp = vij * hop_factor * std::sqrt(double(st[j]) * (st[i] + 1));
        std::copy(st.begin(), st.end(), scratch.begin());
        --scratch[j];
        ++scratch[i];
        trip.emplace_back(static_cast<int>(basis.index(scratch)), static_cast<int>(col), amp);
      }

    // pairing 1/2 sum' V_ij (b_i b_j + b_j+ b_i+): the two pieces are exact
    // transposes of each other, so each entry is emitted on both sides
    const double raise0 = std::sqrt(double(st[0] + 1) * (st[0] + 2)) * inv;
    for (int i = 1; i <= M; ++i)
      for (int j = i; j <= M; ++j) {
        double vij = Vq(i - 1, j - 1);
        if (vij == 0.0) continue;
        double lower;
        if (i == j) {
          if (st[i] < 2) continue;
          lower = std::sqrt(double(st[i]) * (st[i] - 1));
        } else {
          if (st[i] == 0 || st[j] == 0) continue;
          lower = std::sqrt(double(st[i]) * st[j]);
        }
        const double mult = (i == j) ? 0.5 : 1.0;  // (i,j) and (j,i) both appear in the sum
        std::copy(st.begin(), st.end(), scratch.begin());
        scratch[0] += 2;
        --scratch[i];
        --scratch[j];
        const int row = static_cast<int>(basis.index(scratch));
        const double val = mult * vij * raise0 * lower;
        trip.emplace_back(row, static_cast<int>(col), val);
        trip.emplace_back(static_cast<int>(col), row, val);
      }
  }

  SpMat P(S, S);
  P.setFromTriplets(trip.begin(), trip.end());
  return symmetrized(std::move(P));
}

Observables assemble_observables(const FockBasis& basis, const Vec& eps_gaps) {
  const int M = basis.excited_modes();
  if (eps_gaps.size() != M) throw std::invalid_argument("assemble_observables: gap size mismatch");
  Observables obs;
  obs.n_excited.resize(basis.size());
  obs.t_hartree.resize(basis.size());
  for (std::size_t s = 0; s < basis.size(); ++s) {
    auto st = basis.state(s);
    obs.n_excited(s) = basis.particles() - st[0];
    double th = 0.0;
    for (int i = 1; i <= M; ++i) th += eps_gaps(i - 1) * st[i];
    obs.t_hartree(s) = th;
  }
  return obs;
}

SpMat assemble_X(const Mat& alpha, const FockBasis& basis) {
  const int M = basis.excited_modes();
  if (alpha.rows() != M || alpha.cols() != M) throw std::invalid_argument("assemble_X: alpha size mismatch");
  if ((alpha - alpha.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + alpha.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("assemble_X: alpha must be symmetric");
  const int N = basis.particles();
  const std::size_t S = basis.size();
  const double inv = 1.0 / (N - 1);

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<int> scratch(basis.num_modes());

  // P = sum' alpha_ij b_i+ b_j+;  X = (P - P^T)/2 is antisymmetric exactly
  for (std::size_t col = 0; col < S; ++col) {
    auto st = basis.state(col);
    if (st[0] < 2) continue;
    const double lower0 = std::sqrt(double(st[0]) * (st[0] - 1)) * inv;
    for (int i = 1; i <= M; ++i)
      for (int j = 1; j <= M; ++j) {
        double aij = alpha(i - 1, j - 1);
        if (aij == 0.0) continue;
        std::copy(st.begin(), st.end(), scratch.begin());
        scratch[0] -= 2;
        double raise = (scratch[j] + 1);
        ++scratch[j];
        raise *= (scratch[i] + 1);
        ++scratch[i];
        trip.emplace_back(static_cast<int>(basis.index(scratch)), static_cast<int>(col),
                          aij * lower0 * std::sqrt(raise));
      }
  }

  SpMat P(S, S);
  P.setFromTriplets(trip.begin(), trip.end());
  SpMat Pt = SpMat(P.transpose());
  return 0.5 * (P - Pt);
}

Vec apply_Udagger_condensate(const SpMat& X, const FockBasis& basis) {
  Vec v = Vec::Zero(basis.size());
  v(basis.condensate_index()) = 1.0;
  Vec w = expm_multiply(X, v, -1.0);
  if (std::abs(w.norm() - 1.0) > 1e-10)
    throw std::runtime_error("apply_Udagger_condensate: norm drift " +
                             std::to_string(std::abs(w.norm() - 1.0)));
  return w;
}

EigenPairs ed_lowest(const SpMat& H, int k) {
  if (k < 1) throw std::invalid_argument("ed_lowest: need k >= 1");
  const Index dim = H.rows();
  k = static_cast<int>(std::min<Index>(k, dim));

  EigenPairs out;
  if (dim <= 2000) {
    Eigen::SelfAdjointEigenSolver<Mat> eig{Mat(H)};
    if (eig.info() != Eigen::Success) throw std::runtime_error("ed_lowest: dense solver failed");
    out.values = eig.eigenvalues().head(k);
    out.vectors = eig.eigenvectors().leftCols(k);
    return out;
  }

  MatVec mv = [&H](const Vec& x) { return H * x; };
  LanczosOptions opts;
  opts.max_basis = 600;
  opts.tol = 1e-10;
  out = lanczos_lowest(mv, dim, k, opts);
  for (int i = 0; i < k; ++i) {
    const double resid = (H * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
    if (resid > 1e-9 * (std::abs(out.values(i)) + 1.0))
      throw std::runtime_error("ed_lowest: residual " + std::to_string(resid) +
                               " too large for eigenpair " + std::to_string(i));
  }
  return out;
}

namespace {

/// Smallest `count` values of sum_i n_i e_i with sum n_i <= budget,
/// multiplicity-aware (one entry per occupation tuple).
std::vector<double> lowest_occupation_sums(const Vec& e_modes, int budget, int count) {
  std::vector<double> e(e_modes.data(), e_modes.data() + e_modes.size());
  std::sort(e.begin(), e.end());
  const double xi = count * e.back() + 1.0;
  const int depth = std::min(budget, count);

  std::vector<double> sums;
  auto rec = [&](auto&& self, std::size_t mode, int left, double value) -> void {
    sums.push_back(value);
    for (std::size_t i = mode; i < e.size(); ++i) {
      if (left <= 0 || value + e[i] > xi) continue;
      self(self, i, left - 1, value + e[i]);
    }
  };
  rec(rec, 0, depth, 0.0);
  std::sort(sums.begin(), sums.end());
  if (static_cast<int>(sums.size()) > count) sums.resize(count);
  return sums;
}

OneBodySet truncate_onebody(const OneBodySet& ob, int nmodes) {
  OneBodySet t;
  t.m = nmodes;
  t.eps = ob.eps.head(nmodes);
  t.modes = ob.modes.leftCols(nmodes);
  t.D = ob.D.topLeftCorner(nmodes, nmodes);
  t.V = ob.V.topLeftCorner(nmodes, nmodes);
  return t;
}

}  // namespace

TheoremReport verify_theorem(const HartreeSolution& sol, const GridSpec& grid,
                             const ExternalPotential& vext, const Interaction& v,
                             const OneBodySet& ob, const BogoliubovResult& bog,
                             const EdOptions& opts) {
  const int M = opts.excited_modes_M;
  const int nm = M + 1;
  if (nm > ob.m) throw std::invalid_argument("verify_theorem: ED mode set exceeds one-body basis");

  ManyBodyTensors tensors = compute_tensors(ob, grid, vext, v, nm);
  OneBodySet obM = truncate_onebody(ob, nm);
  BogoliubovResult bogM = compute_E(obM);
  SymplecticSet sym = compute_symplectic(obM.Dq(), bogM.E.bottomRightCorner(M, M));

  const Vec eps_gaps = obM.D.diagonal().tail(M);
  const double gap0 = eps_gaps.minCoeff();
  const double h00 = sol.kinetic_ext;
  const double v0000 = sol.v0000;
  const double v0 = v.v0();
  const double alpha_hs2 = sym.alpha.squaredNorm();
  const double slack = 1e-8;

  TheoremReport report;
  for (int N : opts.particle_numbers) {
    FockBasis basis(M, N, opts.basis_cap);
    const int k = std::min<int>(opts.k_states, static_cast<int>(basis.size()));

    SpMat HN = assemble_HN(tensors, basis);
    EigenPairs ed = ed_lowest(HN, k);

    TheoremRow row;
    row.N = N;
    row.basis_size = basis.size();
    row.E0_ed = ed.values(0);
    row.trace_truncated = bogM.trace_correction;
    row.trace_full = bog.trace_correction;
    row.E0_pred = predict_ground_energy(bogM, sol, N);
    row.delta0 = std::abs(row.E0_ed - row.E0_pred);

    row.gap1_bog = bogM.e(0);
    if (k > 1) row.gap1_ed = ed.values(1) - ed.values(0);
    for (int i = 1; i < k; ++i) row.ed_gaps.push_back(ed.values(i) - ed.values(0));
    row.bog_sums = lowest_occupation_sums(bogM.e, N, k);

    const double lhs = row.E0_ed - N * h00 - 0.5 * N * v0000;
    const double lower = 0.5 * v0000 - 0.5 * N / (N - 1.0) * v0;
    row.lemma1_upper_ok = lhs <= slack;
    row.lemma1_lower_ok = lhs >= lower - slack;

    Observables obs = assemble_observables(basis, eps_gaps);
    Vec ground_sq = ed.vectors.col(0).cwiseProduct(ed.vectors.col(0));
    row.depletion = ground_sq.dot(obs.n_excited);
    row.th_expect = ground_sq.dot(obs.t_hartree);

    row.expectation_ok = true;
    row.lemma3_ok = true;
    const int checked = std::min(5, k);
    for (int s = 0; s < checked; ++s) {
      Vec psi_sq = ed.vectors.col(s).cwiseProduct(ed.vectors.col(s));
      const double mu = (ed.values(s) - ed.values(0)) + 1e-9 * (std::abs(ed.values(0)) + 1.0);
      const double nv = psi_sq.dot(obs.n_excited);
      const double tv = psi_sq.dot(obs.t_hartree);
      const double ntv = psi_sq.dot(obs.n_excited.cwiseProduct(obs.t_hartree));
      const double th_upper = mu + 0.5 * N / (N - 1.0) * v0 - 0.5 * v0000;
      if (gap0 * nv > tv + slack || tv > th_upper + slack) row.expectation_ok = false;
      const double lemma3_rhs =
          (mu - v0000 + 3.0 * v0) * th_upper + 0.25 * (2.0 * v0 + mu) * (2.0 * v0 + mu);
      if (gap0 * ntv > lemma3_rhs + slack) row.lemma3_ok = false;
    }

    SpMat X = assemble_X(sym.alpha, basis);
    Vec ucond = apply_Udagger_condensate(X, basis);
    const double ov = ed.vectors.col(0).dot(ucond);
    row.overlap_sq = ov * ov;
    const double bare = ed.vectors.col(0)(basis.condensate_index());
    row.overlap_bare = bare * bare;

    Vec cond = Vec::Zero(basis.size());
    cond(basis.condensate_index()) = 1.0;
    const double fp = cond.dot(expm_multiply(X, cond, -opts.fd_step));
    const double fm = cond.dot(expm_multiply(X, cond, opts.fd_step));
    row.d2_overlap_fd = (fp - 2.0 + fm) / (opts.fd_step * opts.fd_step);
    row.d2_overlap_exact = -0.5 * N / (N - 1.0) * alpha_hs2;

    // H_Bog develops a dense manifold of depleted-condensate states (n_0 ~ 0)
    // right at the first quasiparticle level: its gaps are only defined to the
    // manifold spread, so the comparison uses a residual matched to it.
    SpMat HB = assemble_HBog(eps_gaps, obM.Vq(), basis);
    const int k_hbog = std::min(3, k);
    EigenPairs edb;
    if (static_cast<Index>(basis.size()) <= 2000) {
      edb = ed_lowest(HB, k_hbog);
    } else {
      LanczosOptions relaxed;
      relaxed.tol = 1e-4;
      MatVec mv = [&HB](const Vec& x) { return HB * x; };
      edb = lanczos_lowest(mv, HB.rows(), k_hbog, relaxed);
    }
    for (int i = 1; i < k_hbog; ++i) row.hbog_gaps.push_back(edb.values(i) - edb.values(0));

    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace bogospec
