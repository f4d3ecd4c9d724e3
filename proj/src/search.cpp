#include "ebr/search.hpp"

#include "ebr/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ebr {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

// Box-Muller over mt19937_64 uniforms: bit-reproducible for a given seed
// independent of the standard library's distribution internals.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : gen_(seed) {}

  double real() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_gaussian() { return Complex(real(), real()) / std::sqrt(2.0); }

  Vector complex_vector(int d) {
    Vector v(d);
    for (int k = 0; k < d; ++k) v(k) = complex_gaussian();
    return v;
  }

 private:
  double uniform() {
    return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);  // [0, 1)
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  // splitmix64 step keeps nearby (seed, restart) pairs uncorrelated
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// ------ rank-one Choi fitting ---------------------------------------------

struct FitState {
  std::vector<Vector> xs;
  std::vector<Vector> ys;
};

Vector product_vec(const Vector& x, const Vector& y) {
  return tensor_vec(y.conjugate(), x);
}

Matrix mismatch(const FitState& st, const Matrix& target) {
  Matrix m = -target;
  for (size_t k = 0; k < st.xs.size(); ++k) {
    Vector z = product_vec(st.xs[k], st.ys[k]);
    m.noalias() += z * z.adjoint();
  }
  return m;
}

double objective(const FitState& st, const Matrix& target) {
  return mismatch(st, target).squaredNorm();
}

// f = tr(M^2) with M = sum_k z_k z_k^dagger - C and z_k = conj(y_k) (x) x_k.
// Writing W_k = unvec(M z_k) (d x d, column i = output block of input i):
//   grad_{x_k} = 4 W_k y_k,   grad_{y_k} = 4 W_k^dagger x_k,
// where grad is d/dRe + i d/dIm. Validated against finite differences by
// decomposition_gradient_check.
void gradients(const FitState& st, const Matrix& target, int d,
               std::vector<Vector>& gx, std::vector<Vector>& gy) {
  const Matrix m = mismatch(st, target);
  const size_t kk = st.xs.size();
  gx.resize(kk);
  gy.resize(kk);
  for (size_t k = 0; k < kk; ++k) {
    Vector z = product_vec(st.xs[k], st.ys[k]);
    Matrix w = choi_unvec(m * z, d, d);
    gx[k] = 4.0 * (w * st.ys[k]);
    gy[k] = 4.0 * (w.adjoint() * st.xs[k]);
  }
}

struct RunOutcome {
  FitState state;
  double objective_value = 0.0;
  int iters = 0;
};

// ---- Newton polish in extended precision ----------------------------------
//
// At a zero-residual solution the objective is quartically flat along the
// directions where the linearized fit map loses rank (beyond the gauge
// freedoms), so every first-order step stalls with factor errors around
// sqrt(residual). Newton steps from the analytic Hessian resolve those
// modes, and the phase runs in 80-bit arithmetic: the reachable factor error
// scales like the cube root of the gradient roundoff, which double would cap
// near 1e-5 while long double reaches ~1e-7.

using PReal = long double;
using PCplx = std::complex<PReal>;
using PMat = Eigen::Matrix<PCplx, Eigen::Dynamic, Eigen::Dynamic>;
using PVec = Eigen::Matrix<PCplx, Eigen::Dynamic, 1>;
using PRealVec = Eigen::Matrix<PReal, Eigen::Dynamic, 1>;
using PRealMat = Eigen::Matrix<PReal, Eigen::Dynamic, Eigen::Dynamic>;

struct PolishState {
  std::vector<PVec> xs, ys;
};

PVec p_product_vec(const PVec& x, const PVec& y) {
  const Eigen::Index d = x.size();
  PVec z(d * d);
  for (Eigen::Index i = 0; i < d; ++i) z.segment(i * d, d) = std::conj(y(i)) * x;
  return z;
}

PMat p_mismatch(const PolishState& st, const PMat& target) {
  PMat m = -target;
  for (size_t k = 0; k < st.xs.size(); ++k) {
    PVec z = p_product_vec(st.xs[k], st.ys[k]);
    m.noalias() += z * z.adjoint();
  }
  return m;
}

PReal p_objective(const PolishState& st, const PMat& target) {
  return p_mismatch(st, target).squaredNorm();
}

// flattened real coordinates [Re x_1(0), Im x_1(0), ..., Re y_K(d-1), Im y_K(d-1)]
PRealVec p_pack(const PolishState& st, int d, int kk) {
  PRealVec theta(4 * kk * d);
  Eigen::Index at = 0;
  for (int k = 0; k < kk; ++k) {
    for (int p = 0; p < d; ++p) {
      theta(at++) = st.xs[static_cast<size_t>(k)](p).real();
      theta(at++) = st.xs[static_cast<size_t>(k)](p).imag();
    }
    for (int p = 0; p < d; ++p) {
      theta(at++) = st.ys[static_cast<size_t>(k)](p).real();
      theta(at++) = st.ys[static_cast<size_t>(k)](p).imag();
    }
  }
  return theta;
}

PolishState p_unpack(const PRealVec& theta, int d, int kk) {
  PolishState st;
  st.xs.assign(static_cast<size_t>(kk), PVec(d));
  st.ys.assign(static_cast<size_t>(kk), PVec(d));
  Eigen::Index at = 0;
  for (int k = 0; k < kk; ++k) {
    for (int p = 0; p < d; ++p, at += 2) {
      st.xs[static_cast<size_t>(k)](p) = PCplx(theta(at), theta(at + 1));
    }
    for (int p = 0; p < d; ++p, at += 2) {
      st.ys[static_cast<size_t>(k)](p) = PCplx(theta(at), theta(at + 1));
    }
  }
  return st;
}

// With z_k = conj(y_k) (x) x_k and M = sum z z^dag - C:
//   f = tr(M^2),  D_a f = 2 tr(M D_a M),
//   H_ab = 2 tr(D_a M D_b M) + 2 tr(M D_b D_a M),
// where D_a M = dz_a z^dag + z dz_a^dag and, within one factor,
// D_b D_a M = d2z z^dag + dz_a dz_b^dag + dz_b dz_a^dag + z d2z^dag.
// Everything reduces to inner products of the z_k, the direction vectors
// dz_a, and M acting on them.
struct PolishDerivatives {
  PRealVec grad;
  PRealMat hess;
};

PolishDerivatives p_derivatives(const PolishState& st, const PMat& target, int d, int kk) {
  const Eigen::Index n = 4LL * kk * d;
  const PMat m = p_mismatch(st, target);

  std::vector<PVec> zs(static_cast<size_t>(kk));
  for (int k = 0; k < kk; ++k) {
    zs[static_cast<size_t>(k)] = p_product_vec(st.xs[static_cast<size_t>(k)], st.ys[static_cast<size_t>(k)]);
  }

  // direction table mirroring p_pack's coordinate order
  struct Dir {
    int k;
    bool in_x;
    int comp;
    bool imag_part;
  };
  std::vector<Dir> dirs;
  dirs.reserve(static_cast<size_t>(n));
  for (int k = 0; k < kk; ++k) {
    for (int p = 0; p < d; ++p) {
      dirs.push_back({k, true, p, false});
      dirs.push_back({k, true, p, true});
    }
    for (int p = 0; p < d; ++p) {
      dirs.push_back({k, false, p, false});
      dirs.push_back({k, false, p, true});
    }
  }

  std::vector<PVec> dz(static_cast<size_t>(n));
  for (Eigen::Index a = 0; a < n; ++a) {
    const Dir& dir = dirs[static_cast<size_t>(a)];
    const PCplx unit = dir.imag_part ? PCplx(0, 1) : PCplx(1, 0);
    PVec v = PVec::Zero(d * d);
    if (dir.in_x) {
      // dz = conj(y) (x) u with u = unit * e_comp
      const PVec& y = st.ys[static_cast<size_t>(dir.k)];
      for (int i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i) * d + dir.comp) = std::conj(y(i)) * unit;
    } else {
      // dz = conj(v) (x) x with v = unit * e_comp
      const PVec& x = st.xs[static_cast<size_t>(dir.k)];
      v.segment(static_cast<Eigen::Index>(dir.comp) * d, d) = std::conj(unit) * x;
    }
    dz[static_cast<size_t>(a)] = std::move(v);
  }

  std::vector<PVec> m_z(static_cast<size_t>(kk)), m_dz(static_cast<size_t>(n));
  for (int k = 0; k < kk; ++k) m_z[static_cast<size_t>(k)] = m * zs[static_cast<size_t>(k)];
  for (Eigen::Index a = 0; a < n; ++a) m_dz[static_cast<size_t>(a)] = m * dz[static_cast<size_t>(a)];

  PolishDerivatives out;
  out.grad.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    // D_a f = 2 tr(M (dz z^dag + z dz^dag)) = 4 Re(z^dag M dz)
    const int k = dirs[static_cast<size_t>(a)].k;
    out.grad(a) = 4 * zs[static_cast<size_t>(k)].dot(m_dz[static_cast<size_t>(a)]).real();
  }

  PMat z_dz(kk, n), zz(kk, kk);
  for (int k = 0; k < kk; ++k) {
    for (Eigen::Index a = 0; a < n; ++a) z_dz(k, a) = zs[static_cast<size_t>(k)].dot(dz[static_cast<size_t>(a)]);
    for (int l = 0; l < kk; ++l) zz(k, l) = zs[static_cast<size_t>(k)].dot(zs[static_cast<size_t>(l)]);
  }

  out.hess.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Dir& da = dirs[static_cast<size_t>(a)];
    for (Eigen::Index b = a; b < n; ++b) {
      const Dir& db = dirs[static_cast<size_t>(b)];
      const PCplx dzb_dza = dz[static_cast<size_t>(b)].dot(dz[static_cast<size_t>(a)]);
      PReal h = 4 * (z_dz(da.k, b) * z_dz(db.k, a) + zz(da.k, db.k) * dzb_dza).real();
      if (da.k == db.k) {
        h += 4 * dz[static_cast<size_t>(b)].dot(m_dz[static_cast<size_t>(a)]).real();
        if (da.in_x != db.in_x) {
          // cross x/y second derivative: d2z = conj(v) (x) u
          const Dir& dx = da.in_x ? da : db;
          const Dir& dy = da.in_x ? db : da;
          PCplx coeff(1, 0);
          if (dx.imag_part) coeff *= PCplx(0, 1);
          if (dy.imag_part) coeff *= PCplx(0, -1);
          const Eigen::Index pos = static_cast<Eigen::Index>(dy.comp) * d + dx.comp;
          const PCplx zmd = zs[static_cast<size_t>(da.k)].dot(m.col(pos));
          h += 4 * (coeff * zmd).real();
        }
      }
      out.hess(a, b) = h;
      out.hess(b, a) = h;
    }
  }
  return out;
}

void newton_polish(FitState& st, double& f, const Matrix& target, int d,
                   const OptimizerConfig& cfg, int max_polish_iters, int& iters_used) {
  (void)cfg;
  const int kk = static_cast<int>(st.xs.size());
  const Eigen::Index n = 4LL * kk * d;

  PMat p_target = target.cast<PCplx>();
  PolishState pst;
  pst.xs.resize(static_cast<size_t>(kk));
  pst.ys.resize(static_cast<size_t>(kk));
  for (int k = 0; k < kk; ++k) {
    pst.xs[static_cast<size_t>(k)] = st.xs[static_cast<size_t>(k)].cast<PCplx>();
    pst.ys[static_cast<size_t>(k)] = st.ys[static_cast<size_t>(k)].cast<PCplx>();
  }
  PRealVec theta = p_pack(pst, d, kk);
  PReal pf = p_objective(pst, p_target);

  for (int it = 0; it < max_polish_iters; ++it) {
    if (pf <= PReal(1e-34)) break;
    const PolishDerivatives der = p_derivatives(pst, p_target, d, kk);

    // Truncated pseudo-inverse: the gauge freedoms contribute exact null
    // directions (zero curvature, zero gradient up to roundoff); inverting
    // them would flood the step with noise, so they are dropped.
    Eigen::SelfAdjointEigenSolver<PRealMat> eig(der.hess);
    const PReal top = std::max(std::abs(eig.eigenvalues()(n - 1)), PReal(1e-18));
    const PReal cutoff = PReal(1e-14) * top;
    PRealVec inv_ev = PRealVec::Zero(n);
    for (Eigen::Index c = 0; c < n; ++c) {
      if (eig.eigenvalues()(c) > cutoff) inv_ev(c) = PReal(1) / eig.eigenvalues()(c);
    }
    const PRealVec dir =
        -(eig.eigenvectors() * inv_ev.asDiagonal() * eig.eigenvectors().transpose() * der.grad);
    const PReal slope = der.grad.dot(dir);
    if (slope >= PReal(0)) break;

    PReal alpha = 1;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h) {
      const PolishState trial = p_unpack(theta + alpha * dir, d, kk);
      const PReal ft = p_objective(trial, p_target);
      if (ft <= pf + PReal(kArmijo) * alpha * slope) {
        pst = trial;
        theta += alpha * dir;
        pf = ft;
        accepted = true;
        break;
      }
      alpha *= PReal(0.5);
    }
    ++iters_used;
    if (!accepted) break;
  }

  for (int k = 0; k < kk; ++k) {
    st.xs[static_cast<size_t>(k)] = pst.xs[static_cast<size_t>(k)].cast<Complex>();
    st.ys[static_cast<size_t>(k)] = pst.ys[static_cast<size_t>(k)].cast<Complex>();
  }
  f = static_cast<double>(p_objective(pst, p_target));
}

// Gradient descent with a spectral (Barzilai-Borwein) trial step and a
// monotone Armijo backtracking safeguard. The pure-descent step here is
// state' = state - alpha * g, so the BB quantities reduce to inner products
// of consecutive gradients: s = -alpha g_old, y = g_new - g_old.
RunOutcome descend(FitState st, const Matrix& target, int d, const OptimizerConfig& cfg,
                   const TraceFn& trace) {
  double f = objective(st, target);
  double step = cfg.step_init;
  std::vector<Vector> gx, gy, gx_prev, gy_prev;
  double gnorm2_prev = 0.0;
  double alpha_prev = 0.0;
  FitState trial = st;
  double f_checkpoint = f;
  int next_checkpoint = 200;
  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    if (std::sqrt(f) <= cfg.residual_accept) break;
    if (iter == next_checkpoint) {
      // hand flat-valley crawling over to the curvature-aware polish
      if (f > 0.5 * f_checkpoint) break;
      f_checkpoint = f;
      next_checkpoint += 200;
    }
    gradients(st, target, d, gx, gy);
    double gnorm2 = 0.0;
    for (size_t k = 0; k < gx.size(); ++k) {
      gnorm2 += gx[k].squaredNorm() + gy[k].squaredNorm();
    }
    if (std::sqrt(gnorm2) <= cfg.grad_tol) break;

    double alpha = step;
    if (alpha_prev > 0.0) {
      double cross = 0.0, yy = 0.0;
      for (size_t k = 0; k < gx.size(); ++k) {
        cross += gx_prev[k].dot(gx[k]).real() + gy_prev[k].dot(gy[k]).real();
        yy += (gx[k] - gx_prev[k]).squaredNorm() + (gy[k] - gy_prev[k]).squaredNorm();
      }
      const double sy = alpha_prev * (gnorm2_prev - cross);
      if (sy > 0.0 && yy > 0.0) {
        alpha = std::clamp(sy / yy, 1e-12, 1e6);
      }
    }

    bool accepted = false;
    double alpha_used = 0.0;
    for (int h = 0; h < kMaxHalvings; ++h) {
      for (size_t k = 0; k < gx.size(); ++k) {
        trial.xs[k] = st.xs[k] - alpha * gx[k];
        trial.ys[k] = st.ys[k] - alpha * gy[k];
      }
      const double ft = objective(trial, target);
      if (ft <= f - kArmijo * alpha * gnorm2) {
        std::swap(st, trial);
        f = ft;
        alpha_used = alpha;
        step = alpha * 2.0;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (trace) trace(iter, f, alpha_used);
    if (!accepted) break;  // no descent progress at machine scale
    gx_prev = gx;
    gy_prev = gy;
    gnorm2_prev = gnorm2;
    alpha_prev = alpha_used;
  }
  newton_polish(st, f, target, d, cfg, 60, iter);
  return RunOutcome{std::move(st), f, iter};
}

// ------ frame potential on the sphere ---------------------------------------

double fiducial_objective(const Vector& w, const std::vector<Matrix>& weyls) {
  double g = 0.0;
  for (const auto& op : weyls) {
    const double h2 = std::norm(w.dot(op * w));
    g += h2 * h2;
  }
  return g;
}

// d/dRe + i d/dIm of sum |h|^4, h = <w, A w>: per term 4|h|^2 (conj(h) A w + h A^dagger w).
Vector fiducial_gradient(const Vector& w, const std::vector<Matrix>& weyls) {
  Vector g = Vector::Zero(w.size());
  for (const auto& op : weyls) {
    const Vector aw = op * w;
    const Complex h = w.dot(aw);
    g += 4.0 * std::norm(h) * (std::conj(h) * aw + h * (op.adjoint() * w));
  }
  return g;
}

double orbit_angle_dev(const Vector& w, const std::vector<Matrix>& weyls, int d) {
  const double target = 1.0 / (d + 1.0);
  double dev = 0.0;
  for (const auto& op : weyls) {
    dev = std::max(dev, std::abs(std::norm(w.dot(op * w)) - target));
  }
  return dev;
}

}  // namespace

DecompositionProblem::DecompositionProblem(ChoiMatrix target_, int num_factors_)
    : target(std::move(target_)), num_factors(num_factors_), d(target.d_in) {
  if (num_factors < 1) {
    throw std::invalid_argument("DecompositionProblem: need at least one factor");
  }
  if (target.d_in != target.d_out) {
    throw std::invalid_argument("DecompositionProblem: target must be a square-channel Choi matrix");
  }
  auto eig = hermitian_eigen(target.mat, Tolerance(1e-8, 1e-8));
  if (eig.values.size() && eig.values(0) < -1e-8) {
    throw std::invalid_argument("DecompositionProblem: target is not PSD within 1e-8");
  }
}

void OptimizerConfig::validate() const {
  if (restarts < 1 || max_iters < 1 || !(step_init > 0.0) || !(grad_tol > 0.0) ||
      !(residual_accept > 0.0)) {
    throw std::invalid_argument("OptimizerConfig: all parameters must be positive");
  }
}

DecompositionResult rank_one_decompose(const DecompositionProblem& problem,
                                       const OptimizerConfig& cfg, const TraceFn& trace) {
  cfg.validate();
  const int d = problem.d;
  const int kk = problem.num_factors;
  const double target_trace = std::max(problem.target.mat.real().trace(), 1e-12);

  double best_obj = std::numeric_limits<double>::infinity();
  FitState best_state;
  int best_iters = 0;
  int executed = 0;

  for (int r = 0; r < cfg.restarts; ++r) {
    GaussianSource rng(restart_seed(cfg.seed, r));
    FitState st;
    st.xs.reserve(static_cast<size_t>(kk));
    st.ys.reserve(static_cast<size_t>(kk));
    double init_trace = 0.0;
    for (int k = 0; k < kk; ++k) {
      st.xs.push_back(rng.complex_vector(d));
      st.ys.push_back(rng.complex_vector(d));
      init_trace += st.xs.back().squaredNorm() * st.ys.back().squaredNorm();
    }
    // Scale the start so the initial Choi trace matches the target's.
    const double c = std::pow(target_trace / init_trace, 0.25);
    for (int k = 0; k < kk; ++k) {
      st.xs[static_cast<size_t>(k)] *= c;
      st.ys[static_cast<size_t>(k)] *= c;
    }

    RunOutcome run = descend(std::move(st), problem.target.mat, d, cfg, trace);
    ++executed;
    if (run.objective_value < best_obj) {
      best_obj = run.objective_value;
      best_state = std::move(run.state);
      best_iters = run.iters;
    }
    if (std::sqrt(best_obj) <= cfg.residual_accept) break;
  }

  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(best_state.xs.size());
  for (size_t k = 0; k < best_state.xs.size(); ++k) {
    pairs.emplace_back(best_state.xs[k], best_state.ys[k]);
  }
  DecompositionResult out{RankOneKrausFamily(d, std::move(pairs)), std::sqrt(best_obj),
                          false, executed, best_iters};
  out.converged = out.residual <= cfg.residual_accept;
  return out;
}

EbrBoundResult ebr_upper_bound(const KrausChannel& ch, int k_max, const OptimizerConfig& cfg,
                               const RankOneKrausFamily* warm_start) {
  EbrBoundResult out;
  if (ch.d_in != ch.d_out) {
    throw std::invalid_argument("ebr_upper_bound: channel must be square");
  }
  out.ppt_ok = ppt_check(ch);
  if (!out.ppt_ok) {
    out.note = "PPT fails: the Choi matrix is NPT, so no rank-one Kraus family exists; search skipped";
    return out;
  }

  const ChoiMatrix target = choi(ch);
  std::optional<int> warm_bound;
  if (warm_start != nullptr) {
    if (warm_start->d == ch.d_in &&
        choi_distance(family_choi(*warm_start), target) <= cfg.residual_accept) {
      warm_bound = warm_start->size();
    }
  }

  const int k_lo = choi_rank(ch);
  const int k_hi = warm_bound ? std::min(k_max, *warm_bound) : k_max;
  for (int k = k_lo; k <= k_hi; ++k) {
    DecompositionResult res = rank_one_decompose(DecompositionProblem(target, k), cfg);
    if (res.converged) {
      out.bound = k;
      out.best = std::move(res);
      out.note = "upper bound from a converged " + std::to_string(k) + "-term witness";
      return out;
    }
  }
  if (warm_bound) {
    out.bound = warm_bound;
    out.note = "upper bound from the supplied warm-start witness of size " +
               std::to_string(*warm_bound) + "; no smaller witness found";
    return out;
  }
  out.note = "no witness found up to K_max; this does NOT certify a lower bound";
  return out;
}

FiducialSearchResult fiducial_search(int d, const OptimizerConfig& cfg, const TraceFn& trace) {
  cfg.validate();
  if (d < 2) throw std::invalid_argument("fiducial_search: d must be >= 2");

  std::vector<Matrix> weyls;
  weyls.reserve(static_cast<size_t>(d) * d - 1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      weyls.push_back(weyl_matrix(d, i, j));
    }
  }

  Vector best_w;
  double best_pot = std::numeric_limits<double>::infinity();
  int best_iters = 0;
  int executed = 0;

  for (int r = 0; r < cfg.restarts; ++r) {
    GaussianSource rng(restart_seed(cfg.seed, r));
    Vector w = rng.complex_vector(d).normalized();
    double g = fiducial_objective(w, weyls);
    double step = cfg.step_init;
    Vector w_prev, tang_prev;
    bool have_prev = false;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
      Vector grad = fiducial_gradient(w, weyls);
      // Riemannian gradient on the unit sphere.
      Vector tang = grad - w.dot(grad).real() * w;
      const double tnorm2 = tang.squaredNorm();
      if (std::sqrt(tnorm2) <= cfg.grad_tol) break;

      double alpha = step;
      if (have_prev) {
        const Vector s = w - w_prev;
        const Vector y = tang - tang_prev;
        const double sy = s.dot(y).real();
        const double yy = y.squaredNorm();
        if (sy > 0.0 && yy > 0.0) alpha = std::clamp(sy / yy, 1e-12, 1e6);
      }

      bool accepted = false;
      double alpha_used = 0.0;
      for (int h = 0; h < kMaxHalvings; ++h) {
        Vector wt = (w - alpha * tang).normalized();
        const double gt = fiducial_objective(wt, weyls);
        if (gt <= g - kArmijo * alpha * tnorm2) {
          w_prev = w;
          tang_prev = tang;
          have_prev = true;
          w = std::move(wt);
          g = gt;
          alpha_used = alpha;
          step = alpha * 2.0;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (trace) trace(iter, g, alpha_used);
      if (!accepted) break;
    }
    ++executed;
    if (g < best_pot) {
      best_pot = g;
      best_w = w;
      best_iters = iter;
    }
    if (orbit_angle_dev(best_w, weyls, d) <= 1e-6) break;
  }

  FiducialSearchResult out{Fiducial(d, best_w.normalized()), orbit_angle_dev(best_w, weyls, d),
                           best_pot, false, executed, best_iters};
  out.success = out.max_angle_dev <= 1e-6;
  return out;
}

double decomposition_gradient_check(const DecompositionProblem& problem,
                                    const std::vector<std::pair<Vector, Vector>>& point) {
  FitState st;
  for (const auto& [x, y] : point) {
    if (x.size() != problem.d || y.size() != problem.d) {
      throw std::invalid_argument("decomposition_gradient_check: wrong vector dimension");
    }
    st.xs.push_back(x);
    st.ys.push_back(y);
  }
  if (static_cast<int>(st.xs.size()) != problem.num_factors) {
    throw std::invalid_argument("decomposition_gradient_check: wrong number of factors");
  }

  std::vector<Vector> gx, gy;
  gradients(st, problem.target.mat, problem.d, gx, gy);

  const double h = 1e-6;
  double worst = 0.0;
  double scale = 1.0;
  for (size_t k = 0; k < st.xs.size(); ++k) {
    for (int which = 0; which < 2; ++which) {
      Vector& v = which == 0 ? st.xs[k] : st.ys[k];
      const Vector& g = which == 0 ? gx[k] : gy[k];
      for (Eigen::Index p = 0; p < v.size(); ++p) {
        for (int part = 0; part < 2; ++part) {
          const Complex delta = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
          const Complex saved = v(p);
          v(p) = saved + delta;
          const double fp = objective(st, problem.target.mat);
          v(p) = saved - delta;
          const double fm = objective(st, problem.target.mat);
          v(p) = saved;
          const double fd = (fp - fm) / (2.0 * h);
          const double an = part == 0 ? g(p).real() : g(p).imag();
          worst = std::max(worst, std::abs(an - fd));
          scale = std::max({scale, std::abs(fd), std::abs(an)});
        }
      }
    }
  }
  return worst / scale;
}

double fiducial_gradient_check(int d, const Vector& w) {
  if (w.size() != d) throw std::invalid_argument("fiducial_gradient_check: wrong dimension");
  std::vector<Matrix> weyls;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      weyls.push_back(weyl_matrix(d, i, j));
    }
  }
  const Vector g = fiducial_gradient(w, weyls);
  Vector v = w;
  const double h = 1e-6;
  double worst = 0.0;
  double scale = 1.0;
  for (Eigen::Index p = 0; p < v.size(); ++p) {
    for (int part = 0; part < 2; ++part) {
      const Complex delta = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
      const Complex saved = v(p);
      v(p) = saved + delta;
      const double fp = fiducial_objective(v, weyls);
      v(p) = saved - delta;
      const double fm = fiducial_objective(v, weyls);
      v(p) = saved;
      const double fd = (fp - fm) / (2.0 * h);
      const double an = part == 0 ? g(p).real() : g(p).imag();
      worst = std::max(worst, std::abs(an - fd));
      scale = std::max({scale, std::abs(fd), std::abs(an)});
    }
  }
  return worst / scale;
}

}  // namespace ebr
