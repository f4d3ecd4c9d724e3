#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"
#include "ebr/sic.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ebr {

/// Fit K rank-one Kraus factors to a target Choi matrix.
struct DecompositionProblem {
  ChoiMatrix target;
  int num_factors = 1;
  int d = 2;

  DecompositionProblem(ChoiMatrix target_, int num_factors_);
};

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 5000;
  double step_init = 0.1;
  double grad_tol = 1e-10;
  double residual_accept = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DecompositionResult {
  RankOneKrausFamily family;
  double residual = 0.0;  // Frobenius distance of Choi matrices
  bool converged = false;
  int restarts_used = 0;
  int iters = 0;  // iterations of the selected restart
};

/// Per-iteration observer: (iter, objective value, accepted step size).
using TraceFn = std::function<void(int, double, double)>;

/// Multi-restart gradient descent with backtracking line search on
/// f = || C_target - sum_k (conj(y_k) (x) x_k) (...)^dagger ||_F^2.
/// Restart r draws its own generator from (seed, r); execution stops early
/// once a restart reaches cfg.residual_accept, and the result is the lowest
/// residual among executed restarts (ties to the lower restart index).
DecompositionResult rank_one_decompose(const DecompositionProblem& problem,
                                       const OptimizerConfig& cfg = {},
                                       const TraceFn& trace = nullptr);

struct EbrBoundResult {
  std::optional<int> bound;  // smallest converged K; an UPPER bound on ebr only
  bool ppt_ok = false;
  std::string note;
  std::optional<DecompositionResult> best;
};

/// Tries K = choi_rank(ch) .. K_max in order and reports the first K whose
/// decomposition converges. Failure to converge never certifies a lower
/// bound. A warm-start family that realizes the channel within
/// cfg.residual_accept caps the answer at its cardinality.
EbrBoundResult ebr_upper_bound(const KrausChannel& ch, int k_max,
                               const OptimizerConfig& cfg = {},
                               const RankOneKrausFamily* warm_start = nullptr);

struct FiducialSearchResult {
  Fiducial fiducial;
  double max_angle_dev = 0.0;  // worst | |<w, W_ij w>|^2 - 1/(d+1) |
  double potential = 0.0;      // sum_{(i,j) != (0,0)} |<w, W_ij w>|^4
  bool success = false;        // max_angle_dev <= 1e-6
  int restarts_used = 0;
  int iters = 0;
};

/// Projected gradient descent on the unit sphere for the Weyl frame
/// potential; success means every orbit overlap sits within 1e-6 of 1/(d+1).
FiducialSearchResult fiducial_search(int d, const OptimizerConfig& cfg = {},
                                     const TraceFn& trace = nullptr);

/// Max absolute gap between the analytic gradient and central finite
/// differences (step 1e-6), scaled by max(1, largest gradient entry).
double decomposition_gradient_check(const DecompositionProblem& problem,
                                    const std::vector<std::pair<Vector, Vector>>& point);
double fiducial_gradient_check(int d, const Vector& w);

}  // namespace ebr
