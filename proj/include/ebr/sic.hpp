#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"

#include <vector>

namespace ebr {

/// Candidate generating vector for a Weyl-covariant SIC POVM; unit within 1e-10.
struct Fiducial {
  int d = 2;
  Vector w;

  Fiducial(int d_, Vector w_);
};

/// Exactly d^2 vectors in C^d, the would-be equiangular family.
struct SicCandidate {
  int d = 2;
  std::vector<Vector> vectors;

  SicCandidate(int d_, std::vector<Vector> vectors_);
};

/// Extrema of |<w_i, w_j>|^2 over ordered pairs i != j, plus the worst norm
/// deviation from 1. The equiangular target is 1/(d+1).
struct AngleReport {
  double min_offdiag = 0.0;
  double max_offdiag = 0.0;
  double max_norm_dev = 0.0;
  double target = 0.0;

  double max_angle_dev() const;
};

struct SicVerification {
  bool povm_sum_ok = false;
  bool info_complete_ok = false;
  bool symmetric_ok = false;
  bool rank_one_ok = false;
  double povm_sum_dev = 0.0;
  double lambda_dev = 0.0;  // spread of tr(R_i^2)
  double mu_dev = 0.0;      // spread of tr(R_i R_j), i != j
  int gram_rank = 0;

  bool all_ok() const { return povm_sum_ok && info_complete_ok && symmetric_ok && rank_one_ok; }
};

struct ForcedAngle {
  double value = 0.0;     // (1 - t) / d
  bool consistent = false;  // equals 1/(d+1), i.e. t = 1/(d+1)
};

/// The d^2 vectors W_ij w in row-major (i, j) order.
SicCandidate weyl_orbit(const Fiducial& f);

AngleReport angle_report(const SicCandidate& c);

/// Checks the four POVM clauses with R_i = (1/d) w_i w_i^dagger:
/// sum to identity, span M_d, constant pair overlaps, rank one.
SicVerification verify_sic_povm(const SicCandidate& c, double tol = 1e-8);

/// Worst-case deviation of (1/d) sum_i P_i E P_i from (E + tr(E) I)/(d+1)
/// over all canonical matrix units E, with P_i = w_i w_i^dagger.
double resolution_identity_deviation(const SicCandidate& c);
bool resolution_identity_check(const SicCandidate& c, double tol = 1e-8);

/// Recovers the equiangular unit vectors from a d^2-term rank-one Kraus
/// realization of the zee channel, verifying the conditions the realization
/// forces: tr-norm (||x||*||y||)^2 = 1/d per factor and Cauchy-Schwarz
/// equality |<x, y>| = ||x|| ||y||. Throws (naming the violated condition)
/// when the family does not realize zee or a forced condition fails.
SicCandidate extract_equiangular(const RankOneKrausFamily& family, double tol = 1e-8);

/// (1-t)/d, the off-diagonal overlap a positive rank-one d^2-term realization
/// of the depolarizing map would force, with a flag for the only consistent
/// case t = 1/(d+1).
ForcedAngle forced_angle(int d, double t);

/// sum over ordered pairs i != j of |<w_i, w_j>|^4; rejects non-unit vectors
/// beyond 1e-8.
double frame_potential(const SicCandidate& c);

}  // namespace ebr
