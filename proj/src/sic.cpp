#include "ebr/sic.hpp"

#include "ebr/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ebr {

Fiducial::Fiducial(int d_, Vector w_) : d(d_), w(std::move(w_)) {
  if (d < 2) throw std::invalid_argument("Fiducial: d must be >= 2");
  if (w.size() != d) throw std::invalid_argument("Fiducial: vector dimension mismatch");
  require_finite(w, "Fiducial");
  if (std::abs(w.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("Fiducial: vector must be unit norm within 1e-10");
  }
}

SicCandidate::SicCandidate(int d_, std::vector<Vector> vectors_)
    : d(d_), vectors(std::move(vectors_)) {
  if (d < 2) throw std::invalid_argument("SicCandidate: d must be >= 2");
  if (vectors.size() != static_cast<size_t>(d) * d) {
    throw std::invalid_argument("SicCandidate: expected exactly d^2 vectors");
  }
  for (const auto& v : vectors) {
    if (v.size() != d) throw std::invalid_argument("SicCandidate: vector dimension mismatch");
    require_finite(v, "SicCandidate");
  }
}

double AngleReport::max_angle_dev() const {
  return std::max(std::abs(min_offdiag - target), std::abs(max_offdiag - target));
}

SicCandidate weyl_orbit(const Fiducial& f) {
  std::vector<Vector> vectors;
  vectors.reserve(static_cast<size_t>(f.d) * f.d);
  for (int i = 0; i < f.d; ++i) {
    for (int j = 0; j < f.d; ++j) {
      vectors.push_back(weyl_matrix(f.d, i, j) * f.w);
    }
  }
  return SicCandidate(f.d, std::move(vectors));
}

AngleReport angle_report(const SicCandidate& c) {
  AngleReport rep;
  rep.target = 1.0 / (c.d + 1.0);
  rep.min_offdiag = std::numeric_limits<double>::infinity();
  rep.max_offdiag = 0.0;
  rep.max_norm_dev = 0.0;
  const size_t n = c.vectors.size();
  for (size_t i = 0; i < n; ++i) {
    rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(c.vectors[i].norm() - 1.0));
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double overlap = std::norm(c.vectors[i].dot(c.vectors[j]));
      rep.min_offdiag = std::min(rep.min_offdiag, overlap);
      rep.max_offdiag = std::max(rep.max_offdiag, overlap);
    }
  }
  return rep;
}

SicVerification verify_sic_povm(const SicCandidate& c, double tol) {
  const int d = c.d;
  const int n = d * d;
  SicVerification out;

  Matrix sum = Matrix::Zero(d, d);
  for (const auto& w : c.vectors) sum += (1.0 / d) * (w * w.adjoint());
  out.povm_sum_dev = (sum - Matrix::Identity(d, d)).norm();
  out.povm_sum_ok = out.povm_sum_dev <= tol * d;

  // Gram matrix of the R_i in the Hilbert-Schmidt inner product; full rank
  // means the d^2 operators span M_d.
  Matrix gram(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      gram(a, b) = std::norm(c.vectors[a].dot(c.vectors[b])) / (static_cast<double>(d) * d);
    }
  }
  out.gram_rank = rank_with_tol(gram);
  out.info_complete_ok = out.gram_rank == n;

  double lambda_min = std::numeric_limits<double>::infinity(), lambda_max = 0.0;
  double mu_min = std::numeric_limits<double>::infinity(), mu_max = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double v = std::real(gram(a, b));
      if (a == b) {
        lambda_min = std::min(lambda_min, v);
        lambda_max = std::max(lambda_max, v);
      } else {
        mu_min = std::min(mu_min, v);
        mu_max = std::max(mu_max, v);
      }
    }
  }
  out.lambda_dev = lambda_max - lambda_min;
  out.mu_dev = mu_max - mu_min;
  out.symmetric_ok = out.lambda_dev <= tol && out.mu_dev <= tol;

  out.rank_one_ok = true;  // R_i = (1/d) w_i w_i^dagger by construction
  return out;
}

double resolution_identity_deviation(const SicCandidate& c) {
  const int d = c.d;
  double worst = 0.0;
  Matrix unit = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      unit(k, l) = 1.0;
      Matrix lhs = Matrix::Zero(d, d);
      for (const auto& w : c.vectors) {
        Matrix p = w * w.adjoint();
        lhs += p * unit * p;
      }
      lhs /= d;
      Matrix rhs = (unit + unit.trace() * Matrix::Identity(d, d)) / (d + 1.0);
      worst = std::max(worst, (lhs - rhs).norm());
      unit(k, l) = 0.0;
    }
  }
  return worst;
}

bool resolution_identity_check(const SicCandidate& c, double tol) {
  return resolution_identity_deviation(c) <= tol;
}

SicCandidate extract_equiangular(const RankOneKrausFamily& family, double tol) {
  const int d = family.d;
  if (family.size() != d * d) {
    throw std::invalid_argument("extract_equiangular: family must have exactly d^2 factors, got " +
                                std::to_string(family.size()));
  }
  const double dist = choi_distance(family_choi(family), choi(zee_action(d)));
  if (dist > tol) {
    throw std::invalid_argument("extract_equiangular: family does not realize the zee channel "
                                "(Choi distance " + std::to_string(dist) + ")");
  }

  std::vector<Vector> vectors;
  vectors.reserve(family.pairs.size());
  for (size_t k = 0; k < family.pairs.size(); ++k) {
    const auto& [x, y] = family.pairs[k];
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
      throw std::invalid_argument("extract_equiangular: factor " + std::to_string(k) +
                                  " has a zero vector");
    }
    // Cauchy-Schwarz equality forces x parallel to y (positive factor up to a
    // phase the channel cannot see).
    const double align = std::abs(std::abs(x.dot(y)) - nx * ny);
    if (align > tol) {
      throw std::invalid_argument("extract_equiangular: factor " + std::to_string(k) +
                                  " violates the Cauchy-Schwarz equality condition by " +
                                  std::to_string(align));
    }
    // In the positive form B_k = v v^dagger the realization forces
    // ||v||^4 = 1/d, i.e. (||x|| ||y||)^2 = 1/d for any scale split.
    const double norm4 = nx * nx * ny * ny;
    if (std::abs(norm4 - 1.0 / d) > tol) {
      throw std::invalid_argument("extract_equiangular: factor " + std::to_string(k) +
                                  " violates the forced norm condition |(||x|| ||y||)^2 - 1/d| = " +
                                  std::to_string(std::abs(norm4 - 1.0 / d)));
    }
    vectors.push_back(x / nx);
  }
  return SicCandidate(d, std::move(vectors));
}

ForcedAngle forced_angle(int d, double t) {
  if (d < 2) throw std::invalid_argument("forced_angle: d must be >= 2");
  ForcedAngle out;
  out.value = (1.0 - t) / d;
  out.consistent = std::abs(out.value - 1.0 / (d + 1.0)) <= 1e-12;
  return out;
}

double frame_potential(const SicCandidate& c) {
  for (const auto& v : c.vectors) {
    if (std::abs(v.norm() - 1.0) > 1e-8) {
      throw std::invalid_argument("frame_potential: vectors must be unit norm within 1e-8");
    }
  }
  double sum = 0.0;
  const size_t n = c.vectors.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double overlap2 = std::norm(c.vectors[i].dot(c.vectors[j]));
      sum += overlap2 * overlap2;
    }
  }
  return sum;
}

}  // namespace ebr
