#include "ebr/mub.hpp"

#include "ebr/weyl.hpp"

#include <algorithm>
#include <cmath>

namespace ebr {

MubFamily::MubFamily(int d_, std::vector<std::vector<Vector>> bases_)
    : d(d_), bases(std::move(bases_)) {
  if (d < 2) throw std::invalid_argument("MubFamily: d must be >= 2");
  if (bases.size() != static_cast<size_t>(d) + 1) {
    throw std::invalid_argument("MubFamily: expected d+1 bases");
  }
  for (const auto& basis : bases) {
    if (basis.size() != static_cast<size_t>(d)) {
      throw std::invalid_argument("MubFamily: each basis must have d vectors");
    }
    for (const auto& v : basis) {
      if (v.size() != d) throw std::invalid_argument("MubFamily: vector dimension mismatch");
      require_finite(v, "MubFamily");
    }
  }
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; static_cast<long long>(p) * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

namespace {

Vector phase_fixed(Vector v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-6) {
      v *= std::conj(v(k)) / std::abs(v(k));
      break;
    }
  }
  return v;
}

}  // namespace

MubFamily construct_mub(int d) {
  if (!is_prime(d)) {
    throw std::invalid_argument("construct_mub: d must be prime");
  }
  std::vector<std::vector<Vector>> bases;
  bases.reserve(static_cast<size_t>(d) + 1);

  std::vector<Vector> computational;
  for (int k = 0; k < d; ++k) {
    Vector e = Vector::Zero(d);
    e(k) = 1.0;
    computational.push_back(std::move(e));
  }
  bases.push_back(std::move(computational));

  const Matrix u = shift_matrix(d);
  const Matrix v = clock_matrix(d);
  Matrix vk = Matrix::Identity(d, d);
  for (int k = 0; k < d; ++k) {
    // U V^k has simple spectrum for prime d, so the eigenbasis is unique up
    // to phases and ordering; sorting by eigenvalue argument plus phase
    // fixing makes it deterministic.
    auto eig = unitary_eigen(u * vk);
    std::vector<Vector> basis;
    basis.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) basis.push_back(phase_fixed(eig.vectors.col(c)));
    bases.push_back(std::move(basis));
    vk = vk * v;
  }
  return MubFamily(d, std::move(bases));
}

UnbiasedReport verify_unbiased(const MubFamily& f) {
  UnbiasedReport rep;
  const double target = 1.0 / f.d;
  const size_t nb = f.bases.size();
  for (size_t a = 0; a < nb; ++a) {
    for (size_t b = a; b < nb; ++b) {
      for (int i = 0; i < f.d; ++i) {
        for (int j = 0; j < f.d; ++j) {
          if (a == b && j < i) continue;
          const Complex ip = f.bases[a][static_cast<size_t>(i)].dot(f.bases[b][static_cast<size_t>(j)]);
          const double overlap2 = std::norm(ip);
          if (a == b) {
            const double want = i == j ? 1.0 : 0.0;
            rep.max_ortho_dev = std::max(rep.max_ortho_dev, std::abs(std::abs(ip) - want));
            rep.max_projection_dev = std::max(rep.max_projection_dev, std::abs(overlap2 - want));
          } else {
            rep.max_unbiased_dev = std::max(rep.max_unbiased_dev, std::abs(overlap2 - target));
            rep.max_projection_dev = std::max(rep.max_projection_dev, std::abs(overlap2 - target));
          }
        }
      }
    }
  }
  return rep;
}

MubChannelResult mub_channel(const MubFamily& f) {
  const int d = f.d;
  const double kraus_scale = 1.0 / std::sqrt(d + 1.0);
  const double pair_scale = 1.0 / std::pow(d + 1.0, 0.25);
  std::vector<Matrix> kraus;
  std::vector<std::pair<Vector, Vector>> pairs;
  kraus.reserve(static_cast<size_t>(d) * (d + 1));
  pairs.reserve(kraus.capacity());
  for (const auto& basis : f.bases) {
    for (const auto& v : basis) {
      kraus.push_back(kraus_scale * (v * v.adjoint()));
      pairs.emplace_back(pair_scale * v, pair_scale * v);
    }
  }
  return MubChannelResult{KrausChannel(d, d, std::move(kraus)),
                          RankOneKrausFamily(d, std::move(pairs))};
}

Lemma52Basis lemma52_basis(const MubFamily& f) {
  const int d = f.d;
  Lemma52Basis out;
  out.projections.reserve(static_cast<size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    const auto& v = f.bases[0][static_cast<size_t>(j)];
    out.projections.push_back(v * v.adjoint());
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = 0; j < d - 1; ++j) {
      const auto& v = f.bases[static_cast<size_t>(i)][static_cast<size_t>(j)];
      out.projections.push_back(v * v.adjoint());
    }
  }
  const int n = d * d;
  Matrix gram(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      gram(a, b) = (out.projections[static_cast<size_t>(a)].adjoint() *
                    out.projections[static_cast<size_t>(b)])
                       .trace();
    }
  }
  out.gram_rank = rank_with_tol(gram);
  return out;
}

}  // namespace ebr
