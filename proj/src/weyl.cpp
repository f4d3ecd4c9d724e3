#include "ebr/weyl.hpp"

#include <cmath>
#include <numbers>

namespace ebr {

namespace {

Complex root_of_unity(int d, long long power) {
  long long r = power % d;
  if (r < 0) r += d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

}  // namespace

WeylIndex::WeylIndex(int d_, int i_, int j_) : d(d_), i(i_), j(j_) {
  if (d < 2) throw std::invalid_argument("WeylIndex: d must be >= 2");
  if (i < 0 || i >= d || j < 0 || j >= d) {
    throw std::invalid_argument("WeylIndex: indices must lie in [0, d-1]");
  }
}

Matrix shift_matrix(int d) {
  if (d < 2) throw std::invalid_argument("shift_matrix: d must be >= 2");
  Matrix u = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) u((k + 1) % d, k) = 1.0;
  return u;
}

Matrix clock_matrix(int d) {
  if (d < 2) throw std::invalid_argument("clock_matrix: d must be >= 2");
  Matrix v = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) v(k, k) = root_of_unity(d, k);
  return v;
}

Matrix weyl_matrix(const WeylIndex& idx) {
  // U^i V^j maps e_c to w^{jc} e_{c+i mod d}; filling entries directly keeps
  // the product exact.
  Matrix w = Matrix::Zero(idx.d, idx.d);
  for (int c = 0; c < idx.d; ++c) {
    w((c + idx.i) % idx.d, c) = root_of_unity(idx.d, static_cast<long long>(idx.j) * c);
  }
  return w;
}

Matrix weyl_matrix(int d, int i, int j) { return weyl_matrix(WeylIndex(d, i, j)); }

Matrix weyl_twirl_offdiag(int d, int i, int p, int q) {
  if (p == q) {
    throw std::invalid_argument("weyl_twirl_offdiag: requires p != q");
  }
  if (i < 0 || i >= d || p < 0 || p >= d || q < 0 || q >= d) {
    throw std::invalid_argument("weyl_twirl_offdiag: index out of range");
  }
  Matrix unit = Matrix::Zero(d, d);
  unit(p, q) = 1.0;
  Matrix sum = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    Matrix w = weyl_matrix(d, i, j);
    sum += w.adjoint() * unit * w;
  }
  return sum;
}

KrausChannel covariant_channel(const Vector& x, const Vector& y) {
  return family_to_channel(covariant_family(x, y));
}

RankOneKrausFamily covariant_family(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("covariant_family: x and y must share a dimension");
  }
  const int d = static_cast<int>(x.size());
  if (d < 2) throw std::invalid_argument("covariant_family: dimension must be >= 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix w = weyl_matrix(d, i, j);
      pairs.emplace_back(scale * (w * x), w * y);
    }
  }
  return RankOneKrausFamily(d, std::move(pairs));
}

}  // namespace ebr
