#include "ebr/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace ebr {

namespace {

[[noreturn]] void dim_error(const char* op, long ar, long ac, long br, long bc) {
  throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                              std::to_string(ar) + "x" + std::to_string(ac) + " vs " +
                              std::to_string(br) + "x" + std::to_string(bc) + ")");
}

}  // namespace

bool is_finite(const Matrix& a) { return a.allFinite(); }
bool is_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) dim_error("matmul", a.rows(), a.cols(), b.rows(), b.cols());
  return a * b;
}

Matrix dagger(const Matrix& a) { return a.adjoint(); }

Complex trace(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("trace: matrix must be square");
  }
  return a.trace();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor_vec(const Vector& x, const Vector& y) {
  Vector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out.segment(i * y.size(), y.size()) = x(i) * y;
  }
  return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    dim_error("frobenius_distance", a.rows(), a.cols(), b.rows(), b.cols());
  }
  return (a - b).norm();
}

Complex inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) dim_error("inner", x.size(), 1, y.size(), 1);
  return x.dot(y);
}

Matrix outer(const Vector& x, const Vector& y) { return x * y.adjoint(); }

HermitianEigen hermitian_eigen(const Matrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian_eigen: matrix must be square");
  }
  if ((a - a.adjoint()).norm() > tol.abs_eps) {
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: eigensolver failed to converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

UnitaryEigen unitary_eigen(const Matrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("unitary_eigen: matrix must be square");
  }
  const Eigen::Index n = a.rows();
  if ((a.adjoint() * a - Matrix::Identity(n, n)).norm() > 1e-9) {
    throw std::invalid_argument("unitary_eigen: input is not unitary within 1e-9");
  }

  // A unitary is normal, so its Schur form is diagonal up to roundoff and the
  // Schur vectors are an orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("unitary_eigen: Schur decomposition failed");
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) order[static_cast<size_t>(k)] = k;
  auto principal_arg = [&](Eigen::Index k) {
    double t = std::arg(schur.matrixT()(k, k));
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    return t;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index p, Eigen::Index q) { return principal_arg(p) < principal_arg(q); });

  UnitaryEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = schur.matrixT()(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
    out.vectors.col(k) = schur.matrixU().col(order[static_cast<size_t>(k)]);
  }
  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      out.min_gap = std::min(out.min_gap, std::abs(out.values(p) - out.values(q)));
    }
  }
  out.degenerate = out.min_gap < tol.abs_eps;
  return out;
}

int rank_with_tol(const Matrix& a, const Tolerance& tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = tol.rank_rel_eps * sv(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) ++rank;
  }
  return rank;
}

bool is_psd(const Matrix& a, const Tolerance& tol) {
  auto eig = hermitian_eigen(a, tol);
  return eig.values.size() == 0 || eig.values(0) >= -tol.abs_eps;
}

}  // namespace ebr
