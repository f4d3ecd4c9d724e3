#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace ebr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by the spectral routines. `abs_eps` gates
/// absolute comparisons (Hermiticity, PSD slack); `rank_rel_eps` is relative
/// to the largest singular value when counting rank.
struct Tolerance {
  double abs_eps = 1e-10;
  double rank_rel_eps = 1e-8;

  Tolerance() = default;
  Tolerance(double abs, double rank_rel) : abs_eps(abs), rank_rel_eps(rank_rel) {
    if (!(abs_eps > 0.0) || !(rank_rel_eps > 0.0)) {
      throw std::invalid_argument("Tolerance: thresholds must be strictly positive");
    }
  }
};

bool is_finite(const Matrix& a);
bool is_finite(const Vector& v);
void require_finite(const Matrix& a, const char* what);
void require_finite(const Vector& v, const char* what);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& a);
Complex trace(const Matrix& a);

/// Kronecker product with blocks a(i,j) * b.
Matrix tensor(const Matrix& a, const Matrix& b);
/// Kronecker product of vectors, entry (i*dim(y) + k) = x(i) y(k).
Vector tensor_vec(const Vector& x, const Vector& y);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// Conjugate-linear in the first argument: inner(x, y) = x^dagger y.
Complex inner(const Vector& x, const Vector& y);

/// Rank-one matrix x y^dagger.
Matrix outer(const Vector& x, const Vector& y);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, vectors.col(k) <-> values(k)
};

struct UnitaryEigen {
  Vector values;  // unimodular, sorted by principal argument in [0, 2*pi)
  Matrix vectors;
  double min_gap = 0.0;    // smallest pairwise eigenvalue separation
  bool degenerate = false; // min_gap fell below the tolerance
};

/// Spectral decomposition of a Hermitian matrix. Rejects inputs with
/// ||A - A^dagger||_F above tol.abs_eps.
HermitianEigen hermitian_eigen(const Matrix& a, const Tolerance& tol = {});

/// Spectral decomposition of a unitary via its Schur form. Rejects inputs
/// with ||A^dagger A - I||_F above 1e-9.
UnitaryEigen unitary_eigen(const Matrix& a, const Tolerance& tol = {});

/// Number of singular values exceeding tol.rank_rel_eps times the largest one.
int rank_with_tol(const Matrix& a, const Tolerance& tol = {});

/// True iff the Hermitian input has min eigenvalue >= -tol.abs_eps.
bool is_psd(const Matrix& a, const Tolerance& tol = {});

}  // namespace ebr
