#include "ebr/linalg.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ebr;
namespace tu = ebr::testutil;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("matmul basics and naive oracle") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK((matmul(i2, i2) - i2).norm() == doctest::Approx(0.0));

  Matrix x(2, 2), z(2, 2), expected(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  expected << 0, -1, 1, 0;
  CHECK((matmul(x, z) - expected).norm() < 1e-15);

  auto rng = tu::make_rng(11);
  const Matrix a = tu::random_matrix(3, 3, rng);
  const Matrix b = tu::random_matrix(3, 3, rng);
  Matrix naive = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) naive(i, j) += a(i, k) * b(k, j);
    }
  }
  CHECK((matmul(a, b) - naive).norm() < 1e-13);

  CHECK_THROWS_AS(matmul(tu::random_matrix(2, 3, rng), tu::random_matrix(2, 2, rng)),
                  std::invalid_argument);
}

TEST_CASE("trace, tensor, dagger, distance") {
  for (int d : {2, 3, 5}) {
    CHECK(trace(Matrix::Identity(d, d)).real() == doctest::Approx(d));
  }
  CHECK_THROWS_AS(trace(Matrix::Zero(2, 3)), std::invalid_argument);

  CHECK((tensor(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - Matrix::Identity(4, 4)).norm() ==
        doctest::Approx(0.0));

  auto rng = tu::make_rng(12);
  const Matrix a = tu::random_matrix(3, 4, rng);
  CHECK((dagger(dagger(a)) - a).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(frobenius_distance(Matrix::Zero(2, 2), Matrix::Zero(3, 3)),
                  std::invalid_argument);
  CHECK(frobenius_distance(a, a) == doctest::Approx(0.0));
}

TEST_CASE("tensor mixed-product property") {
  auto rng = tu::make_rng(13);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix a = tu::random_matrix(2, 3, rng);
    const Matrix c = tu::random_matrix(3, 2, rng);
    const Matrix b = tu::random_matrix(2, 2, rng);
    const Matrix d = tu::random_matrix(2, 3, rng);
    CHECK((tensor(a, b) * tensor(c, d) - tensor((a * c).eval(), (b * d).eval())).norm() < 1e-10);
  }
}

TEST_CASE("trace cyclicity") {
  auto rng = tu::make_rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix a = tu::random_matrix(3, 4, rng);
    const Matrix b = tu::random_matrix(4, 3, rng);
    CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-10);
  }
}

TEST_CASE("inner product convention") {
  Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
  e1(0) = 1.0;
  e2(1) = 1.0;
  CHECK(inner(e1, e1) == Complex(1.0, 0.0));
  CHECK(inner(e1, e2) == Complex(0.0, 0.0));

  auto rng = tu::make_rng(15);
  const Vector u = tu::random_vector(4, rng);
  const Vector v = tu::random_vector(4, rng);
  CHECK(std::norm(inner(u, v)) == doctest::Approx(std::norm(inner(v, u))));

  // conjugate-linear in the first argument
  const Complex c(0.3, -1.2);
  CHECK(std::abs(inner((c * u).eval(), v) - std::conj(c) * inner(u, v)) < 1e-12);

  CHECK_THROWS_AS(inner(u, tu::random_vector(3, rng)), std::invalid_argument);
}

TEST_CASE("adjoint identity inner(x, Ay) = inner(A^dagger x, y)") {
  auto rng = tu::make_rng(16);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix a = tu::random_matrix(3, 3, rng);
    const Vector x = tu::random_vector(3, rng);
    const Vector y = tu::random_vector(3, rng);
    CHECK(std::abs(inner(x, (a * y).eval()) - inner((dagger(a) * x).eval(), y)) < 1e-10);
  }
}

TEST_CASE("outer product") {
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  CHECK((outer(e1, e1) - e11).norm() == doctest::Approx(0.0));

  auto rng = tu::make_rng(17);
  const Vector x = tu::random_vector(3, rng);
  const Vector y = tu::random_vector(3, rng);
  CHECK(std::abs(trace(outer(x, y)) - inner(y, x)) < 1e-12);
  CHECK(rank_with_tol(outer(x, y)) == 1);
}

TEST_CASE("hermitian eigendecomposition") {
  auto eig = hermitian_eigen(Matrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(eig.values(k) == doctest::Approx(1.0));

  Matrix d02 = Matrix::Zero(2, 2);
  d02(1, 1) = 2.0;
  auto eig2 = hermitian_eigen(d02);
  CHECK(eig2.values(0) == doctest::Approx(0.0));
  CHECK(eig2.values(1) == doctest::Approx(2.0));
  CHECK(std::abs(eig2.vectors.col(0)(0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig2.vectors.col(1)(1)) == doctest::Approx(1.0));

  // the d = 2 block matrix [E_ij]: eigenvalues are 0 and d only
  Matrix k4 = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) k4(i * 2 + i, j * 2 + j) = 1.0;
  }
  auto eig3 = hermitian_eigen(k4);
  CHECK(eig3.values(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig3.values(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig3.values(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eig3.values(3) == doctest::Approx(2.0));

  auto rng = tu::make_rng(18);
  CHECK_THROWS_AS(hermitian_eigen(tu::random_matrix(3, 3, rng)), std::invalid_argument);
}

TEST_CASE("hermitian eigen reconstruction property") {
  auto rng = tu::make_rng(19);
  for (int d : {2, 4, 6}) {
    const Matrix a = tu::random_hermitian(d, rng);
    auto eig = hermitian_eigen(a);
    Matrix rebuilt = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      rebuilt += eig.values(k) * (eig.vectors.col(k) * eig.vectors.col(k).adjoint());
    }
    CHECK((a - rebuilt).norm() <= 1e-9 * std::max(1.0, a.norm()));
    CHECK((eig.vectors.adjoint() * eig.vectors - Matrix::Identity(d, d)).norm() < 1e-10);
  }
}

TEST_CASE("unitary eigendecomposition") {
  // clock matrix d=3: eigenvalues are the cube roots of unity
  Matrix v3 = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) v3(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
  auto eig = unitary_eigen(v3);
  CHECK_FALSE(eig.degenerate);
  CHECK(std::abs(eig.values(0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(eig.values(1) - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-12);
  CHECK(std::abs(eig.values(2) - std::polar(1.0, 4.0 * std::numbers::pi / 3.0)) < 1e-12);

  auto eig_id = unitary_eigen(Matrix::Identity(2, 2));
  CHECK(eig_id.degenerate);

  // shift d=2: characteristic polynomial is x^2 - 1, eigenvalues {1, -1}
  Matrix u2(2, 2);
  u2 << 0, 1, 1, 0;
  auto eig_u = unitary_eigen(u2);
  CHECK(std::abs(eig_u.values(0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(eig_u.values(1) - Complex(-1.0, 0.0)) < 1e-12);

  auto rng = tu::make_rng(20);
  CHECK_THROWS_AS(unitary_eigen(tu::random_matrix(3, 3, rng)), std::invalid_argument);
}

TEST_CASE("unitary eigen reconstruction for random unitaries") {
  auto rng = tu::make_rng(21);
  for (int d : {2, 3, 5}) {
    const Matrix u = tu::random_unitary(d, rng);
    auto eig = unitary_eigen(u);
    Matrix rebuilt = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      rebuilt += eig.values(k) * (eig.vectors.col(k) * eig.vectors.col(k).adjoint());
    }
    CHECK((u - rebuilt).norm() < 1e-9);
    for (int k = 0; k < d; ++k) CHECK(std::abs(std::abs(eig.values(k)) - 1.0) < 1e-12);
  }
}

TEST_CASE("rank with tolerance") {
  CHECK(rank_with_tol(Matrix::Zero(4, 4)) == 0);

  auto rng = tu::make_rng(22);
  const Vector x = tu::random_vector(3, rng);
  const Vector y = tu::random_vector(3, rng);
  CHECK(rank_with_tol(outer(x, y)) == 1);

  // Choi matrix of the completely depolarizing qubit channel is I/2
  CHECK(rank_with_tol((0.5 * Matrix::Identity(4, 4)).eval()) == 4);

  const Matrix a = tu::random_matrix(4, 4, rng);
  CHECK(rank_with_tol(a) == rank_with_tol(dagger(a)));
}

TEST_CASE("positive semidefinite test") {
  CHECK(is_psd(Matrix::Identity(3, 3)));
  Matrix d1m1 = Matrix::Zero(2, 2);
  d1m1(0, 0) = 1.0;
  d1m1(1, 1) = -1.0;
  CHECK_FALSE(is_psd(d1m1));

  // Choi of the depolarizing map at the CP boundary t = -1/(d^2-1), d = 2:
  // t [E_ij] + (1-t)/d I has min eigenvalue exactly 0.
  const double t = -1.0 / 3.0;
  Matrix k4 = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) k4(i * 2 + i, j * 2 + j) = 1.0;
  }
  const Matrix choi_boundary = t * k4 + ((1.0 - t) / 2.0) * Matrix::Identity(4, 4);
  CHECK(is_psd(choi_boundary));
  auto eig = hermitian_eigen(choi_boundary);
  CHECK(std::abs(eig.values(0)) < 1e-12);

  auto rng = tu::make_rng(23);
  CHECK_THROWS_AS(is_psd(tu::random_matrix(3, 3, rng)), std::invalid_argument);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(Tolerance(0.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(Tolerance(1e-10, -1.0), std::invalid_argument);
}

TEST_SUITE_END();
