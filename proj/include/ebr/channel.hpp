#pragma once

#include "ebr/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ebr {

/// A channel as a list of Kraus operators, each d_out x d_in. Trace
/// preservation is not enforced here: the same type carries non-TP maps
/// (e.g. optimizer iterates); use is_trace_preserving to check.
struct KrausChannel {
  int d_in = 0;
  int d_out = 0;
  std::vector<Matrix> kraus;

  KrausChannel(int d_in_, int d_out_, std::vector<Matrix> kraus_);
  static KrausChannel identity(int d);

  /// sum_k R_k X R_k^dagger for a d_in-square X.
  Matrix apply(const Matrix& x) const;
};

/// The block matrix [Phi(E_ij)], stored as sum_ij E_ij (x) Phi(E_ij).
/// Under this convention a rank-one factor B = x y^dagger contributes the
/// product vector conj(y) (x) x; see choi_vec.
struct ChoiMatrix {
  int d_in = 0;
  int d_out = 0;
  Matrix mat;

  ChoiMatrix(int d_in_, int d_out_, Matrix m);
};

/// Rank-one Kraus factors B_k = x_k y_k^dagger given as vector pairs.
/// Vectors need not be unit; only the products B_k matter to the channel.
struct RankOneKrausFamily {
  int d = 0;
  std::vector<std::pair<Vector, Vector>> pairs;

  RankOneKrausFamily(int d_, std::vector<std::pair<Vector, Vector>> pairs_);
  int size() const { return static_cast<int>(pairs.size()); }
};

struct DepolarizingParams {
  int d = 2;
  double t = 0.0;
};

/// Linear-map evaluator with explicit dimensions, for maps that need not be
/// completely positive (transpose compositions, depolarizing outside the CP
/// range).
class MatrixMap {
 public:
  MatrixMap(int d_in, int d_out, std::function<Matrix(const Matrix&)> action);
  Matrix operator()(const Matrix& x) const;
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }

 private:
  int d_in_;
  int d_out_;
  std::function<Matrix(const Matrix&)> action_;
};

// -- Choi vectorization -------------------------------------------------

/// Stacks B (d_out x d_in) into the length d_in*d_out vector w with
/// w(i*d_out + p) = B(p, i), so that choi(B . B^dagger) = w w^dagger.
Vector choi_vec(const Matrix& b);
Matrix choi_unvec(const Vector& w, int d_out, int d_in);

// -- Core channel operations --------------------------------------------

ChoiMatrix choi(const KrausChannel& ch);
ChoiMatrix choi(const MatrixMap& map);
int choi_rank(const KrausChannel& ch, const Tolerance& tol = {});
int choi_rank(const ChoiMatrix& c, const Tolerance& tol = {});
double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);

/// Canonical minimal Kraus realization via the spectral decomposition of the
/// Choi matrix. Throws when the Choi has an eigenvalue below -tol (not CP).
KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerance& tol = {});

bool is_trace_preserving(const KrausChannel& ch, const Tolerance& tol = {});
bool is_unital(const KrausChannel& ch, const Tolerance& tol = {});
bool is_cp(const ChoiMatrix& c, const Tolerance& tol = {});
bool is_cp(const KrausChannel& ch, const Tolerance& tol = {});

/// Transpose on the second tensor factor of the Choi matrix.
ChoiMatrix partial_transpose(const ChoiMatrix& c);
bool ppt_check(const ChoiMatrix& c, const Tolerance& tol = {});
bool ppt_check(const KrausChannel& ch, const Tolerance& tol = {});

// -- Depolarizing family -------------------------------------------------

/// X -> t X + (1-t) tr(X) I / d, defined for every real t.
MatrixMap depolarizing_action(int d, double t);

/// Kraus realization of the depolarizing map; requires t in the CP range
/// [-1/(d^2-1), 1].
KrausChannel depolarizing(const DepolarizingParams& p);

/// The channel X -> (X + tr(X) I) / (d+1), i.e. depolarizing at t = 1/(d+1).
KrausChannel zee_channel(int d);
MatrixMap zee_action(int d);

/// Exact fraction for boundary-exact interval classification.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  static std::optional<Rational> parse(const std::string& text);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

bool operator==(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);

struct DepolarizingClass {
  bool is_channel = false;            // t in [-1/(d^2-1), 1]
  bool is_transpose_channel = false;  // t in [-1/(d-1), 1/(d+1)]
  bool is_eb = false;                 // t in [-1/(d^2-1), 1/(d+1)]
};

DepolarizingClass classify_depolarizing(int d, const Rational& t);
/// Floating-point overload; interval membership is decided with a 1e-12 guard
/// around the boundaries.
DepolarizingClass classify_depolarizing(int d, double t);

// -- Channel transforms --------------------------------------------------

/// Kraus realization of X -> Phi(X)^T, obtained from the Choi spectral
/// decomposition. Throws when the composition is not completely positive.
KrausChannel compose_transpose(const KrausChannel& ch);
MatrixMap transpose_compose_action(const KrausChannel& ch);
MatrixMap transpose_action(int d);

/// Kraus operators R_k -> U R_k; U must be unitary within 1e-9.
KrausChannel compose_unitary(const KrausChannel& ch, const Matrix& u);

// -- Rank-one families ---------------------------------------------------

KrausChannel family_to_channel(const RankOneKrausFamily& fam);
ChoiMatrix family_choi(const RankOneKrausFamily& fam);

/// Transport under the transpose map: (x, y) -> (conj(x), y) realizes
/// X -> Phi(X)^T with the same cardinality.
RankOneKrausFamily family_compose_transpose(const RankOneKrausFamily& fam);
/// Transport under Ad_U: (x, y) -> (U x, y).
RankOneKrausFamily family_compose_unitary(const RankOneKrausFamily& fam, const Matrix& u);

/// Splits each Kraus operator as x y^dagger via SVD; throws if any operator
/// has rank above one at the given tolerance.
RankOneKrausFamily family_from_channel(const KrausChannel& ch, const Tolerance& tol = {});

// -- Symmetric subspace ---------------------------------------------------

/// Projection of C^d (x) C^d onto the symmetric subspace; rank d(d+1)/2.
Matrix symmetric_projection(int d);

/// True iff || P_d - (d+1)/(2d) sum_j (v (x) v)(v (x) v)^dagger ||_F <= tol*d
/// over exactly d^2 unit vectors.
bool sic_symmetric_decomposition_check(const std::vector<Vector>& vectors, double tol = 1e-9);
double sic_symmetric_decomposition_deviation(const std::vector<Vector>& vectors);

}  // namespace ebr
