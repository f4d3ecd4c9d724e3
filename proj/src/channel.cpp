#include "ebr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ebr {

KrausChannel::KrausChannel(int d_in_, int d_out_, std::vector<Matrix> kraus_)
    : d_in(d_in_), d_out(d_out_), kraus(std::move(kraus_)) {
  if (d_in < 1 || d_out < 1) {
    throw std::invalid_argument("KrausChannel: dimensions must be positive");
  }
  if (kraus.empty()) {
    throw std::invalid_argument("KrausChannel: at least one Kraus operator required");
  }
  for (const auto& r : kraus) {
    if (r.rows() != d_out || r.cols() != d_in) {
      throw std::invalid_argument("KrausChannel: Kraus operator has wrong dimensions");
    }
    require_finite(r, "KrausChannel");
  }
}

KrausChannel KrausChannel::identity(int d) {
  return KrausChannel(d, d, {Matrix::Identity(d, d)});
}

ChoiMatrix::ChoiMatrix(int d_in_, int d_out_, Matrix m) : d_in(d_in_), d_out(d_out_), mat(std::move(m)) {
  const Eigen::Index n = static_cast<Eigen::Index>(d_in) * d_out;
  if (d_in < 1 || d_out < 1 || mat.rows() != n || mat.cols() != n) {
    throw std::invalid_argument("ChoiMatrix: matrix must be (d_in*d_out) square");
  }
  require_finite(mat, "ChoiMatrix");
}

RankOneKrausFamily::RankOneKrausFamily(int d_, std::vector<std::pair<Vector, Vector>> pairs_)
    : d(d_), pairs(std::move(pairs_)) {
  if (d < 1) throw std::invalid_argument("RankOneKrausFamily: dimension must be positive");
  for (const auto& [x, y] : pairs) {
    if (x.size() != d || y.size() != d) {
      throw std::invalid_argument("RankOneKrausFamily: vector of wrong dimension");
    }
    require_finite(x, "RankOneKrausFamily");
    require_finite(y, "RankOneKrausFamily");
  }
}

MatrixMap::MatrixMap(int d_in, int d_out, std::function<Matrix(const Matrix&)> action)
    : d_in_(d_in), d_out_(d_out), action_(std::move(action)) {
  if (d_in_ < 1 || d_out_ < 1) {
    throw std::invalid_argument("MatrixMap: dimensions must be positive");
  }
}

Matrix MatrixMap::operator()(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_) {
    throw std::invalid_argument("MatrixMap: input must be d_in square");
  }
  return action_(x);
}

Vector choi_vec(const Matrix& b) {
  const Eigen::Index d_out = b.rows(), d_in = b.cols();
  Vector w(d_in * d_out);
  for (Eigen::Index i = 0; i < d_in; ++i) {
    w.segment(i * d_out, d_out) = b.col(i);
  }
  return w;
}

Matrix choi_unvec(const Vector& w, int d_out, int d_in) {
  if (w.size() != static_cast<Eigen::Index>(d_out) * d_in) {
    throw std::invalid_argument("choi_unvec: vector length does not match dimensions");
  }
  Matrix b(d_out, d_in);
  for (int i = 0; i < d_in; ++i) {
    b.col(i) = w.segment(static_cast<Eigen::Index>(i) * d_out, d_out);
  }
  return b;
}

Matrix KrausChannel::apply(const Matrix& x) const {
  if (x.rows() != d_in || x.cols() != d_in) {
    throw std::invalid_argument("KrausChannel::apply: input must be d_in square");
  }
  Matrix out = Matrix::Zero(d_out, d_out);
  for (const auto& r : kraus) {
    out += r * x * r.adjoint();
  }
  return out;
}

ChoiMatrix choi(const KrausChannel& ch) {
  const Eigen::Index n = static_cast<Eigen::Index>(ch.d_in) * ch.d_out;
  Matrix c = Matrix::Zero(n, n);
  for (const auto& r : ch.kraus) {
    Vector w = choi_vec(r);
    c.noalias() += w * w.adjoint();
  }
  return ChoiMatrix(ch.d_in, ch.d_out, std::move(c));
}

ChoiMatrix choi(const MatrixMap& map) {
  const int d_in = map.d_in(), d_out = map.d_out();
  const Eigen::Index n = static_cast<Eigen::Index>(d_in) * d_out;
  Matrix c(n, n);
  Matrix unit = Matrix::Zero(d_in, d_in);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      unit(i, j) = 1.0;
      c.block(static_cast<Eigen::Index>(i) * d_out, static_cast<Eigen::Index>(j) * d_out, d_out, d_out) =
          map(unit);
      unit(i, j) = 0.0;
    }
  }
  return ChoiMatrix(d_in, d_out, std::move(c));
}

int choi_rank(const KrausChannel& ch, const Tolerance& tol) { return rank_with_tol(choi(ch).mat, tol); }
int choi_rank(const ChoiMatrix& c, const Tolerance& tol) { return rank_with_tol(c.mat, tol); }

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.d_in != b.d_in || a.d_out != b.d_out) {
    throw std::invalid_argument("choi_distance: channel dimensions differ");
  }
  return (a.mat - b.mat).norm();
}

KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerance& tol) {
  auto eig = hermitian_eigen(c.mat, Tolerance(std::max(tol.abs_eps, 1e-9), tol.rank_rel_eps));
  const double top = eig.values.size() ? std::abs(eig.values(eig.values.size() - 1)) : 0.0;
  const double neg_slack = std::max(tol.abs_eps, tol.rank_rel_eps * top);
  if (eig.values.size() && eig.values(0) < -neg_slack) {
    throw std::invalid_argument("kraus_from_choi: Choi matrix is not positive semidefinite");
  }
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > tol.rank_rel_eps * top) {
      kraus.push_back(std::sqrt(eig.values(k)) *
                      choi_unvec(eig.vectors.col(k), c.d_out, c.d_in));
    }
  }
  if (kraus.empty()) {
    throw std::invalid_argument("kraus_from_choi: zero map has no Kraus realization");
  }
  return KrausChannel(c.d_in, c.d_out, std::move(kraus));
}

bool is_trace_preserving(const KrausChannel& ch, const Tolerance& tol) {
  Matrix s = Matrix::Zero(ch.d_in, ch.d_in);
  for (const auto& r : ch.kraus) s += r.adjoint() * r;
  return (s - Matrix::Identity(ch.d_in, ch.d_in)).norm() <= tol.abs_eps * ch.d_in;
}

bool is_unital(const KrausChannel& ch, const Tolerance& tol) {
  if (ch.d_in != ch.d_out) return false;
  Matrix s = Matrix::Zero(ch.d_out, ch.d_out);
  for (const auto& r : ch.kraus) s += r * r.adjoint();
  return (s - Matrix::Identity(ch.d_out, ch.d_out)).norm() <= tol.abs_eps * ch.d_out;
}

bool is_cp(const ChoiMatrix& c, const Tolerance& tol) { return is_psd(c.mat, tol); }
bool is_cp(const KrausChannel& ch, const Tolerance& tol) { return is_cp(choi(ch), tol); }

ChoiMatrix partial_transpose(const ChoiMatrix& c) {
  Matrix out(c.mat.rows(), c.mat.cols());
  for (int i = 0; i < c.d_in; ++i) {
    for (int j = 0; j < c.d_in; ++j) {
      out.block(static_cast<Eigen::Index>(i) * c.d_out, static_cast<Eigen::Index>(j) * c.d_out,
                c.d_out, c.d_out) =
          c.mat
              .block(static_cast<Eigen::Index>(i) * c.d_out, static_cast<Eigen::Index>(j) * c.d_out,
                     c.d_out, c.d_out)
              .transpose();
    }
  }
  return ChoiMatrix(c.d_in, c.d_out, std::move(out));
}

bool ppt_check(const ChoiMatrix& c, const Tolerance& tol) {
  return is_psd(partial_transpose(c).mat, tol);
}

bool ppt_check(const KrausChannel& ch, const Tolerance& tol) { return ppt_check(choi(ch), tol); }

MatrixMap depolarizing_action(int d, double t) {
  if (d < 2) throw std::invalid_argument("depolarizing_action: d must be >= 2");
  if (!std::isfinite(t)) throw std::invalid_argument("depolarizing_action: t must be finite");
  return MatrixMap(d, d, [d, t](const Matrix& x) -> Matrix {
    return t * x + ((1.0 - t) / d) * x.trace() * Matrix::Identity(d, d);
  });
}

KrausChannel depolarizing(const DepolarizingParams& p) {
  const double lo = -1.0 / (static_cast<double>(p.d) * p.d - 1.0);
  if (p.t < lo - 1e-12 || p.t > 1.0 + 1e-12) {
    throw std::invalid_argument(
        "depolarizing: t outside the completely positive range [-1/(d^2-1), 1]; "
        "use depolarizing_action for the bare linear map");
  }
  return kraus_from_choi(choi(depolarizing_action(p.d, p.t)));
}

KrausChannel zee_channel(int d) { return depolarizing({d, 1.0 / (d + 1.0)}); }
MatrixMap zee_action(int d) { return depolarizing_action(d, 1.0 / (d + 1.0)); }

namespace {

__int128 cross(const Rational& a, const Rational& b) {
  // sign of a - b for positive denominators
  return static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::optional<Rational> Rational::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      size_t used = 0;
      const std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) return std::nullopt;
      return Rational(n, 1);
    }
    size_t used_n = 0, used_d = 0;
    const std::int64_t n = std::stoll(text.substr(0, slash), &used_n);
    const std::int64_t d = std::stoll(text.substr(slash + 1), &used_d);
    if (used_n != slash || used_d != text.size() - slash - 1 || d == 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool operator==(const Rational& a, const Rational& b) { return cross(a, b) == 0; }
bool operator<(const Rational& a, const Rational& b) { return cross(a, b) < 0; }
bool operator<=(const Rational& a, const Rational& b) { return cross(a, b) <= 0; }

DepolarizingClass classify_depolarizing(int d, const Rational& t) {
  if (d < 2) throw std::invalid_argument("classify_depolarizing: d must be >= 2");
  const Rational lo_cp(-1, static_cast<std::int64_t>(d) * d - 1);
  const Rational lo_tr(-1, d - 1);
  const Rational hi_eb(1, d + 1);
  const Rational one(1, 1);
  DepolarizingClass out;
  out.is_channel = lo_cp <= t && t <= one;
  out.is_transpose_channel = lo_tr <= t && t <= hi_eb;
  out.is_eb = lo_cp <= t && t <= hi_eb;
  return out;
}

DepolarizingClass classify_depolarizing(int d, double t) {
  if (d < 2) throw std::invalid_argument("classify_depolarizing: d must be >= 2");
  constexpr double guard = 1e-12;
  const double lo_cp = -1.0 / (static_cast<double>(d) * d - 1.0);
  const double lo_tr = -1.0 / (d - 1.0);
  const double hi_eb = 1.0 / (d + 1.0);
  DepolarizingClass out;
  out.is_channel = t >= lo_cp - guard && t <= 1.0 + guard;
  out.is_transpose_channel = t >= lo_tr - guard && t <= hi_eb + guard;
  out.is_eb = t >= lo_cp - guard && t <= hi_eb + guard;
  return out;
}

MatrixMap transpose_action(int d) {
  return MatrixMap(d, d, [](const Matrix& x) -> Matrix { return x.transpose(); });
}

MatrixMap transpose_compose_action(const KrausChannel& ch) {
  return MatrixMap(ch.d_in, ch.d_out,
                   [ch](const Matrix& x) -> Matrix { return ch.apply(x).transpose(); });
}

KrausChannel compose_transpose(const KrausChannel& ch) {
  return kraus_from_choi(choi(transpose_compose_action(ch)));
}

KrausChannel compose_unitary(const KrausChannel& ch, const Matrix& u) {
  if (u.rows() != ch.d_out || u.cols() != ch.d_out) {
    throw std::invalid_argument("compose_unitary: U must be d_out square");
  }
  if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > 1e-9) {
    throw std::invalid_argument("compose_unitary: U is not unitary within 1e-9");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus.size());
  for (const auto& r : ch.kraus) kraus.push_back(u * r);
  return KrausChannel(ch.d_in, ch.d_out, std::move(kraus));
}

KrausChannel family_to_channel(const RankOneKrausFamily& fam) {
  if (fam.pairs.empty()) {
    throw std::invalid_argument("family_to_channel: empty family");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(fam.pairs.size());
  for (const auto& [x, y] : fam.pairs) kraus.push_back(outer(x, y));
  return KrausChannel(fam.d, fam.d, std::move(kraus));
}

ChoiMatrix family_choi(const RankOneKrausFamily& fam) {
  const Eigen::Index n = static_cast<Eigen::Index>(fam.d) * fam.d;
  Matrix c = Matrix::Zero(n, n);
  for (const auto& [x, y] : fam.pairs) {
    Vector w = tensor_vec(y.conjugate(), x);
    c.noalias() += w * w.adjoint();
  }
  return ChoiMatrix(fam.d, fam.d, std::move(c));
}

RankOneKrausFamily family_compose_transpose(const RankOneKrausFamily& fam) {
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(fam.pairs.size());
  for (const auto& [x, y] : fam.pairs) pairs.emplace_back(x.conjugate(), y);
  return RankOneKrausFamily(fam.d, std::move(pairs));
}

RankOneKrausFamily family_compose_unitary(const RankOneKrausFamily& fam, const Matrix& u) {
  if (u.rows() != fam.d || u.cols() != fam.d) {
    throw std::invalid_argument("family_compose_unitary: U must be d square");
  }
  if ((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > 1e-9) {
    throw std::invalid_argument("family_compose_unitary: U is not unitary within 1e-9");
  }
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(fam.pairs.size());
  for (const auto& [x, y] : fam.pairs) pairs.emplace_back(u * x, y);
  return RankOneKrausFamily(fam.d, std::move(pairs));
}

RankOneKrausFamily family_from_channel(const KrausChannel& ch, const Tolerance& tol) {
  if (ch.d_in != ch.d_out) {
    throw std::invalid_argument("family_from_channel: channel must be square");
  }
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(ch.kraus.size());
  for (size_t k = 0; k < ch.kraus.size(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(ch.kraus[k], Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv.size() > 1 && sv(1) > tol.rank_rel_eps * sv(0)) {
      throw std::invalid_argument("family_from_channel: Kraus operator " + std::to_string(k) +
                                  " has rank greater than one");
    }
    const double s = sv.size() ? std::sqrt(sv(0)) : 0.0;
    pairs.emplace_back(s * svd.matrixU().col(0), s * svd.matrixV().col(0));
  }
  return RankOneKrausFamily(ch.d_in, std::move(pairs));
}

Matrix symmetric_projection(int d) {
  if (d < 1) throw std::invalid_argument("symmetric_projection: d must be >= 1");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix swap = Matrix::Zero(n, n);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      swap(static_cast<Eigen::Index>(k) * d + l, static_cast<Eigen::Index>(l) * d + k) = 1.0;
    }
  }
  return 0.5 * (Matrix::Identity(n, n) + swap);
}

double sic_symmetric_decomposition_deviation(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("sic_symmetric_decomposition: empty vector list");
  const int d = static_cast<int>(vectors.front().size());
  if (vectors.size() != static_cast<size_t>(d) * d) {
    throw std::invalid_argument("sic_symmetric_decomposition: expected exactly d^2 vectors");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& v : vectors) {
    if (v.size() != d) {
      throw std::invalid_argument("sic_symmetric_decomposition: inconsistent vector dimension");
    }
    if (std::abs(v.norm() - 1.0) > 1e-8) {
      throw std::invalid_argument("sic_symmetric_decomposition: vectors must be unit norm");
    }
    Vector w = tensor_vec(v, v);
    sum.noalias() += w * w.adjoint();
  }
  const double scale = (d + 1.0) / (2.0 * d);
  return (symmetric_projection(d) - scale * sum).norm();
}

bool sic_symmetric_decomposition_check(const std::vector<Vector>& vectors, double tol) {
  const int d = static_cast<int>(vectors.empty() ? 0 : vectors.front().size());
  return sic_symmetric_decomposition_deviation(vectors) <= tol * d;
}

}  // namespace ebr
