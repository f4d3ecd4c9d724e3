#include "ebr/families.hpp"

#include "ebr/weyl.hpp"

#include <cmath>
#include <numbers>

namespace ebr {

namespace {

constexpr double kRangeGuard = 1e-12;

void check_range(double t, double hi, const char* who) {
  if (!(t >= -kRangeGuard && t <= hi + kRangeGuard)) {
    throw std::invalid_argument(std::string(who) + ": t out of range");
  }
}

double safe_sqrt(double v, const char* who) {
  if (v < -kRangeGuard) {
    throw std::invalid_argument(std::string(who) + ": negative radicand");
  }
  return std::sqrt(std::max(v, 0.0));
}

}  // namespace

std::pair<double, double> d2_ab(double t) {
  check_range(t, 1.0 / 3.0, "d2_ab");
  const double p = safe_sqrt((1.0 + 3.0 * t) / 2.0, "d2_ab");
  const double q = safe_sqrt((1.0 - t) / 2.0, "d2_ab");
  return {0.5 * (p + q), 0.5 * (p - q)};
}

std::pair<double, double> d2_rs(double a, double b) {
  const double plus = safe_sqrt((1.0 + a) * (1.0 + a) - b * b, "d2_rs");
  const double minus = safe_sqrt((1.0 - a) * (1.0 - a) - b * b, "d2_rs");
  return {0.5 * (plus + minus), 0.5 * (plus - minus)};
}

DimTwoParams d2_params(double t, DimTwoBranch branch) {
  check_range(t, 1.0 / 3.0, "d2_params");
  DimTwoParams out;
  out.t = t;
  out.theta = branch == DimTwoBranch::primary ? std::numbers::pi / 4.0 : 5.0 * std::numbers::pi / 4.0;
  out.theta1 = 0.0;
  out.theta2 = out.theta;

  // With p = sqrt((1+3t)/2), q = sqrt((1-t)/2) the radicands factor as
  // (1 +- a)^2 - b^2 = (1 +- p)(1 +- q). The factored form matters at the
  // t = 1/3 branch point, where 1 - p must vanish exactly: evaluating it as
  // (1-3t)/(2(1+p)) and snapping the fp-noise of 1-3t to zero keeps the
  // endpoint vectors accurate to machine precision instead of sqrt(eps).
  const double pp = safe_sqrt((1.0 + 3.0 * t) / 2.0, "d2_params");
  const double qq = safe_sqrt((1.0 - t) / 2.0, "d2_params");
  double gamma = 1.0 - 3.0 * t;
  if (std::abs(gamma) <= 1e-11) gamma = 0.0;
  const double one_m_p = gamma / (2.0 * (1.0 + pp));
  const double plus_rad = (1.0 + pp) * (1.0 + qq);
  const double minus_rad = one_m_p * (1.0 - qq);

  out.a = 0.5 * (pp + qq);
  out.b = 0.5 * (pp - qq);
  const double plus = safe_sqrt(plus_rad, "d2_params");
  const double minus = safe_sqrt(minus_rad, "d2_params");
  out.r = 0.5 * (plus + minus);
  out.s = 0.5 * (plus - minus);
  return out;
}

std::pair<Vector, Vector> d2_xy(double t, DimTwoBranch branch) {
  const DimTwoParams p = d2_params(t, branch);
  Vector x(2), y(2);
  x << p.r, safe_sqrt(1.0 - p.r * p.r, "d2_xy") * std::polar(1.0, p.theta);
  y << p.s * std::polar(1.0, p.theta1), safe_sqrt(1.0 - p.s * p.s, "d2_xy") * std::polar(1.0, p.theta2);
  return {x, y};
}

RankOneKrausFamily d2_family(double t, DimTwoBranch branch) {
  auto [x, y] = d2_xy(t, branch);
  return covariant_family(x, y);
}

double d2_choi_distance(double t, DimTwoBranch branch) {
  return choi_distance(family_choi(d2_family(t, branch)), choi(depolarizing_action(2, t)));
}

bool d2_family_check(double t, double tol, DimTwoBranch branch) {
  return d2_choi_distance(t, branch) <= tol;
}

std::array<double, 2> d2_product_residuals(double t, DimTwoBranch branch) {
  const DimTwoParams p = d2_params(t, branch);
  return {std::abs(p.r * p.s - p.a),
          std::abs((1.0 - p.r * p.r) * (1.0 - p.s * p.s) - p.b * p.b)};
}

std::array<double, 3> d2_system_residuals(double t, DimTwoBranch branch) {
  const DimTwoParams p = d2_params(t, branch);
  return {std::abs((1.0 + t) / 2.0 - (p.a * p.a + p.b * p.b)),
          std::abs(t - 2.0 * p.a * p.b * std::cos(p.theta + p.theta1 - p.theta2)),
          std::abs(2.0 * p.a * p.b * std::cos(p.theta - p.theta1 + p.theta2))};
}

DimThreeParams d3_scalars(double t) {
  check_range(t, 0.25, "d3_scalars");
  DimThreeParams p;
  p.t = t;
  const double radical = safe_sqrt(1.0 + 7.0 * t - 8.0 * t * t, "d3_scalars");
  p.alpha = safe_sqrt((5.0 + 4.0 * t + 4.0 * radical) / 81.0, "d3_scalars");
  if (std::abs(t - 0.25) <= 1e-6) {
    // The raw quotient is 0/0 at t = 1/4; multiplying by the conjugate of the
    // radical gives -3t / (1 + 2t + radical), which evaluates to the limit
    // value -1/4 at the endpoint and stays accurate next to it.
    p.rho = -3.0 * t / (1.0 + 2.0 * t + radical);
  } else {
    p.rho = (1.0 + 2.0 * t - radical) / (1.0 - 4.0 * t);
  }
  p.lambda = 0.5 * (-1.0 + safe_sqrt(1.0 + 4.0 * p.rho, "d3_scalars"));
  p.beta = -p.alpha * (p.lambda + 1.0);
  p.u.resize(3);
  p.u << 1.0, p.lambda, p.lambda;
  p.v.resize(3);
  p.v << p.alpha, p.beta, p.beta;
  return p;
}

std::pair<Vector, Vector> d3_xy(double t) {
  const DimThreeParams p = d3_scalars(t);
  const double vnorm = p.v.norm();
  Vector x = std::sqrt(3.0) * vnorm * p.u;
  Vector y = p.v / vnorm;
  return {x, y};
}

RankOneKrausFamily d3_family(double t) {
  auto [x, y] = d3_xy(t);
  return covariant_family(x, y);
}

double d3_choi_distance(double t) {
  return choi_distance(family_choi(d3_family(t)), choi(depolarizing_action(3, t)));
}

bool d3_family_check(double t, double tol) { return d3_choi_distance(t) <= tol; }

double d3_norm_identity_residual(double t) {
  const DimThreeParams p = d3_scalars(t);
  return std::abs(3.0 * p.alpha * p.alpha * (4.0 * p.rho * p.rho + 4.0 * p.rho + 3.0) - 1.0);
}

double d3_lambda_residual(double t) {
  const DimThreeParams p = d3_scalars(t);
  return std::abs(p.lambda * (p.lambda + 1.0) - p.rho);
}

}  // namespace ebr
