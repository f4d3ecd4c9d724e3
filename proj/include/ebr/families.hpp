#pragma once

#include "ebr/channel.hpp"
#include "ebr/linalg.hpp"

#include <array>
#include <utility>

namespace ebr {

/// Phase branch for the d = 2 family. The default (theta = theta2 = pi/4)
/// reproduces the first known qubit fiducial at t = 1/3; the alternate
/// branch (theta = theta2 = 5*pi/4) lands on the second one.
enum class DimTwoBranch { primary, alternate };

struct DimTwoParams {
  double t = 0.0;
  double theta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  double s = 0.0;
};

struct DimThreeParams {
  double t = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  Vector u;  // (1, lambda, lambda)
  Vector v;  // (alpha, beta, beta)
};

// -- d = 2 family over t in [0, 1/3] --------------------------------------

std::pair<double, double> d2_ab(double t);
std::pair<double, double> d2_rs(double a, double b);
DimTwoParams d2_params(double t, DimTwoBranch branch = DimTwoBranch::primary);

/// Unit vectors x = [r, sqrt(1-r^2) e^{i theta}], y = [s, sqrt(1-s^2) e^{i theta2}].
std::pair<Vector, Vector> d2_xy(double t, DimTwoBranch branch = DimTwoBranch::primary);

RankOneKrausFamily d2_family(double t, DimTwoBranch branch = DimTwoBranch::primary);
double d2_choi_distance(double t, DimTwoBranch branch = DimTwoBranch::primary);
bool d2_family_check(double t, double tol = 1e-9, DimTwoBranch branch = DimTwoBranch::primary);

/// |rs - a| and |(1-r^2)(1-s^2) - b^2|.
std::array<double, 2> d2_product_residuals(double t, DimTwoBranch branch = DimTwoBranch::primary);
/// Residuals of the simultaneous system: (1+t)/2 = a^2+b^2,
/// t = 2ab cos(theta+theta1-theta2), 0 = 2ab cos(theta-theta1+theta2).
std::array<double, 3> d2_system_residuals(double t, DimTwoBranch branch = DimTwoBranch::primary);

// -- d = 3 family over t in [0, 1/4] --------------------------------------

/// All scalar functions of t. rho has a removable singularity at t = 1/4;
/// within 1e-6 of the endpoint it is evaluated through the rationalized form
/// -3t / (1 + 2t + sqrt(1+7t-8t^2)), whose limit value is -1/4.
DimThreeParams d3_scalars(double t);

/// Unit vectors x = sqrt(3) ||v|| u and y = v / ||v||.
std::pair<Vector, Vector> d3_xy(double t);

RankOneKrausFamily d3_family(double t);
double d3_choi_distance(double t);
bool d3_family_check(double t, double tol = 1e-9);

/// |3 alpha^2 (4 rho^2 + 4 rho + 3) - 1|.
double d3_norm_identity_residual(double t);
/// |lambda (lambda + 1) - rho|.
double d3_lambda_residual(double t);

}  // namespace ebr
