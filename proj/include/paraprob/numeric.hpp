#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace paraprob {

// Slack applied to [0,1] bounds and equality constraints during validation.
inline constexpr double kValidationSlack = 1e-12;

// Accumulation in ascending index order. The summation order is part of the
// contract: results must not depend on vectorization or thread count.
inline double ordered_sum(const Eigen::Ref<const Eigen::VectorXd>& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v[i];
  return s;
}

inline double ordered_dot(const Eigen::Ref<const Eigen::VectorXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline bool in_unit_interval(double x, double tol = kValidationSlack) {
  return std::isfinite(x) && x >= -tol && x <= 1.0 + tol;
}

}  // namespace paraprob
