#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace eigenrand::fit {

// least-squares slope of y against x
inline double slope(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  double mx = x.mean(), my = y.mean();
  double num = ((x - mx) * (y - my)).sum();
  double den = (x - mx).square().sum();
  return num / den;
}

// slope of log(y) against log(x)
inline double loglog_slope(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  return slope(x.log(), y.log());
}

}  // namespace eigenrand::fit
