#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tradecast/errors.hpp"

namespace tradecast {

/// Ordinary least squares fit. Solved through a rank-revealing column-pivoted
/// QR decomposition; small identification regressions on 19-point series can
/// be close to collinear, so the rank check is tolerance based.
struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd se;          // coefficient standard errors
    Eigen::VectorXd residuals;
    double sigma2 = 0.0;         // SSE / (n - k)
    double sse = 0.0;
    int df = 0;                  // n - k
};

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

}  // namespace tradecast
