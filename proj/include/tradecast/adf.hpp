#pragma once

#include <vector>

#include "tradecast/series.hpp"

namespace tradecast {

/// Augmented Dickey-Fuller single-mean test result. The null hypothesis is
/// non-stationarity; stationary == (p_value <= alpha).
struct AdfResult {
    double tau = 0.0;
    double p_value = 1.0;
    int lag_order = 0;
    bool stationary = false;
    double alpha = 0.05;
    int nobs = 0;            // observations used by the test regression
    double cv1 = 0.0, cv5 = 0.0, cv10 = 0.0;  // finite-sample critical values
};

/// Single-mean ADF regression
///   dy_t = a0 + rho*y_{t-1} + sum_{i=1..L} phi_i*dy_{t-i} + e_t
/// with tau = rho_hat / se(rho_hat). The p-value combines the MacKinnon (1994)
/// asymptotic distribution function with the MacKinnon (2010) finite-sample
/// response surfaces (constant, no trend); see adf.cpp for the embedded table.
AdfResult adf_test(const Series& series, int lag_order = 0, double alpha = 0.05);

struct DifferencingDecision {
    int d = 0;
    std::vector<AdfResult> trail;   // every test performed, in order
};

/// Smallest d <= max_d whose d-times-differenced series rejects the unit-root
/// null at `alpha`. Throws StillNonStationary when no d qualifies.
DifferencingDecision difference_until_stationary(const Series& series, double alpha = 0.05,
                                                 int max_d = 2, int lag_order = 0);

/// Finite-sample critical value for the constant-no-trend case at one of the
/// tabulated levels (0.01, 0.05, 0.10), for a test with `nobs` observations.
double adf_critical_value(double level, int nobs);

}  // namespace tradecast
