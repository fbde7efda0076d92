#include "tradecast/adf.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "tradecast/ols.hpp"

namespace tradecast {

namespace {

// Distribution-surface constants for the Dickey-Fuller tau statistic,
// constant-no-trend case. v1: MacKinnon (1994) asymptotic distribution
// polynomials and MacKinnon (2010) finite-sample response surfaces
// (beta_inf + b1/T + b2/T^2 + b3/T^3).
struct SurfaceRow {
    double level, b_inf, b1, b2, b3;
};
constexpr SurfaceRow kResponseSurface[] = {
    {0.01, -3.43035, -6.5393, -16.786, -79.433},
    {0.05, -2.86154, -2.8903, -4.234, -40.040},
    {0.10, -2.56677, -1.5384, -2.809, 0.0},
};

// p = Phi(c0 + c1*tau + c2*tau^2) for tau <= kTauStar,
// p = Phi(d0 + d1*tau + d2*tau^2 + d3*tau^3) above it.
constexpr double kTauStar = -1.61;
constexpr double kTauMin = -18.83;
constexpr double kTauMax = 2.74;
constexpr double kSmallP[] = {2.1659, 1.4412, 0.038269};
constexpr double kLargeP[] = {1.7339, 0.93202, -0.12745, -0.010368};

double asymptotic_p(double tau) {
    if (tau <= kTauMin) return 0.0;
    if (tau >= kTauMax) return 1.0;
    double z;
    if (tau <= kTauStar) {
        z = kSmallP[0] + kSmallP[1] * tau + kSmallP[2] * tau * tau;
    } else {
        z = kLargeP[0] + kLargeP[1] * tau + kLargeP[2] * tau * tau +
            kLargeP[3] * tau * tau * tau;
    }
    boost::math::normal dist;
    return boost::math::cdf(dist, z);
}

// tau is shifted by the gap between the finite-sample and asymptotic critical
// values, interpolated linearly across the three anchor levels and held
// constant outside them; the asymptotic p is then evaluated at the shifted
// statistic. Exact at each anchor by construction.
double finite_sample_p(double tau, int nobs) {
    const int m = static_cast<int>(std::size(kResponseSurface));
    double cv[3], shift[3];
    for (int i = 0; i < m; ++i) {
        cv[i] = adf_critical_value(kResponseSurface[i].level, nobs);
        shift[i] = cv[i] - kResponseSurface[i].b_inf;
    }
    double s;
    if (tau <= cv[0]) {
        s = shift[0];
    } else if (tau >= cv[2]) {
        s = shift[2];
    } else {
        int lo = tau <= cv[1] ? 0 : 1;
        double w = (tau - cv[lo]) / (cv[lo + 1] - cv[lo]);
        s = shift[lo] + w * (shift[lo + 1] - shift[lo]);
    }
    return asymptotic_p(tau - s);
}

}  // namespace

double adf_critical_value(double level, int nobs) {
    const double T = static_cast<double>(nobs);
    for (const auto& row : kResponseSurface) {
        if (std::abs(row.level - level) < 1e-12) {
            return row.b_inf + row.b1 / T + row.b2 / (T * T) + row.b3 / (T * T * T);
        }
    }
    throw Error("no response surface at level " + std::to_string(level));
}

AdfResult adf_test(const Series& series, int lag_order, double alpha) {
    const int n = static_cast<int>(series.size());
    const int L = lag_order;
    if (L < 0) throw Error("negative lag order");
    if (n < L + 10) {
        throw TooShort("ADF needs at least lag_order + 10 observations, got " +
                       std::to_string(n));
    }

    // regression sample: t = L+1 .. n-1 (0-based), nobs = n - 1 - L
    const int nobs = n - 1 - L;
    const int k = 2 + L;
    Eigen::MatrixXd X(nobs, k);
    Eigen::VectorXd y(nobs);
    const auto& v = series.values;
    for (int i = 0; i < nobs; ++i) {
        const int t = i + L + 1;
        y[i] = v[t] - v[t - 1];
        X(i, 0) = 1.0;
        X(i, 1) = v[t - 1];
        for (int j = 1; j <= L; ++j) {
            X(i, 1 + j) = v[t - j] - v[t - j - 1];
        }
    }
    OlsFit fit = ols(X, y);

    AdfResult res;
    res.lag_order = L;
    res.alpha = alpha;
    res.nobs = nobs;
    res.tau = fit.coef[1] / fit.se[1];
    res.p_value = finite_sample_p(res.tau, nobs);
    res.stationary = res.p_value <= alpha;
    res.cv1 = adf_critical_value(0.01, nobs);
    res.cv5 = adf_critical_value(0.05, nobs);
    res.cv10 = adf_critical_value(0.10, nobs);
    return res;
}

DifferencingDecision difference_until_stationary(const Series& series, double alpha,
                                                 int max_d, int lag_order) {
    if (max_d < 1) throw Error("max_d must be >= 1");
    DifferencingDecision out;
    for (int d = 0; d <= max_d; ++d) {
        AdfResult r = adf_test(difference(series, d), lag_order, alpha);
        out.trail.push_back(r);
        if (r.stationary) {
            out.d = d;
            return out;
        }
    }
    throw StillNonStationary(max_d);
}

}  // namespace tradecast
