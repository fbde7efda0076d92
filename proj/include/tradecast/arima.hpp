#pragma once

#include <vector>

#include "tradecast/series.hpp"

namespace tradecast {

class InsufficientLag : public Error {
public:
    explicit InsufficientLag(const std::string& what) : Error(what) {}
};

struct ArimaSpec {
    int p = 0;
    int d = 0;
    int q = 0;
    bool with_constant = true;   // drift when d >= 1, mean when d = 0
};

/// Identification candidate source tags.
enum class IdMethod { ESACF, SCAN, MINIC };

struct OrderCandidate {
    int p = 0;
    int q = 0;
    IdMethod source = IdMethod::ESACF;
    double score = 0.0;    // BIC for MINIC candidates, NaN otherwise
};

/// An estimated ARIMA model.
///
/// Estimation minimizes the unconditional (exact least squares) sum of
/// squares computed with back-forecasting; `uls_ss` is that sum. sigma2 is
/// the df-corrected variance uls_ss/(n_eff - k) with k = p + q + constant,
/// while loglik is evaluated at the ML variance uls_ss/n_eff, so
/// AIC = -2*loglik + 2*k. Residuals are the back-forecast innovation
/// estimates for t = 1..n_eff on the differenced scale.
struct FittedModel {
    ArimaSpec spec;
    std::vector<double> ar;      // phi
    std::vector<double> ma;      // theta, sign convention z_t = sum phi z + a_t + sum theta a
    double constant = 0.0;       // mu, mean of the differenced series
    double sigma2 = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
    Series residuals;
    bool converged = true;
    int iterations = 0;
    int n_effective = 0;
    double uls_ss = 0.0;
    Series source;               // the undifferenced input series
};

struct ForecastEntry {
    int h = 0;
    int year = 0;
    double point = 0.0;
    double stderr_ = 0.0;
    double lo95 = 0.0;
    double hi95 = 0.0;
};

struct ForecastResult {
    std::vector<ForecastEntry> entries;
};

struct DiagnosticsResult {
    int to_lag = 0;
    double chi_square = 0.0;
    int df = 0;
    double p_value = 1.0;
};

FittedModel fit(const Series& series, const ArimaSpec& spec);

/// Fit every candidate (p,q) at differencing order d and return the best
/// model by the small-sample corrected criterion AICc = AIC + 2k(k+1)/(n-k-1);
/// ties go to the smaller p+q, then the smaller q. The reported `aic` field
/// keeps the plain convention. Non-converged fits participate but keep their
/// flag.
FittedModel select_best(const Series& series, int d,
                        const std::vector<OrderCandidate>& candidates,
                        bool with_constant = true);

/// Ljung-Box portmanteau check on the model residuals:
/// Q = n(n+2) * sum_{k=1..m} r_k^2/(n-k) with uncentered residual
/// autocorrelations, df = m - p - q.
DiagnosticsResult ljung_box(const FittedModel& model, int to_lag);

ForecastResult forecast(const FittedModel& model, int horizon);

/// 100*|actual - forecast|/|actual|. Throws on zero actual.
double percent_forecast_error(double actual, double fc);

/// psi-weights of the ARMA part (MA-infinity representation), psi_0 = 1.
std::vector<double> psi_weights(const std::vector<double>& ar,
                                const std::vector<double>& ma, int count);

namespace detail {

/// Back-forecast innovation filter: given deviations z_1..z_n and ARMA
/// coefficients, extends the series with `n_back` backcasts and returns the
/// innovation estimates for t = 1..n plus the back-forecast sum of squares.
struct UlsResiduals {
    std::vector<double> residuals;   // t = 1..n
    double ss = 0.0;                 // sum over t = 1-n_back+p .. n
};
UlsResiduals uls_filter(const std::vector<double>& z, const std::vector<double>& ar,
                        const std::vector<double>& ma, int n_back = 50);

/// Map unconstrained parameters to a stationary coefficient vector through
/// tanh partial autocorrelations and the Durbin-Levinson recursion.
std::vector<double> pacf_to_coef(const std::vector<double>& x);
std::vector<double> coef_to_pacf(const std::vector<double>& coef);

}  // namespace detail

}  // namespace tradecast
