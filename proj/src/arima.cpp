#include "tradecast/arima.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "tradecast/ols.hpp"

namespace tradecast {

namespace {

constexpr double kLn2Pi = 1.8378770664093453;
constexpr double kPacfBoundary = 0.99;   // beyond this the fit is flagged non-converged
constexpr int kMaxIterations = 200;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Nelder-Mead on an arbitrary objective. Deterministic; returns best point,
// whether the size criterion was met, and the iteration count.
struct NmResult {
    std::vector<double> x;
    double f = 0.0;
    bool converged = false;
    int iterations = 0;
};

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, double step, double xtol, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<std::size_t> ord(n + 1);
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            p2[i] = pts[ord[i]];
            f2[i] = fv[ord[i]];
        }
        pts = std::move(p2);
        fv = std::move(f2);

        double spread = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            spread = std::max(spread, std::abs(pts[n][i] - pts[0][i]));
        }
        if (spread < xtol) {
            return {pts[0], fv[0], true, it};
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        auto combine = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
            }
            return p;
        };

        auto xr = combine(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            auto xe = combine(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = combine(fr < fv[n] ? -0.5 : 0.5);
            double fc = f(xc);
            if (fc < std::min(fr, fv[n])) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    }
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (fv[i] < fv[best]) best = i;
    }
    return {pts[best], fv[best], false, it};
}

// CLS starting values for the AR part: OLS of the (demeaned) series on its lags.
std::vector<double> cls_ar_start(const std::vector<double>& z, int p) {
    const int n = static_cast<int>(z.size());
    if (p == 0 || n < 2 * p + 4) return std::vector<double>(static_cast<std::size_t>(p), 0.0);
    Eigen::MatrixXd X(n - p, p);
    Eigen::VectorXd y(n - p);
    for (int t = p; t < n; ++t) {
        y[t - p] = z[t];
        for (int i = 0; i < p; ++i) X(t - p, i) = z[t - 1 - i];
    }
    try {
        OlsFit f = ols(X, y);
        std::vector<double> out(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = f.coef[i];
        return out;
    } catch (const Error&) {
        return std::vector<double>(static_cast<std::size_t>(p), 0.0);
    }
}

}  // namespace

namespace detail {

std::vector<double> pacf_to_coef(const std::vector<double>& x) {
    std::vector<double> coef;
    for (double xi : x) {
        const double r = std::tanh(xi);
        std::vector<double> next(coef.size() + 1);
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i] = coef[i] - r * coef[coef.size() - 1 - i];
        }
        next[coef.size()] = r;
        coef = std::move(next);
    }
    return coef;
}

std::vector<double> coef_to_pacf(const std::vector<double>& coef) {
    std::vector<double> work = coef;
    std::vector<double> pac(coef.size());
    for (std::size_t j = coef.size(); j-- > 0;) {
        double r = work[j];
        r = std::clamp(r, -0.95, 0.95);   // clamp keeps starting values interior
        pac[j] = std::atanh(r);
        if (j == 0) break;
        std::vector<double> prev(j);
        const double denom = 1.0 - r * r;
        for (std::size_t i = 0; i < j; ++i) {
            prev[i] = (work[i] + r * work[j - 1 - i]) / denom;
        }
        work = std::move(prev);
    }
    return pac;
}

UlsResiduals uls_filter(const std::vector<double>& z, const std::vector<double>& ar,
                        const std::vector<double>& ma, int n_back) {
    const int n = static_cast<int>(z.size());
    const int p = static_cast<int>(ar.size());
    const int q = static_cast<int>(ma.size());
    UlsResiduals out;
    out.residuals.resize(static_cast<std::size_t>(n));

    if (p == 0 && q == 0) {
        out.residuals = z;
        out.ss = dot(z, z);
        return out;
    }

    // Backward residuals u_t = z_t - sum phi_i z_{t+i} - sum theta_j u_{t+j}
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (int t = n - 1; t >= 0; --t) {
        double v = z[static_cast<std::size_t>(t)];
        for (int i = 1; i <= p; ++i) {
            if (t + i < n) v -= ar[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(t + i)];
        }
        for (int j = 1; j <= q; ++j) {
            if (t + j < n) v -= ma[static_cast<std::size_t>(j - 1)] * u[static_cast<std::size_t>(t + j)];
        }
        u[static_cast<std::size_t>(t)] = v;
    }

    // Extended deviations: index 0..n_back-1 are the backcasts (oldest first),
    // n_back..n_back+n-1 the data. Backcast recursion runs backwards in time:
    // [z_t] = sum phi_i [z_{t+i}] + sum theta_j u_{t+j}.
    const int nb = std::max(n_back, p + q + 1);
    std::vector<double> ext(static_cast<std::size_t>(nb + n), 0.0);
    for (int i = 0; i < n; ++i) ext[static_cast<std::size_t>(nb + i)] = z[static_cast<std::size_t>(i)];
    for (int t = -1; t >= -nb; --t) {
        double v = 0.0;
        for (int i = 1; i <= p; ++i) {
            const int idx = nb + t + i;
            if (idx >= 0 && idx < nb + n) v += ar[static_cast<std::size_t>(i - 1)] * ext[static_cast<std::size_t>(idx)];
        }
        for (int j = 1; j <= q; ++j) {
            const int tj = t + j;
            if (tj >= 0 && tj < n) v += ma[static_cast<std::size_t>(j - 1)] * u[static_cast<std::size_t>(tj)];
        }
        ext[static_cast<std::size_t>(nb + t)] = v;
    }

    // Forward innovation pass over the extended range, skipping the first p
    // slots where lagged values are unavailable.
    std::vector<double> a(static_cast<std::size_t>(nb + n), 0.0);
    double ss = 0.0;
    for (int idx = p; idx < nb + n; ++idx) {
        double v = ext[static_cast<std::size_t>(idx)];
        for (int i = 1; i <= p; ++i) {
            v -= ar[static_cast<std::size_t>(i - 1)] * ext[static_cast<std::size_t>(idx - i)];
        }
        for (int j = 1; j <= q; ++j) {
            if (idx - j >= 0) v -= ma[static_cast<std::size_t>(j - 1)] * a[static_cast<std::size_t>(idx - j)];
        }
        a[static_cast<std::size_t>(idx)] = v;
        ss += v * v;
    }
    for (int i = 0; i < n; ++i) out.residuals[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(nb + i)];
    out.ss = ss;
    return out;
}

}  // namespace detail

std::vector<double> psi_weights(const std::vector<double>& ar, const std::vector<double>& ma,
                                int count) {
    const int p = static_cast<int>(ar.size());
    const int q = static_cast<int>(ma.size());
    std::vector<double> psi(static_cast<std::size_t>(count) + 1, 0.0);
    psi[0] = 1.0;
    for (int j = 1; j <= count; ++j) {
        double v = j <= q ? ma[static_cast<std::size_t>(j - 1)] : 0.0;
        for (int i = 1; i <= std::min(j, p); ++i) {
            v += ar[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        }
        psi[static_cast<std::size_t>(j)] = v;
    }
    return psi;
}

FittedModel fit(const Series& series, const ArimaSpec& spec) {
    if (spec.p < 0 || spec.d < 0 || spec.q < 0) throw Error("negative model order");
    const Series w = difference(series, spec.d);
    const int n = static_cast<int>(w.size());
    const int k = spec.p + spec.q + (spec.with_constant ? 1 : 0);
    if (spec.p + spec.q + 1 >= n) {
        throw TooShort("ARIMA(" + std::to_string(spec.p) + "," + std::to_string(spec.d) + "," +
                       std::to_string(spec.q) + ") needs more than " +
                       std::to_string(spec.p + spec.q + 1) + " usable observations");
    }

    FittedModel m;
    m.spec = spec;
    m.n_effective = n;
    m.source = series;

    const double wbar = mean(w.values);
    if (spec.p == 0 && spec.q == 0) {
        // Closed form: mean of the differenced series, residuals its deviations.
        m.constant = spec.with_constant ? wbar : 0.0;
        std::vector<double> e(w.values.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = w.values[i] - m.constant;
        m.uls_ss = dot(e, e);
        m.residuals = Series(std::move(e), w.start_year);
        m.converged = true;
        m.iterations = 0;
    } else {
        // Parameter vector: [mu]? + pacf-transformed AR + pacf-transformed MA.
        const bool with_mu = spec.with_constant;
        auto unpack = [&](const std::vector<double>& x, double& mu, std::vector<double>& phi,
                          std::vector<double>& theta) {
            std::size_t off = 0;
            mu = with_mu ? x[off++] : 0.0;
            std::vector<double> xa(x.begin() + off, x.begin() + off + spec.p);
            std::vector<double> xm(x.begin() + off + spec.p, x.end());
            phi = detail::pacf_to_coef(xa);
            theta = detail::pacf_to_coef(xm);
        };
        auto objective = [&](const std::vector<double>& x) {
            double mu;
            std::vector<double> phi, theta;
            unpack(x, mu, phi, theta);
            std::vector<double> z(w.values.size());
            for (std::size_t i = 0; i < z.size(); ++i) z[i] = w.values[i] - mu;
            return detail::uls_filter(z, phi, theta).ss;
        };

        std::vector<double> zc(w.values.size());
        for (std::size_t i = 0; i < zc.size(); ++i) zc[i] = w.values[i] - wbar;
        std::vector<double> ar0 = cls_ar_start(zc, spec.p);
        std::vector<double> x_cls;
        if (with_mu) x_cls.push_back(wbar);
        for (double v : detail::coef_to_pacf(ar0)) x_cls.push_back(v);
        for (int j = 0; j < spec.q; ++j) x_cls.push_back(0.0);

        std::vector<double> x_zero(x_cls.size(), 0.0);
        if (with_mu) x_zero[0] = wbar;

        const double step = 0.25;
        NmResult best;
        bool have = false;
        int total_it = 0;
        for (const auto& x0 : {x_cls, x_zero}) {
            NmResult r = nelder_mead(objective, x0, step, 1e-8, kMaxIterations * 40);
            total_it += r.iterations;
            if (!have || r.f < best.f) {
                best = r;
                have = true;
            }
        }

        double mu;
        std::vector<double> phi, theta;
        unpack(best.x, mu, phi, theta);
        m.constant = mu;
        m.ar = phi;
        m.ma = theta;
        m.uls_ss = best.f;
        m.iterations = total_it;
        m.converged = best.converged;
        // Boundary semantics: a fit whose partial autocorrelations pressed
        // against the stationarity/invertibility edge is flagged.
        std::size_t off = with_mu ? 1 : 0;
        for (std::size_t i = off; i < best.x.size(); ++i) {
            if (std::abs(std::tanh(best.x[i])) > kPacfBoundary) m.converged = false;
        }

        std::vector<double> z(w.values.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = w.values[i] - mu;
        m.residuals = Series(detail::uls_filter(z, phi, theta).residuals, w.start_year);
    }

    if (n <= k) throw TooShort("no degrees of freedom left");
    if (m.uls_ss <= 0.0 || m.uls_ss / std::max(1.0, dot(w.values, w.values)) < 1e-300) {
        throw DegenerateVariance();
    }
    m.sigma2 = m.uls_ss / (n - k);
    m.loglik = -0.5 * n * (kLn2Pi + 1.0 + std::log(m.uls_ss / n));
    m.aic = -2.0 * m.loglik + 2.0 * k;
    return m;
}

FittedModel select_best(const Series& series, int d,
                        const std::vector<OrderCandidate>& candidates, bool with_constant) {
    if (candidates.empty()) throw Error("empty candidate list");
    std::vector<std::pair<int, int>> orders;
    for (const auto& c : candidates) {
        std::pair<int, int> pq{c.p, c.q};
        if (std::find(orders.begin(), orders.end(), pq) == orders.end()) orders.push_back(pq);
    }

    // Ranking uses the small-sample corrected criterion; candidate grids can
    // reach p+q = 10 on a 19-point series, where plain AIC rewards overfit.
    auto aicc = [](const FittedModel& m) {
        const int k = m.spec.p + m.spec.q + (m.spec.with_constant ? 1 : 0);
        const int n = m.n_effective;
        if (n - k - 1 <= 0) return std::numeric_limits<double>::infinity();
        return m.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    };
    bool have = false;
    FittedModel best;
    double best_score = 0.0;
    for (const auto& [p, q] : orders) {
        try {
            FittedModel m = fit(series, ArimaSpec{p, d, q, with_constant});
            const double score = aicc(m);
            auto better = [&] {
                if (score != best_score) return score < best_score;
                if (m.spec.p + m.spec.q != best.spec.p + best.spec.q) {
                    return m.spec.p + m.spec.q < best.spec.p + best.spec.q;
                }
                return m.spec.q < best.spec.q;
            };
            if (!have || better()) {
                best = std::move(m);
                best_score = score;
                have = true;
            }
        } catch (const Error&) {
            // candidate not estimable on this sample; skip
        }
    }
    if (!have) throw AllFitsFailed();
    return best;
}

DiagnosticsResult ljung_box(const FittedModel& model, int to_lag) {
    const auto& e = model.residuals.values;
    const int n = static_cast<int>(e.size());
    const int df = to_lag - model.spec.p - model.spec.q;
    if (df < 1) throw InsufficientLag("to_lag must exceed p + q");
    if (n <= to_lag) throw InsufficientLag("need more residuals than lags");

    double r0 = dot(e, e);
    if (r0 <= 0.0) {
        return {to_lag, 0.0, df, 1.0};
    }
    double q_stat = 0.0;
    for (int kk = 1; kk <= to_lag; ++kk) {
        double rk = 0.0;
        for (int t = 0; t + kk < n; ++t) rk += e[static_cast<std::size_t>(t)] * e[static_cast<std::size_t>(t + kk)];
        rk /= r0;
        q_stat += rk * rk / (n - kk);
    }
    q_stat *= n * (n + 2.0);

    boost::math::chi_squared dist(df);
    DiagnosticsResult out;
    out.to_lag = to_lag;
    out.chi_square = q_stat;
    out.df = df;
    out.p_value = boost::math::cdf(boost::math::complement(dist, q_stat));
    return out;
}

ForecastResult forecast(const FittedModel& model, int horizon) {
    if (horizon < 1) throw Error("horizon must be >= 1");
    const int p = model.spec.p;
    const int q = model.spec.q;
    const int d = model.spec.d;

    const Series w = difference(model.source, d);
    const int n = static_cast<int>(w.size());

    // Point forecasts on the differenced scale.
    std::vector<double> zext(w.values.size());
    for (std::size_t i = 0; i < zext.size(); ++i) zext[i] = w.values[i] - model.constant;
    const auto& resid = model.residuals.values;
    std::vector<double> wf(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        double v = 0.0;
        for (int i = 1; i <= p; ++i) {
            const int idx = n + h - 1 - i;
            v += model.ar[static_cast<std::size_t>(i - 1)] *
                 (idx >= n ? wf[static_cast<std::size_t>(idx - n)] - model.constant
                           : zext[static_cast<std::size_t>(idx)]);
        }
        for (int j = 1; j <= q; ++j) {
            const int idx = n + h - 1 - j;
            if (idx < n) v += model.ma[static_cast<std::size_t>(j - 1)] * resid[static_cast<std::size_t>(idx)];
        }
        wf[static_cast<std::size_t>(h - 1)] = model.constant + v;
    }

    // Integrate d times: each pass turns increments into levels.
    std::vector<double> points = wf;
    for (int round = 0; round < d; ++round) {
        double last = difference(model.source, d - 1 - round).values.back();
        for (auto& v : points) {
            last += v;
            v = last;
        }
    }

    // psi-weights integrated d times (cumulative sums per difference).
    std::vector<double> psi = psi_weights(model.ar, model.ma, horizon - 1);
    for (int round = 0; round < d; ++round) {
        for (std::size_t i = 1; i < psi.size(); ++i) psi[i] += psi[i - 1];
    }

    const double sigma = std::sqrt(model.sigma2);
    ForecastResult out;
    double cum = 0.0;
    for (int h = 1; h <= horizon; ++h) {
        cum += psi[static_cast<std::size_t>(h - 1)] * psi[static_cast<std::size_t>(h - 1)];
        ForecastEntry entry;
        entry.h = h;
        entry.year = model.source.last_year() + h;
        entry.point = points[static_cast<std::size_t>(h - 1)];
        entry.stderr_ = sigma * std::sqrt(cum);
        entry.lo95 = entry.point - 1.96 * entry.stderr_;
        entry.hi95 = entry.point + 1.96 * entry.stderr_;
        out.entries.push_back(entry);
    }
    return out;
}

double percent_forecast_error(double actual, double fc) {
    if (actual == 0.0) throw Error("zero actual value");
    return 100.0 * std::abs(actual - fc) / std::abs(actual);
}

}  // namespace tradecast
