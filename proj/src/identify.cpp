#include "tradecast/identify.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tradecast/ols.hpp"

namespace tradecast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kChiSq1_95 = 3.8414588206941227;   // chi-square(1) 95th percentile

std::vector<double> demean(const Series& s) {
    std::vector<double> z = s.values;
    const double m = mean(z);
    for (auto& v : z) v -= m;
    return z;
}

// OLS AR(m) coefficients on z_t = sum phi_i z_{t-i} + e_t; empty when the
// regression is not estimable.
std::vector<double> ar_ols(const std::vector<double>& z, int m) {
    const int n = static_cast<int>(z.size());
    if (m == 0) return {};
    if (n - m < m + 2) return {};
    Eigen::MatrixXd X(n - m, m);
    Eigen::VectorXd y(n - m);
    for (int t = m; t < n; ++t) {
        y[t - m] = z[static_cast<std::size_t>(t)];
        for (int i = 0; i < m; ++i) X(t - m, i) = z[static_cast<std::size_t>(t - 1 - i)];
    }
    try {
        OlsFit f = ols(X, y);
        std::vector<double> out(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = f.coef[i];
        return out;
    } catch (const Error&) {
        return {};
    }
}

double acf_at(const std::vector<double>& w, int lag) {
    const int n = static_cast<int>(w.size());
    const double m = mean(w);
    double denom = 0.0;
    for (double v : w) denom += (v - m) * (v - m);
    if (denom <= 0.0) return 0.0;
    double num = 0.0;
    for (int t = 0; t + lag < n; ++t) {
        num += (w[static_cast<std::size_t>(t)] - m) * (w[static_cast<std::size_t>(t + lag)] - m);
    }
    return num / denom;
}

}  // namespace

std::pair<IdentificationTable, std::vector<OrderCandidate>> esacf(const Series& series,
                                                                  int p_max, int q_max) {
    const int n = static_cast<int>(series.size());
    if (n < p_max + q_max + 5) throw TooShort("ESACF needs at least p_max+q_max+5 observations");
    const std::vector<double> z = demean(series);

    // Iterated AR estimates phi^{(m,j)} per Tsay-Tiao: start from OLS AR fits,
    // then recurse in the MA order with phi_0 = -1.
    const int m_top = p_max + q_max + 1;
    std::vector<std::vector<std::vector<double>>> coef(static_cast<std::size_t>(q_max) + 1);
    coef[0].resize(static_cast<std::size_t>(m_top) + 1);
    for (int m = 0; m <= m_top; ++m) coef[0][static_cast<std::size_t>(m)] = ar_ols(z, m);
    for (int j = 1; j <= q_max; ++j) {
        coef[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(m_top) + 1);
        for (int m = 0; m + j <= m_top; ++m) {
            const auto& up = coef[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m + 1)];
            const auto& same = coef[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m)];
            if (m == 0) continue;   // row 0 transforms with no AR coefficients
            if (up.size() != static_cast<std::size_t>(m + 1) ||
                same.size() != static_cast<std::size_t>(m)) {
                continue;
            }
            const double denom = same[static_cast<std::size_t>(m - 1)];
            if (std::abs(denom) < 1e-12) continue;
            const double lam = up[static_cast<std::size_t>(m)] / denom;
            std::vector<double> c(static_cast<std::size_t>(m));
            for (int i = 1; i <= m; ++i) {
                const double prev = i >= 2 ? same[static_cast<std::size_t>(i - 2)] : -1.0;
                c[static_cast<std::size_t>(i - 1)] = up[static_cast<std::size_t>(i - 1)] - lam * prev;
            }
            coef[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = std::move(c);
        }
    }

    IdentificationTable table;
    table.method = IdMethod::ESACF;
    table.grid.assign(static_cast<std::size_t>(p_max) + 1,
                      std::vector<double>(static_cast<std::size_t>(q_max) + 1, kNan));
    for (int m = 0; m <= p_max; ++m) {
        for (int j = 0; j <= q_max; ++j) {
            std::vector<double> w;
            if (m == 0) {
                w = z;
            } else {
                const auto& c = coef[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)];
                if (c.size() != static_cast<std::size_t>(m)) continue;
                w.resize(z.size() - static_cast<std::size_t>(m));
                for (int t = m; t < n; ++t) {
                    double v = z[static_cast<std::size_t>(t)];
                    for (int i = 1; i <= m; ++i) v -= c[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(t - i)];
                    w[static_cast<std::size_t>(t - m)] = v;
                }
            }
            if (static_cast<int>(w.size()) <= j + 2) continue;
            table.grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = acf_at(w, j + 1);
        }
    }

    // Insignificance at the asymptotic two-standard-error band.
    auto insignificant = [&](int m, int j) {
        const double r = table.grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        if (std::isnan(r)) return true;   // not computable never blocks a pattern
        return std::abs(r) <= 2.0 / std::sqrt(static_cast<double>(n - m - j));
    };

    std::vector<OrderCandidate> cands;
    for (int m = 0; m <= p_max; ++m) {
        for (int j = 0; j <= q_max; ++j) {
            bool ok = true;
            for (int mm = m; mm <= p_max && ok; ++mm) {
                for (int jj = j + (mm - m); jj <= q_max; ++jj) {
                    if (!insignificant(mm, jj)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                cands.push_back({m, j, IdMethod::ESACF, kNan});
                break;   // smallest qualifying MA order for this AR row
            }
        }
    }
    return {table, cands};
}

std::pair<IdentificationTable, std::vector<OrderCandidate>> scan(const Series& series,
                                                                 int p_max, int q_max) {
    const int n = static_cast<int>(series.size());
    if (n < p_max + q_max + 5) throw TooShort("SCAN needs at least p_max+q_max+5 observations");
    const std::vector<double> z = demean(series);

    IdentificationTable table;
    table.method = IdMethod::SCAN;
    table.grid.assign(static_cast<std::size_t>(p_max) + 1,
                      std::vector<double>(static_cast<std::size_t>(q_max) + 1, kNan));

    for (int m = 0; m <= p_max; ++m) {
        for (int j = 0; j <= q_max; ++j) {
            const int dim = m + 1;
            const int t0 = m + j + 1;
            const int rows = n - t0;
            if (rows < dim + 3) continue;

            Eigen::MatrixXd Y(rows, dim), X(rows, dim);
            for (int r = 0; r < rows; ++r) {
                const int t = t0 + r;
                for (int i = 0; i < dim; ++i) {
                    Y(r, i) = z[static_cast<std::size_t>(t - i)];
                    X(r, i) = z[static_cast<std::size_t>(t - j - 1 - i)];
                }
            }
            Eigen::MatrixXd Syy = Y.transpose() * Y;
            Eigen::MatrixXd Sxx = X.transpose() * X;
            Eigen::MatrixXd Syx = Y.transpose() * X;

            Eigen::LLT<Eigen::MatrixXd> lly(Syy);
            Eigen::LLT<Eigen::MatrixXd> llx(Sxx);
            if (lly.info() != Eigen::Success || llx.info() != Eigen::Success) continue;

            // Symmetric form of the squared canonical correlation problem.
            Eigen::MatrixXd Ly_inv_Syx = lly.matrixL().solve(Syx);
            Eigen::MatrixXd B = llx.matrixL().solve(Ly_inv_Syx.transpose());
            Eigen::MatrixXd C = B.transpose() * B;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
            if (eig.info() != Eigen::Success) continue;

            int idx = 0;
            eig.eigenvalues().minCoeff(&idx);
            const double lam = std::max(0.0, eig.eigenvalues()[idx]);

            // Transformed series from the canonical vector of the smallest
            // eigenvalue, normalized to a unit leading coefficient.
            Eigen::VectorXd u = eig.eigenvectors().col(idx);
            Eigen::VectorXd v =
                lly.matrixL().transpose().solve(u);   // back to the original coordinates
            if (std::abs(v[0]) > 1e-12) v /= v[0];
            std::vector<double> w(static_cast<std::size_t>(n - m));
            for (int t = m; t < n; ++t) {
                double acc = 0.0;
                for (int i = 0; i < dim; ++i) acc += v[i] * z[static_cast<std::size_t>(t - i)];
                w[static_cast<std::size_t>(t - m)] = acc;
            }
            double dcorr = 1.0;
            for (int i = 1; i <= j; ++i) {
                const double r = acf_at(w, i);
                dcorr += 2.0 * r * r;
            }
            if (lam >= dcorr) {
                table.grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
                    std::numeric_limits<double>::infinity();
            } else {
                table.grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
                    -(n - m - j) * std::log1p(-lam / dcorr);
            }
        }
    }

    auto insignificant = [&](int m, int j) {
        const double c = table.grid[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        if (std::isnan(c)) return true;
        return c < kChiSq1_95;
    };

    std::vector<OrderCandidate> cands;
    for (int m = 0; m <= p_max; ++m) {
        for (int j = 0; j <= q_max; ++j) {
            bool ok = true;
            for (int mm = m; mm <= p_max && ok; ++mm) {
                for (int jj = j; jj <= q_max; ++jj) {
                    if (!insignificant(mm, jj)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                cands.push_back({m, j, IdMethod::SCAN, kNan});
                break;
            }
        }
    }
    return {table, cands};
}

std::pair<IdentificationTable, OrderCandidate> minic(const Series& series, int p_max,
                                                     int q_max) {
    const int n = static_cast<int>(series.size());
    if (n < p_max + q_max + 5) throw TooShort("MINIC needs at least p_max+q_max+5 observations");
    const std::vector<double> z = demean(series);

    // Long-AR prefit, order by AIC over 1..ceil(n/4), provides innovation proxies.
    const int k_top = static_cast<int>(std::ceil(n / 4.0));
    int k_long = 1;
    double best_aic = std::numeric_limits<double>::infinity();
    std::vector<double> c_long;
    for (int k = 1; k <= k_top; ++k) {
        auto c = ar_ols(z, k);
        if (c.size() != static_cast<std::size_t>(k)) continue;
        double sse = 0.0;
        int cnt = 0;
        for (int t = k; t < n; ++t) {
            double v = z[static_cast<std::size_t>(t)];
            for (int i = 1; i <= k; ++i) v -= c[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(t - i)];
            sse += v * v;
            ++cnt;
        }
        const double aic = cnt * std::log(sse / cnt) + 2.0 * k;
        if (aic < best_aic) {
            best_aic = aic;
            k_long = k;
            c_long = c;
        }
    }
    std::vector<double> eps(z.size(), 0.0);
    for (int t = k_long; t < n; ++t) {
        double v = z[static_cast<std::size_t>(t)];
        for (int i = 1; i <= k_long; ++i) v -= c_long[static_cast<std::size_t>(i - 1)] * z[static_cast<std::size_t>(t - i)];
        eps[static_cast<std::size_t>(t)] = v;
    }

    IdentificationTable table;
    table.method = IdMethod::MINIC;
    table.grid.assign(static_cast<std::size_t>(p_max) + 1,
                      std::vector<double>(static_cast<std::size_t>(q_max) + 1, kNan));

    OrderCandidate best{0, 0, IdMethod::MINIC, std::numeric_limits<double>::infinity()};
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            const int t0 = std::max(p, k_long + q);
            const int rows = n - t0;
            const int k = p + q;
            if (rows - k < 3) continue;   // too few degrees of freedom

            double sse = 0.0;
            if (k == 0) {
                for (int t = t0; t < n; ++t) {
                    sse += z[static_cast<std::size_t>(t)] * z[static_cast<std::size_t>(t)];
                }
            } else {
                Eigen::MatrixXd X(rows, k);
                Eigen::VectorXd y(rows);
                for (int r = 0; r < rows; ++r) {
                    const int t = t0 + r;
                    y[r] = z[static_cast<std::size_t>(t)];
                    for (int i = 0; i < p; ++i) X(r, i) = z[static_cast<std::size_t>(t - 1 - i)];
                    for (int jj = 0; jj < q; ++jj) X(r, p + jj) = eps[static_cast<std::size_t>(t - 1 - jj)];
                }
                try {
                    sse = ols(X, y).sse;
                } catch (const Error&) {
                    continue;   // rank-deficient cell stays not-computable
                }
            }
            const double sigma2 = sse / std::max(1, rows - k);
            if (sigma2 <= 0.0) continue;
            const double bic = std::log(sigma2) + k * std::log(static_cast<double>(n)) / n;
            table.grid[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = bic;
            const bool better =
                bic < best.score ||
                (bic == best.score && (p + q < best.p + best.q ||
                                       (p + q == best.p + best.q && q < best.q)));
            if (better) best = {p, q, IdMethod::MINIC, bic};
        }
    }
    if (!std::isfinite(best.score)) throw TooShort("MINIC grid has no computable cell");
    return {table, best};
}

std::vector<OrderCandidate> tentative_orders(const Series& series, int /*d*/, int p_max,
                                             int q_max) {
    std::vector<OrderCandidate> all;
    auto add = [&](const OrderCandidate& c) {
        for (const auto& e : all) {
            if (e.p == c.p && e.q == c.q) return;
        }
        all.push_back(c);
    };
    for (const auto& c : esacf(series, p_max, q_max).second) add(c);
    for (const auto& c : scan(series, p_max, q_max).second) add(c);
    add(minic(series, p_max, q_max).second);
    add({0, 0, IdMethod::ESACF, std::numeric_limits<double>::quiet_NaN()});
    return all;
}

}  // namespace tradecast
