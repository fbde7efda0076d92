#include "tradecast/ols.hpp"

#include <cmath>

namespace tradecast {

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (n != y.size()) throw Error("ols: X and y row counts differ");
    if (n <= k) throw TooShort("ols: need more rows than columns");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        throw RankDeficient("ols: design matrix rank " + std::to_string(qr.rank()) +
                            " < " + std::to_string(k));
    }

    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - X * fit.coef;
    fit.sse = fit.residuals.squaredNorm();
    fit.df = static_cast<int>(n - k);
    fit.sigma2 = fit.sse / fit.df;

    // (X'X)^-1 diagonal from the QR factors
    Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    fit.se.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.se[j] = std::sqrt(fit.sigma2 * xtx_inv(j, j));
    }
    return fit;
}

}  // namespace tradecast
