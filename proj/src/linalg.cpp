#include "lfm/linalg.hpp"

#include <cmath>
#include <string>

#include "lfm/errors.hpp"

namespace lfm {

LsqSolution lsq_solve(const std::vector<std::vector<double>>& cols,
                      const std::vector<double>& y) {
    const int k = static_cast<int>(cols.size());
    const int n = static_cast<int>(y.size());
    if (k == 0) throw DataError("lsq_solve: no regressors");
    for (const auto& c : cols)
        if (static_cast<int>(c.size()) != n)
            throw DataError("lsq_solve: column length mismatch");
    if (n <= k)
        throw DataError("lsq_solve: need more observations (" + std::to_string(n) +
                        ") than regressors (" + std::to_string(k) + ")");

    // Householder QR on a working copy; Householder vectors remain in the
    // lower part of each processed column.
    std::vector<std::vector<double>> a = cols;
    std::vector<double> qty = y;
    std::vector<double> rdiag(static_cast<std::size_t>(k));

    for (int j = 0; j < k; ++j) {
        double nrm2 = 0.0;
        for (int i = j; i < n; ++i) nrm2 += a[j][i] * a[j][i];
        const double nrm = std::sqrt(nrm2);
        if (nrm == 0.0) throw NumericError("singular design");
        const double alpha = a[j][j] >= 0.0 ? -nrm : nrm;
        const double v0 = a[j][j] - alpha;
        double vtv = v0 * v0;
        for (int i = j + 1; i < n; ++i) vtv += a[j][i] * a[j][i];
        const double w = 2.0 / vtv;

        auto reflect = [&](std::vector<double>& c) {
            double dot = v0 * c[j];
            for (int i = j + 1; i < n; ++i) dot += a[j][i] * c[i];
            const double f = w * dot;
            c[j] -= f * v0;
            for (int i = j + 1; i < n; ++i) c[i] -= f * a[j][i];
        };
        for (int c = j + 1; c < k; ++c) reflect(a[c]);
        reflect(qty);

        rdiag[j] = alpha;
        a[j][j] = v0; // keep the Householder vector
    }

    double maxd = 0.0;
    for (int j = 0; j < k; ++j) maxd = std::max(maxd, std::fabs(rdiag[j]));
    for (int j = 0; j < k; ++j)
        if (std::fabs(rdiag[j]) < 1e-10 * maxd) throw NumericError("singular design");

    LsqSolution out;
    out.n = n;
    out.k = k;
    out.coef.resize(static_cast<std::size_t>(k));
    for (int j = k - 1; j >= 0; --j) {
        double s = qty[j];
        for (int c = j + 1; c < k; ++c) s -= a[c][j] * out.coef[c];
        out.coef[j] = s / rdiag[j];
    }

    out.residuals.resize(static_cast<std::size_t>(n));
    out.ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        double fit = 0.0;
        for (int j = 0; j < k; ++j) fit += cols[j][i] * out.coef[j];
        out.residuals[i] = y[i] - fit;
        out.ssr += out.residuals[i] * out.residuals[i];
    }
    out.s2 = out.ssr / static_cast<double>(n - k);

    // (X'X)^-1 = Rinv Rinv'; se_j = sqrt(s2 * row_j(Rinv) . row_j(Rinv)).
    // Rinv is upper triangular, solved column by column.
    std::vector<std::vector<double>> rinv(static_cast<std::size_t>(k),
                                          std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int c = 0; c < k; ++c) {
        for (int j = c; j >= 0; --j) {
            double s = (j == c) ? 1.0 : 0.0;
            for (int m = j + 1; m <= c; ++m) {
                const double rjm = (m == j) ? rdiag[j] : a[m][j];
                s -= rjm * rinv[m][c];
            }
            rinv[j][c] = s / rdiag[j];
        }
    }
    out.se.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        double d = 0.0;
        for (int c = j; c < k; ++c) d += rinv[j][c] * rinv[j][c];
        out.se[j] = std::sqrt(out.s2 * d);
    }
    return out;
}

} // namespace lfm
