#pragma once

#include <vector>

namespace lfm {

/// Result of an ordinary least-squares solve y ~ X b.
struct LsqSolution {
    std::vector<double> coef;      ///< one per column of X
    std::vector<double> se;        ///< standard errors (OLS, homoskedastic)
    std::vector<double> residuals; ///< y - X b, length n
    double ssr = 0.0;              ///< sum of squared residuals
    double s2 = 0.0;               ///< ssr / (n - k)
    int n = 0;
    int k = 0;
};

/// Least squares via Householder QR.  `cols` is X column-major; every column
/// must have the same length as y.  Throws NumericError("singular design")
/// when X is numerically rank-deficient, DataError when shapes are wrong or
/// n <= k.
LsqSolution lsq_solve(const std::vector<std::vector<double>>& cols,
                      const std::vector<double>& y);

} // namespace lfm
