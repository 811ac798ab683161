#include "lfm/unit_root.hpp"

#include <cmath>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/linalg.hpp"
#include "lfm/series_ops.hpp"
#include "lfm/text.hpp"

namespace lfm {

std::string to_string(Deterministic d) {
    switch (d) {
    case Deterministic::None: return "none";
    case Deterministic::Constant: return "constant";
    case Deterministic::ConstantTrend: return "constant+trend";
    }
    return "unknown";
}

namespace {

// Finite-sample lower-tail critical values for the studentized unit-root
// statistic, rows at n = 25, 50, 100, 250, 500 and the limit, columns at the
// 1/5/10 percent levels.  Interpolation between rows is linear in 1/n.
constexpr int kRows = 6;
constexpr double kInvN[kRows] = {1.0 / 25, 1.0 / 50, 1.0 / 100, 1.0 / 250, 1.0 / 500, 0.0};

constexpr double kTauNone[kRows][3] = {
    {-2.66, -1.95, -1.60}, {-2.62, -1.95, -1.61}, {-2.60, -1.95, -1.61},
    {-2.58, -1.95, -1.62}, {-2.58, -1.95, -1.62}, {-2.58, -1.95, -1.62},
};
constexpr double kTauConst[kRows][3] = {
    {-3.75, -3.00, -2.63}, {-3.58, -2.93, -2.60}, {-3.51, -2.89, -2.58},
    {-3.46, -2.88, -2.57}, {-3.44, -2.87, -2.57}, {-3.43, -2.86, -2.57},
};
constexpr double kTauTrend[kRows][3] = {
    {-4.38, -3.60, -3.24}, {-4.15, -3.50, -3.18}, {-4.04, -3.45, -3.15},
    {-3.99, -3.43, -3.13}, {-3.98, -3.42, -3.13}, {-3.96, -3.41, -3.12},
};

// Same layout for the normalized-coefficient statistic n*(rho-1).
constexpr double kRhoNone[kRows][3] = {
    {-11.9, -7.7, -5.5}, {-12.9, -7.9, -5.6}, {-13.3, -8.0, -5.7},
    {-13.6, -8.0, -5.7}, {-13.7, -8.0, -5.7}, {-13.8, -8.1, -5.7},
};
constexpr double kRhoConst[kRows][3] = {
    {-17.2, -12.5, -10.2}, {-18.9, -13.3, -10.7}, {-19.8, -13.7, -11.0},
    {-20.3, -14.0, -11.2}, {-20.5, -14.0, -11.2}, {-20.7, -14.1, -11.3},
};
constexpr double kRhoTrend[kRows][3] = {
    {-22.5, -17.9, -15.6}, {-25.7, -19.8, -16.8}, {-27.4, -20.7, -17.5},
    {-28.4, -21.3, -18.0}, {-28.9, -21.5, -18.1}, {-29.5, -21.8, -18.3},
};

CriticalValues interpolate(const double table[kRows][3], int n) {
    if (n < 1) throw DataError("critical values need a positive sample size");
    // Below the first tabulated row the table is clamped rather than
    // extrapolated; above the last row it converges to the limiting values.
    const double x = 1.0 / std::min(std::max(n, 25), 1000000000);
    int hi = 0;
    while (hi < kRows - 1 && x < kInvN[hi + 1]) ++hi;
    // kInvN is decreasing; x lies in [kInvN[hi+1], kInvN[hi]]
    double out[3];
    if (x >= kInvN[0]) {
        for (int c = 0; c < 3; ++c) out[c] = table[0][c];
    } else {
        ++hi; // index of the lower bound row
        const double x0 = kInvN[hi - 1], x1 = kInvN[hi];
        const double w = (x - x1) / (x0 - x1);
        for (int c = 0; c < 3; ++c)
            out[c] = table[hi][c] + w * (table[hi - 1][c] - table[hi][c]);
    }
    return CriticalValues{out[0], out[1], out[2]};
}

const double (*table_for(Deterministic det, bool rho))[3] {
    switch (det) {
    case Deterministic::None: return rho ? kRhoNone : kTauNone;
    case Deterministic::Constant: return rho ? kRhoConst : kTauConst;
    case Deterministic::ConstantTrend: return rho ? kRhoTrend : kTauTrend;
    }
    return kTauConst;
}

std::optional<double> strongest_rejection(double t, const CriticalValues& cv) {
    if (t < cv.at_1pct) return 0.01;
    if (t < cv.at_5pct) return 0.05;
    if (t < cv.at_10pct) return 0.10;
    return std::nullopt;
}

void add_deterministic(std::vector<std::vector<double>>& cols, Deterministic det, int n) {
    if (det == Deterministic::None) return;
    cols.emplace_back(static_cast<std::size_t>(n), 1.0);
    if (det == Deterministic::ConstantTrend) {
        std::vector<double> tr(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) tr[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
        cols.push_back(std::move(tr));
    }
}

} // namespace

CriticalValues critical_values_t(int n, Deterministic det) {
    return interpolate(table_for(det, false), n);
}

CriticalValues critical_values_rho(int n, Deterministic det) {
    return interpolate(table_for(det, true), n);
}

UnitRootResult adf(const AnnualSeries& s, int max_lag, Deterministic det) {
    if (max_lag < 0) throw DataError("adf: max_lag must be >= 0");
    const int len = static_cast<int>(s.size());
    if (len < max_lag + 10)
        throw DataError("adf: series too short (" + std::to_string(len) + " points) for lag " +
                        std::to_string(max_lag) + "; need at least " +
                        std::to_string(max_lag + 10));

    const auto& v = s.values();
    // Regression rows t = 1+max_lag .. len-1 of
    //   dv[t] = rho*v[t-1] + sum_i gamma_i*dv[t-i] + deterministic + e
    const int n = len - 1 - max_lag;
    std::vector<double> y(static_cast<std::size_t>(n));
    std::vector<double> lagged(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        const int t = r + 1 + max_lag;
        y[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(t)] -
                                         v[static_cast<std::size_t>(t - 1)];
        lagged[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(t - 1)];
    }
    std::vector<std::vector<double>> cols{lagged};
    for (int i = 1; i <= max_lag; ++i) {
        std::vector<double> d(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            const int t = r + 1 + max_lag;
            d[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(t - i)] -
                                             v[static_cast<std::size_t>(t - i - 1)];
        }
        cols.push_back(std::move(d));
    }
    add_deterministic(cols, det, n);

    const auto sol = lsq_solve(cols, y);
    const double rho = sol.coef[0];
    double gamma_sum = 0.0;
    for (int i = 1; i <= max_lag; ++i) gamma_sum += sol.coef[static_cast<std::size_t>(i)];

    UnitRootResult out;
    out.lags_used = max_lag;
    out.n_obs = n;
    out.deterministic = det;
    out.statistic_t = rho / sol.se[0];
    out.statistic_rho = static_cast<double>(n) * rho / (1.0 - gamma_sum);
    out.critical_values = critical_values_t(n, det);
    out.reject_at = strongest_rejection(out.statistic_t, out.critical_values);
    return out;
}

UnitRootResult phillips_perron(const AnnualSeries& s, int max_lag, Deterministic det) {
    if (max_lag < 0) throw DataError("phillips_perron: max_lag must be >= 0");
    const int len = static_cast<int>(s.size());
    if (len < 12)
        throw DataError("phillips_perron: series too short (" + std::to_string(len) +
                        " points); need at least 12");

    const auto& v = s.values();
    const int n = len - 1;
    std::vector<double> y(static_cast<std::size_t>(n));
    std::vector<double> lagged(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        y[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(r + 1)] -
                                         v[static_cast<std::size_t>(r)];
        lagged[static_cast<std::size_t>(r)] = v[static_cast<std::size_t>(r)];
    }
    std::vector<std::vector<double>> cols{lagged};
    add_deterministic(cols, det, n);
    const auto sol = lsq_solve(cols, y);
    const double rho = sol.coef[0];
    const double se_rho = sol.se[0];
    const double t_rho = rho / se_rho;

    // Bartlett-window long-run variance of the regression residuals.
    std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int j = 0; j <= max_lag; ++j) {
        double acc = 0.0;
        for (int t = j; t < n; ++t)
            acc += sol.residuals[static_cast<std::size_t>(t)] *
                   sol.residuals[static_cast<std::size_t>(t - j)];
        gamma[static_cast<std::size_t>(j)] = acc / static_cast<double>(n);
    }
    double lambda2 = gamma[0];
    for (int j = 1; j <= max_lag; ++j)
        lambda2 += 2.0 * (1.0 - static_cast<double>(j) / (max_lag + 1)) *
                   gamma[static_cast<std::size_t>(j)];
    if (lambda2 <= 0.0) lambda2 = gamma[0]; // Bartlett weights keep this nonnegative
    if (lambda2 <= 0.0) throw NumericError("phillips_perron: zero residual variance");

    const double s2 = sol.s2;
    const double nn = static_cast<double>(n);
    UnitRootResult out;
    out.lags_used = max_lag;
    out.n_obs = n;
    out.deterministic = det;
    out.statistic_rho = nn * rho - 0.5 * (nn * nn * se_rho * se_rho / s2) * (lambda2 - gamma[0]);
    out.statistic_t = std::sqrt(gamma[0] / lambda2) * t_rho -
                      0.5 * (lambda2 - gamma[0]) * nn * se_rho / (std::sqrt(lambda2) * std::sqrt(s2));
    out.critical_values = critical_values_t(n, det);
    out.reject_at = strongest_rejection(out.statistic_t, out.critical_values);
    return out;
}

IntegrationOrder integration_order(const AnnualSeries& s, int max_lag, Deterministic det) {
    if (s.size() < 20)
        throw DataError("integration_order: need at least 20 points, got " +
                        std::to_string(s.size()));
    // Constant series carry no stochastic trend at all.
    double mean = s.mean(), dev = 0.0;
    for (double v : s.values()) dev = std::max(dev, std::fabs(v - mean));
    if (dev < 1e-12 * std::max(1.0, std::fabs(mean))) return IntegrationOrder::I0;

    AnnualSeries cur = s;
    for (int order = 0; order <= 2; ++order) {
        const auto r = adf(cur, max_lag, det);
        if (r.reject_at && *r.reject_at <= 0.05)
            return order == 0   ? IntegrationOrder::I0
                   : order == 1 ? IntegrationOrder::I1
                                : IntegrationOrder::I2;
        if (order == 2) break;
        cur = first_difference(cur);
    }
    return IntegrationOrder::Higher;
}

std::string to_string(IntegrationOrder o) {
    switch (o) {
    case IntegrationOrder::I0: return "I(0)";
    case IntegrationOrder::I1: return "I(1)";
    case IntegrationOrder::I2: return "I(2)";
    case IntegrationOrder::Higher: return "I(>2)";
    }
    return "unknown";
}

std::string unit_root_text(const UnitRootResult& r, const std::string& series_name) {
    std::ostringstream out;
    out << series_name << ": z(rho) = " << fmt_fixed(r.statistic_rho, 3)
        << ", z(t) = " << fmt_fixed(r.statistic_t, 3) << " [" << to_string(r.deterministic)
        << ", lags " << r.lags_used << ", n " << r.n_obs << "]\n";
    out << "  critical z(t): 1% " << fmt_fixed(r.critical_values.at_1pct, 3) << ", 5% "
        << fmt_fixed(r.critical_values.at_5pct, 3) << ", 10% "
        << fmt_fixed(r.critical_values.at_10pct, 3) << "\n";
    const auto rho_cv = critical_values_rho(r.n_obs, r.deterministic);
    out << "  critical z(rho): 1% " << fmt_fixed(rho_cv.at_1pct, 2) << ", 5% "
        << fmt_fixed(rho_cv.at_5pct, 2) << ", 10% " << fmt_fixed(rho_cv.at_10pct, 2) << "\n";
    if (r.reject_at)
        out << "  unit root rejected at the " << fmt_fixed(*r.reject_at * 100.0, 0)
            << "% level\n";
    else
        out << "  unit root not rejected\n";
    return out.str();
}

} // namespace lfm
