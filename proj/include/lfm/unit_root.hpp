#pragma once

#include <optional>
#include <string>

#include "lfm/annual_series.hpp"

namespace lfm {

/// Deterministic part of the test regression.
enum class Deterministic { None, Constant, ConstantTrend };

std::string to_string(Deterministic d);

/// Lower-tail critical values for a unit-root statistic; strictly increasing
/// from the 1% to the 10% level.
struct CriticalValues {
    double at_1pct = 0.0;
    double at_5pct = 0.0;
    double at_10pct = 0.0;
};

/// Finite-sample critical values for the studentized statistic (t-form) and
/// the normalized-coefficient statistic (rho-form), interpolated linearly in
/// 1/n between tabulated sample sizes.
CriticalValues critical_values_t(int n, Deterministic det);
CriticalValues critical_values_rho(int n, Deterministic det);

struct UnitRootResult {
    double statistic_rho = 0.0; ///< normalized-coefficient form
    double statistic_t = 0.0;   ///< studentized form
    CriticalValues critical_values; ///< for statistic_t at the effective sample size
    int lags_used = 0;
    int n_obs = 0; ///< effective regression sample size
    Deterministic deterministic = Deterministic::Constant;
    /// Strongest significance level at which statistic_t rejects the unit
    /// root (0.01, 0.05 or 0.10); unset when it rejects at none.
    std::optional<double> reject_at;
};

/// Augmented Dickey-Fuller test with a fixed, user-chosen lag order
/// (no information-criterion selection).  Needs length >= max_lag + 10.
UnitRootResult adf(const AnnualSeries& s, int max_lag, Deterministic det);

/// Phillips-Perron test: the unaugmented regression with a Bartlett-window
/// long-run variance correction using max_lag autocovariance terms.
/// max_lag = 0 reduces exactly to the unaugmented Dickey-Fuller test.
UnitRootResult phillips_perron(const AnnualSeries& s, int max_lag, Deterministic det);

/// Order of integration by repeated differencing and testing at the 5%
/// level.  A numerically constant series counts as I0 by convention.
enum class IntegrationOrder { I0, I1, I2, Higher };
std::string to_string(IntegrationOrder o);
IntegrationOrder integration_order(const AnnualSeries& s, int max_lag = 1,
                                   Deterministic det = Deterministic::Constant);

/// One-paragraph text rendering of a test result.
std::string unit_root_text(const UnitRootResult& r, const std::string& series_name);

} // namespace lfm
