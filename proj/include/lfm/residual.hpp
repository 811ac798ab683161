#pragma once

#include <optional>
#include <string>

#include "lfm/annual_series.hpp"
#include "lfm/unit_root.hpp"

namespace lfm {

/// Joint stationarity verdict for a measured/predicted pair.
enum class ResidualVerdict { I0, I1, I2, Inconclusive };
std::string to_string(ResidualVerdict v);

/// Stationarity analysis of prediction errors in both representations.
///
/// dynamic_diff compares the annual series; cumulative_diff compares their
/// running sums.  A model that is right on average but noisy year-to-year has
/// a stationary cumulative difference; a model with drift does not, even when
/// the annual difference looks stationary.  relative_diff normalizes the
/// cumulative gap by the measured cumulative level over the longest suffix on
/// which that level stays away from zero.
struct ResidualReport {
    AnnualSeries dynamic_diff;
    AnnualSeries cumulative_diff;
    AnnualSeries relative_diff;
    /// Unit-root tests on the two differences; unset when a difference is
    /// identically zero (nothing to test — treated as stationary).
    std::optional<UnitRootResult> dynamic_ur;
    std::optional<UnitRootResult> cumulative_ur;
    ResidualVerdict verdict = ResidualVerdict::Inconclusive;
};

/// Build the report.  Both series are aligned first; max_lag is handed to the
/// underlying tests.  The verdict is I0 when both differences reject a unit
/// root at the 5% level, otherwise the order the cumulative difference
/// integrates at (Inconclusive when that cannot be established).
ResidualReport residual_report(const AnnualSeries& measured, const AnnualSeries& predicted,
                               int max_lag = 4);

std::string residual_report_text(const ResidualReport& r);

} // namespace lfm
