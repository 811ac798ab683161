#pragma once

#include <utility>

#include "lfm/annual_series.hpp"

namespace lfm {

/// Relative annual change of a count series:
///   out[t] = (s[t] - s[t-1]) / s[t-1]
/// The result starts one year after the input and is one point shorter.
/// Requires a Count series with at least 2 points.
AnnualSeries growth_rate(const AnnualSeries& s);

/// Relabel a series k years later (k may be negative).  shift(s, k) holds
/// the same values; value observed in year t becomes the value for year t+k.
/// Used to align a lagged predictor with the year it predicts.
AnnualSeries shift(const AnnualSeries& s, int k);

/// Centered moving average with an odd window.  Output loses (window-1)/2
/// points at each end.  window == 1 returns the input unchanged.
AnnualSeries moving_average(const AnnualSeries& s, int window);

/// Running sum: out[t] = sum of s over [start..t].  Same domain as input;
/// result unit is Index.
AnnualSeries cumulative_sum(const AnnualSeries& s);

/// out[t] = s[t] - s[t-1]; starts one year later, one point shorter.
AnnualSeries first_difference(const AnnualSeries& s);

/// Restrict both series to their common year range.  Throws DataError when
/// the domains are disjoint.
std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries& a, const AnnualSeries& b);

/// ln(last/first) of a count series: the total log change over the whole
/// domain.  Equals the sum of ln(1+r) over the growth-rate series.
double log_total_change(const AnnualSeries& s);

} // namespace lfm
