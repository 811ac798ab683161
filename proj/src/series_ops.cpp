#include "lfm/series_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lfm/errors.hpp"

namespace lfm {

AnnualSeries growth_rate(const AnnualSeries& s) {
    if (s.unit() != Unit::Count)
        throw DataError("growth_rate requires a count series, got " + to_string(s.unit()));
    if (s.size() < 2)
        throw DataError("growth_rate: series too short (need at least 2 points)");
    std::vector<double> out(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i)
        out[i - 1] = (s[i] - s[i - 1]) / s[i - 1];
    return AnnualSeries(s.start_year() + 1, std::move(out), Unit::RatePerYear,
                        s.label().empty() ? "" : s.label() + " growth");
}

AnnualSeries shift(const AnnualSeries& s, int k) {
    return AnnualSeries(s.start_year() + k, s.values(), s.unit(), s.label());
}

AnnualSeries moving_average(const AnnualSeries& s, int window) {
    if (window < 1 || window % 2 == 0)
        throw DataError("moving_average: window must be odd and positive, got " +
                        std::to_string(window));
    if (static_cast<std::size_t>(window) > s.size())
        throw DataError("moving_average: window " + std::to_string(window) +
                        " exceeds series length " + std::to_string(s.size()));
    if (window == 1) return s;
    const int half = window / 2;
    const std::size_t n_out = s.size() - static_cast<std::size_t>(window) + 1;
    std::vector<double> out(n_out);
    // Running-sum update keeps this O(n) and bit-deterministic.
    double acc = 0.0;
    for (int j = 0; j < window; ++j) acc += s[static_cast<std::size_t>(j)];
    out[0] = acc / window;
    for (std::size_t i = 1; i < n_out; ++i) {
        acc += s[i + static_cast<std::size_t>(window) - 1] - s[i - 1];
        out[i] = acc / window;
    }
    return AnnualSeries(s.start_year() + half, std::move(out), s.unit(), s.label());
}

AnnualSeries cumulative_sum(const AnnualSeries& s) {
    std::vector<double> out(s.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s[i];
        out[i] = acc;
    }
    return AnnualSeries(s.start_year(), std::move(out), Unit::Index,
                        s.label().empty() ? "" : "cumulative " + s.label());
}

AnnualSeries first_difference(const AnnualSeries& s) {
    if (s.size() < 2)
        throw DataError("first_difference: series too short (need at least 2 points)");
    std::vector<double> out(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i)
        out[i - 1] = s[i] - s[i - 1];
    // Differences of counts/indices are increments, not levels.
    Unit u = s.unit() == Unit::RatePerYear ? Unit::RatePerYear : Unit::Index;
    return AnnualSeries(s.start_year() + 1, std::move(out), u, s.label());
}

std::pair<AnnualSeries, AnnualSeries> align(const AnnualSeries& a, const AnnualSeries& b) {
    const int lo = std::max(a.start_year(), b.start_year());
    const int hi = std::min(a.end_year(), b.end_year());
    if (lo > hi)
        throw DataError("align: disjoint domains " + std::to_string(a.start_year()) + ".." +
                        std::to_string(a.end_year()) + " and " + std::to_string(b.start_year()) +
                        ".." + std::to_string(b.end_year()));
    return {a.sub_range(lo, hi), b.sub_range(lo, hi)};
}

double log_total_change(const AnnualSeries& s) {
    if (s.unit() != Unit::Count)
        throw DataError("log_total_change requires a count series, got " + to_string(s.unit()));
    if (s.size() < 2)
        throw DataError("log_total_change: series too short (need at least 2 points)");
    const double first = s[0];
    const double last = s[s.size() - 1];
    if (first <= 0.0 || last <= 0.0)
        throw DataError("log_total_change: non-positive endpoint");
    return std::log(last / first);
}

} // namespace lfm
