#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lfm {

/// What the numbers in a series mean.  Growth rates and log-change
/// operations only accept Count series (people, index levels); model
/// inputs/outputs are RatePerYear (dimensionless annual fractions).
enum class Unit {
    RatePerYear, ///< dimensionless fraction per year (inflation, growth, UE rate)
    Count,       ///< positive level (labor force in persons)
    Index        ///< arbitrary level (cumulative curves, price indices)
};

std::string to_string(Unit u);
Unit unit_from_string(const std::string& s);

/// A contiguous run of annual observations.
///
/// Invariants, enforced at construction and after any mutation:
///  - at least one observation,
///  - every value finite,
///  - Count series strictly positive,
///  - years are implicit and contiguous: value i belongs to start_year()+i.
class AnnualSeries {
public:
    AnnualSeries(int start_year, std::vector<double> values, Unit unit,
                 std::string label = "");

    int start_year() const noexcept { return start_year_; }
    int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    Unit unit() const noexcept { return unit_; }
    const std::string& label() const noexcept { return label_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    bool has_year(int year) const noexcept {
        return year >= start_year() && year <= end_year();
    }
    /// Value for a calendar year; throws DataError when outside the domain.
    double at_year(int year) const;

    /// Sub-series covering [from_year, to_year]; throws DataError when the
    /// requested window is not fully inside the domain.
    AnnualSeries sub_range(int from_year, int to_year) const;

    AnnualSeries with_label(std::string label) const;
    AnnualSeries with_unit(Unit unit) const;

    double mean() const noexcept;
    double min_value() const noexcept;
    double max_value() const noexcept;

private:
    int start_year_;
    std::vector<double> values_;
    Unit unit_;
    std::string label_;
};

} // namespace lfm
