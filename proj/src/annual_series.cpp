#include "lfm/annual_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfm/errors.hpp"

namespace lfm {

std::string to_string(Unit u) {
    switch (u) {
    case Unit::RatePerYear: return "rate-per-year";
    case Unit::Count: return "count";
    case Unit::Index: return "index";
    }
    return "unknown";
}

Unit unit_from_string(const std::string& s) {
    if (s == "rate-per-year") return Unit::RatePerYear;
    if (s == "count") return Unit::Count;
    if (s == "index") return Unit::Index;
    throw DataError("unknown unit '" + s + "'");
}

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values, Unit unit,
                           std::string label)
    : start_year_(start_year),
      values_(std::move(values)),
      unit_(unit),
      label_(std::move(label)) {
    if (values_.empty())
        throw DataError("series '" + label_ + "' is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw DataError("series '" + label_ + "' has a non-finite value in year " +
                            std::to_string(start_year_ + static_cast<int>(i)));
        if (unit_ == Unit::Count && values_[i] <= 0.0)
            throw DataError("count series '" + label_ + "' has a non-positive value in year " +
                            std::to_string(start_year_ + static_cast<int>(i)));
    }
}

double AnnualSeries::at_year(int year) const {
    if (!has_year(year))
        throw DataError("year " + std::to_string(year) + " outside series domain " +
                        std::to_string(start_year()) + ".." + std::to_string(end_year()));
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::sub_range(int from_year, int to_year) const {
    if (from_year > to_year)
        throw DataError("sub_range: empty window " + std::to_string(from_year) + ".." +
                        std::to_string(to_year));
    if (!has_year(from_year) || !has_year(to_year))
        throw DataError("sub_range: window " + std::to_string(from_year) + ".." +
                        std::to_string(to_year) + " outside series domain " +
                        std::to_string(start_year()) + ".." + std::to_string(end_year()));
    auto first = values_.begin() + (from_year - start_year_);
    auto last = values_.begin() + (to_year - start_year_) + 1;
    return AnnualSeries(from_year, std::vector<double>(first, last), unit_, label_);
}

AnnualSeries AnnualSeries::with_label(std::string label) const {
    return AnnualSeries(start_year_, values_, unit_, std::move(label));
}

AnnualSeries AnnualSeries::with_unit(Unit unit) const {
    return AnnualSeries(start_year_, values_, unit, label_);
}

double AnnualSeries::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) /
           static_cast<double>(values_.size());
}

double AnnualSeries::min_value() const noexcept {
    return *std::min_element(values_.begin(), values_.end());
}

double AnnualSeries::max_value() const noexcept {
    return *std::max_element(values_.begin(), values_.end());
}

} // namespace lfm
