#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lfm/model.hpp"

namespace lfm {

/// A published comparison figure attached to a country entry, used by the
/// replication report to print reference numbers beside achieved ones.
struct ReferenceStat {
    std::string metric; ///< "r_squared", "rmsfe", "rms", "slope", "intercept"
    double value = 0.0;
    std::string detail; ///< free text: which model/period the figure describes
};

/// All models on record for one country.  `alternate` entries hold variants
/// estimated against different data definitions or measures; they are kept
/// separate from the canonical set, never merged.
struct CountryModels {
    std::string country;
    bool alternate = false;
    std::vector<PiecewiseModel> models;
    std::string source_note; ///< data definitions behind the coefficients
    std::vector<ReferenceStat> reference;
};

class Registry {
public:
    /// The built-in ten-country model set.
    static const Registry& builtin();

    /// Canonical entry for a country (case-insensitive).  Throws DataError
    /// naming the available countries when not found.
    const CountryModels& lookup(std::string_view country) const;

    /// Alternate entries for a country; empty when there are none.
    std::vector<const CountryModels*> alternates_for(std::string_view country) const;

    std::vector<std::string> countries() const;
    const std::vector<CountryModels>& entries() const { return entries_; }

    /// Plain-text table of every coefficient of every entry; numbers are
    /// shortest-round-trip so import_table reproduces them bit-exactly.
    std::string export_table() const;
    static Registry import_table(const std::string& text);

    void add(CountryModels entry);

private:
    std::vector<CountryModels> entries_;
};

} // namespace lfm
