#pragma once

#include <string>
#include <vector>

#include "lfm/annual_series.hpp"

namespace lfm {

/// Role a data file plays for a country.
enum class SeriesRole { LaborForce, Unemployment, Inflation };

/// Data-source definition the file's numbers follow (statistical agency or
/// measure family).  Distinct from the model-side measure: this describes
/// provenance of the observations.
enum class SourceMeasure { CPI, DGDP, NAC, USDefinition, AMS, Eurostat, OECD };

std::string to_string(SeriesRole r);
SeriesRole role_from_string(const std::string& s);
std::string to_string(SourceMeasure m);
SourceMeasure source_measure_from_string(const std::string& s);

/// Default unit implied by a role: labor force is a positive count, the
/// rates are dimensionless per-year fractions.
Unit unit_for_role(SeriesRole r);

struct SeriesFile {
    std::string path;
    SeriesRole role = SeriesRole::LaborForce;
    SourceMeasure measure = SourceMeasure::OECD;
};

/// CSV contract: UTF-8, header exactly "year,value", comma separator,
/// '.' decimal point, strictly increasing years, no interior gaps.  Rows with
/// an empty value field are dropped with a warning when they sit at the
/// edges; an interior empty/missing year is a hard error naming the year.
AnnualSeries load_series_csv(const std::string& path, Unit unit, std::string label,
                             std::vector<std::string>* warnings = nullptr);
AnnualSeries load_series(const SeriesFile& f, std::vector<std::string>* warnings = nullptr);

/// Canonical formatting: header, one "year,value" row per year, '\n' line
/// endings, shortest round-trip numbers.  save(load(f)) is byte-identical
/// for files already in canonical form.
std::string series_to_csv(const AnnualSeries& s);
void save_series_csv(const AnnualSeries& s, const std::string& path);

} // namespace lfm
