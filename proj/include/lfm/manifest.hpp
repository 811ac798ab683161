#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lfm/csv.hpp"

namespace lfm {

/// Country data manifest: which files play which roles, plus known series
/// breaks.  Plain-text key-value format, one declaration per line:
///
///   country=Italy
///   series=labor_force,US-definition,lf.csv
///   series=unemployment,US-definition,ue.csv
///   break=1992,survey redesign
///
/// '#' starts a comment line.  Relative paths resolve against the manifest's
/// own directory.
struct CountryManifest {
    std::string country;
    std::vector<SeriesFile> series;
    std::vector<std::pair<int, std::string>> known_breaks;

    /// First file with the given role, or null.
    const SeriesFile* find_role(SeriesRole role) const;
};

CountryManifest load_manifest(const std::string& path);
CountryManifest parse_manifest(const std::string& text, const std::string& base_dir,
                               const std::string& name_for_errors);

} // namespace lfm
