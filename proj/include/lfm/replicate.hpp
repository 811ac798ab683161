#pragma once

#include <optional>
#include <string>

#include "lfm/fit.hpp"
#include "lfm/manifest.hpp"
#include "lfm/registry.hpp"
#include "lfm/residual.hpp"

namespace lfm {

struct ReplicateOptions {
    /// Use this model of the registry entry (index into its model list);
    /// default: the first model the supplied series can evaluate.
    std::optional<int> model_index;
    double rmsfe_start_fraction = 0.5;
    int unit_root_max_lag = 4;
};

/// Everything `replicate` produces: the registry model evaluated against the
/// user's data, the measured-vs-predicted scatter, the stationarity report,
/// and a text report that prints published reference numbers beside the
/// achieved ones.
struct ReplicationResult {
    const CountryModels* entry = nullptr;
    int model_index = 0;
    FitReport fit;           ///< evaluation of the registry model (not a re-fit)
    ScatterFit scatter;      ///< measured ~ predicted
    ResidualReport residual;
    AnnualSeries measured;
    AnnualSeries predicted;
    std::string text;
};

ReplicationResult replicate(const std::string& country, const CountryManifest& manifest,
                            const ReplicateOptions& opt = {});

/// Labor-force projection scenario: a named labor-force path and the model to
/// drive with it.
struct ProjectionScenario {
    std::string name;
    AnnualSeries lf_projection;
    PiecewiseModel model;
};

/// Evaluate the scenario.  The output reaches `lf_lag` years past the last
/// projected labor-force year (less any smoothing edge loss).  One-variable
/// models only: a partner observable is inherently unavailable in a pure
/// labor-force scenario.
AnnualSeries project(const ProjectionScenario& scenario);

} // namespace lfm
