#pragma once

#include <optional>
#include <vector>

#include "lfm/annual_series.hpp"
#include "lfm/model.hpp"

namespace lfm {

/// Inclusive coefficient search grid.
struct GridSpec {
    double min = 0.0, max = 0.0, step = 1.0;
};

/// What a fit minimizes.
///
/// CumulativeRms fits the running sums of prediction and observation — the
/// integral form.  This weighs persistent bias heavily and is insensitive to
/// year-to-year noise, which is what makes recovered coefficients stable when
/// the observation is noisy.  DynamicRms fits the annual series directly.
enum class FitObjective { CumulativeRms, DynamicRms };

struct FitConfig {
    int lag_min = 0;
    int lag_max = 12;
    GridSpec lf_grid{-8.0, 8.0, 0.05};
    GridSpec intercept_grid{-0.15, 0.15, 0.001};
    GridSpec ue_grid{-2.0, 2.0, 0.05};
    std::optional<double> pin_ue_coeff; ///< hold the partner coefficient fixed
    std::vector<int> break_candidates;  ///< candidate years for one structural break
    int refine_iters = 200;             ///< max refinement sweeps after the grid stage
    FitObjective objective = FitObjective::CumulativeRms;
    bool allow_short = false;           ///< waive the minimum-sample requirement
    int predictor_smooth_window = 1;    ///< centered MA on growth before lagging
    int min_points = 30;
    int min_segment_points = 5;

    void validate() const;
};

/// Normalization anchors of the cumulative fit: the cumulative observation
/// starts at p0 in year_first, ends at p1 in year_last, with the labor force
/// lf0/lf1 at the corresponding (lag-shifted) ends.  p0 is 1 by convention;
/// the fitted model reproduces p1 - p0 = lf_coeff * ln(lf1/lf0) +
/// intercept * span when it is exact.
struct BoundaryConditions {
    double p0 = 1.0, p1 = 1.0;
    double lf0 = 0.0, lf1 = 0.0;
    int year_first = 0, year_last = 0;
};

struct FitReport {
    PiecewiseModel fitted;
    double r_squared = 0.0;      ///< on the objective's scale
    double rms_dynamic = 0.0;    ///< RMS of annual residuals
    double rms_cumulative = 0.0; ///< RMS of running-sum residuals
    std::optional<double> rmsfe; ///< pseudo out-of-sample RMS forecast error
    AnnualSeries residual_dynamic;
    AnnualSeries residual_cumulative;
    BoundaryConditions boundary;
    std::vector<double> objective_trace; ///< objective after each accepted refinement pass
};

/// Fit a one-variable model of `target` on labor-force growth: search the
/// lag range and coefficient grids, refine, and report both residual styles.
/// With break_candidates set, also selects one break year and per-side
/// coefficients jointly.  Requires at least min_points aligned observations
/// unless allow_short.
FitReport fit_cumulative(const AnnualSeries& target, const AnnualSeries& labor_force,
                         const FitConfig& cfg);

/// Fit a two-variable model: labor-force growth plus the partner observable.
/// The partner coefficient can be pinned via cfg.pin_ue_coeff.  The partner
/// lag is tied to the labor-force lag, matching the balance form where both
/// sides reference the same driver year.
FitReport fit_generalized(const AnnualSeries& target, const AnnualSeries& labor_force,
                          const AnnualSeries& partner, const FitConfig& cfg);

/// Simple scatter regression y ~ slope*x + intercept over the aligned years.
struct ScatterFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rms = 0.0;
    int n = 0;
};
ScatterFit ols(const AnnualSeries& x, const AnnualSeries& y);

/// Pseudo out-of-sample RMS forecast error at a fixed lag: refit on an
/// expanding window, each step forecasting the first year beyond the window
/// from already-observed labor-force growth.  start_fraction sets the first
/// training share of the sample.
double rmsfe_pseudo_oos(const AnnualSeries& target, const AnnualSeries& labor_force,
                        int lag, const FitConfig& cfg, double start_fraction = 0.5);

/// Fit quality across the whole lag range.
struct LagScan {
    struct Row {
        int lag;
        double rms; ///< objective RMS at the refined optimum for this lag
    };
    std::vector<Row> rows;
    int best_lag = 0;
    /// True when no lag improves on the worst one by more than 5 percent:
    /// the data do not identify a lag.
    bool flat_profile = false;
};
LagScan scan_lag(const AnnualSeries& target, const AnnualSeries& labor_force,
                 const FitConfig& cfg);

/// Plain-text rendering of a fit report.
std::string fit_report_text(const FitReport& rep);

/// Machine-readable CSV: kind,key,year,value rows covering coefficients,
/// summary statistics, boundary conditions and both residual series.
std::string fit_report_csv(const FitReport& rep);

} // namespace lfm
