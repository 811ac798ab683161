#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfm/annual_series.hpp"

namespace lfm {

/// Which observable a model predicts.
enum class Target { Inflation, Unemployment };

/// Which published measure the coefficients were estimated against.  Kept on
/// the model because coefficients are specific to the measure definition.
enum class Measure { CPI, GdpDeflator, UENational, UESurvey };

std::string to_string(Target t);
Target target_from_string(const std::string& s);
std::string to_string(Measure m);
Measure measure_from_string(const std::string& s);

/// Where a smoothing window is applied when evaluating a model.
enum class SmoothTarget {
    Predictor, ///< smooth labor-force growth before lagging
    Prediction ///< smooth the finished prediction
};

struct Smoothing {
    int window = 1; ///< centered moving-average width, odd
    SmoothTarget applied_to = SmoothTarget::Predictor;
};

/// One linear piece of a model, valid over an optional year range:
///
///   y(t) = lf_coeff * g(t - lf_lag) + ue_coeff * partner(t - ue_lag) + intercept
///
/// where g is labor-force growth and partner is the other observable
/// (unemployment when predicting inflation, and vice versa).  The partner
/// term exists only when ue_coeff is set; ue_lag may be negative, meaning
/// the partner is read from a later year than the prediction.
struct ModelSegment {
    double lf_coeff = 0.0;
    double intercept = 0.0;
    int lf_lag = 0;
    std::optional<double> ue_coeff;
    std::optional<int> ue_lag;
    std::optional<int> valid_from; ///< first year covered (inclusive); open when unset
    std::optional<int> valid_to;   ///< last year covered (inclusive); open when unset

    bool is_generalized() const { return ue_coeff.has_value(); }
    bool covers(int year) const;
    /// Throws DataError on inconsistent fields (ue_lag without ue_coeff,
    /// valid_from > valid_to, lf_lag outside 0..24).
    void validate() const;
};

/// A piecewise-linear model: one or more segments with non-overlapping
/// validity windows, plus optional smoothing.
struct PiecewiseModel {
    Target target = Target::Inflation;
    Measure measure = Measure::GdpDeflator;
    std::vector<ModelSegment> segments;
    std::optional<Smoothing> smoothing;

    bool is_generalized() const;
    /// Throws DataError when empty, when any segment is invalid, when
    /// segment windows overlap, or when smoothing is malformed.
    void validate() const;
};

/// Evaluate a one-variable segment on labor-force data:
///   y(t) = lf_coeff * g(t - lf_lag) + intercept
/// over every year the lagged growth series covers (restricted by the
/// segment's validity window when present).
AnnualSeries eval_simple(const ModelSegment& seg, const AnnualSeries& labor_force);

/// Evaluate a two-variable segment; `partner` is the other observable.
AnnualSeries eval_generalized(const ModelSegment& seg, const AnnualSeries& labor_force,
                              const AnnualSeries& partner);

/// Evaluate a full piecewise model.  `partner` may be null for models with no
/// partner term; `labor_force` may be null for models whose every segment has
/// lf_coeff == 0.  Segments are evaluated on their own windows and the pieces
/// concatenated; a gap between pieces is an error.
AnnualSeries eval_piecewise(const PiecewiseModel& m, const AnnualSeries* labor_force,
                            const AnnualSeries* partner = nullptr);

/// Same, restricted to [from_year, to_year].
AnnualSeries eval_piecewise(const PiecewiseModel& m, const AnnualSeries* labor_force,
                            const AnnualSeries* partner, int from_year, int to_year);

/// Combined-balance residual: how far the measured pair (inflation,
/// unemployment) sits from the linear constraint implied by a pair of
/// one-variable models sharing the same labor-force driver:
///
///   resid(t) = [pi(t) - ai] / a1 - [ue(t') - bi] / b1
///
/// with t' offset so both terms reference the same labor-force year.  Zero
/// when both models hold exactly.
AnnualSeries balance_residual(const AnnualSeries& inflation, const AnnualSeries& unemployment,
                              const ModelSegment& inflation_seg, const ModelSegment& ue_seg);

/// Human-readable equation, e.g. "pi(t) = 4*g(t-2) - 0.03".
std::string format_equation(const PiecewiseModel& m);
std::string format_equation(const ModelSegment& seg, Target target);

} // namespace lfm
