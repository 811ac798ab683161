#include "lfm/replicate.hpp"

#include <cmath>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/series_ops.hpp"
#include "lfm/text.hpp"

namespace lfm {

namespace {

SeriesRole role_for_target(Target t) {
    return t == Target::Inflation ? SeriesRole::Inflation : SeriesRole::Unemployment;
}

SeriesRole partner_role_for_target(Target t) {
    return t == Target::Inflation ? SeriesRole::Unemployment : SeriesRole::Inflation;
}

// Can the manifest's roles evaluate this model?
bool satisfiable(const PiecewiseModel& m, const CountryManifest& manifest) {
    if (!manifest.find_role(role_for_target(m.target))) return false;
    if (m.is_generalized() && !manifest.find_role(partner_role_for_target(m.target)))
        return false;
    bool needs_lf = false;
    for (const auto& s : m.segments)
        if (s.lf_coeff != 0.0 || !s.is_generalized()) needs_lf = true;
    if (needs_lf && !manifest.find_role(SeriesRole::LaborForce)) return false;
    return true;
}

double sum_squares(const AnnualSeries& s) {
    double acc = 0.0;
    for (double v : s.values()) acc += v * v;
    return acc;
}

} // namespace

ReplicationResult replicate(const std::string& country, const CountryManifest& manifest,
                            const ReplicateOptions& opt) {
    const auto& entry = Registry::builtin().lookup(country);

    int model_idx = -1;
    if (opt.model_index) {
        if (*opt.model_index < 0 || *opt.model_index >= static_cast<int>(entry.models.size()))
            throw DataError("model index " + std::to_string(*opt.model_index) +
                            " out of range; " + entry.country + " has " +
                            std::to_string(entry.models.size()) + " models");
        model_idx = *opt.model_index;
        if (!satisfiable(entry.models[static_cast<std::size_t>(model_idx)], manifest)) {
            const auto& m = entry.models[static_cast<std::size_t>(model_idx)];
            throw DataError(to_string(role_for_target(m.target)) + " series required");
        }
    } else {
        for (std::size_t i = 0; i < entry.models.size(); ++i) {
            if (satisfiable(entry.models[i], manifest)) {
                model_idx = static_cast<int>(i);
                break;
            }
        }
        if (model_idx < 0)
            throw DataError("manifest for " + entry.country +
                            " supplies no series combination that any registry model accepts");
    }
    const PiecewiseModel& model = entry.models[static_cast<std::size_t>(model_idx)];

    std::vector<std::string> warnings;
    const SeriesFile* lf_file = manifest.find_role(SeriesRole::LaborForce);
    if (!lf_file) throw DataError("labor_force series required");
    AnnualSeries lf = load_series(*lf_file, &warnings);

    const SeriesFile* target_file = manifest.find_role(role_for_target(model.target));
    if (!target_file)
        throw DataError(to_string(role_for_target(model.target)) + " series required");
    AnnualSeries measured_full = load_series(*target_file, &warnings);

    std::optional<AnnualSeries> partner;
    if (model.is_generalized()) {
        const SeriesFile* pf = manifest.find_role(partner_role_for_target(model.target));
        if (!pf)
            throw DataError(to_string(partner_role_for_target(model.target)) +
                            " series required");
        partner = load_series(*pf, &warnings);
    }

    // Manifest invariant that needs the data: break years inside the range.
    for (const auto& [year, note] : manifest.known_breaks) {
        if (year < lf.start_year() || year > lf.end_year())
            throw DataError("known break " + std::to_string(year) + " (" + note +
                            ") outside labor-force data range " +
                            std::to_string(lf.start_year()) + ".." +
                            std::to_string(lf.end_year()));
    }

    AnnualSeries predicted_full =
        eval_piecewise(model, &lf, partner ? &*partner : nullptr);
    auto [measured, predicted] = align(measured_full, predicted_full);
    if (measured.size() < 3)
        throw DataError("insufficient overlap between measured and predicted series (" +
                        std::to_string(measured.size()) + " years)");

    ScatterFit scatter = ols(predicted, measured);
    ResidualReport residual = residual_report(measured, predicted, opt.unit_root_max_lag);

    // Evaluation-style fit report for the registry model.
    const int n = static_cast<int>(measured.size());
    std::vector<double> resid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        resid[static_cast<std::size_t>(i)] =
            measured[static_cast<std::size_t>(i)] - predicted[static_cast<std::size_t>(i)];
    AnnualSeries resid_dyn(measured.start_year(), std::move(resid), Unit::RatePerYear,
                           "residual");
    AnnualSeries resid_cum = cumulative_sum(resid_dyn).with_label("cumulative residual");

    BoundaryConditions bc;
    bc.p0 = 1.0;
    bc.p1 = 1.0 + cumulative_sum(measured)[measured.size() - 1];
    bc.year_first = measured.start_year();
    bc.year_last = measured.end_year();
    const int lag = model.segments.front().lf_lag;
    bc.lf0 = lf.has_year(bc.year_first - lag) ? lf.at_year(bc.year_first - lag) : lf[0];
    bc.lf1 = lf.has_year(bc.year_last - lag) ? lf.at_year(bc.year_last - lag)
                                             : lf[lf.size() - 1];

    std::optional<double> rmsfe;
    if (!model.is_generalized() && model.segments.size() == 1 &&
        model.segments.front().lf_coeff != 0.0) {
        FitConfig cfg;
        cfg.allow_short = true;
        cfg.predictor_smooth_window = model.smoothing ? model.smoothing->window : 1;
        try {
            rmsfe = rmsfe_pseudo_oos(measured, lf, lag, cfg, opt.rmsfe_start_fraction);
        } catch (const DataError&) {
            // Not enough data for a forecast exercise; leave unset.
        }
    }

    FitReport fit{
        .fitted = model,
        .r_squared = scatter.r_squared,
        .rms_dynamic = std::sqrt(sum_squares(resid_dyn) / n),
        .rms_cumulative = std::sqrt(sum_squares(resid_cum) / n),
        .rmsfe = rmsfe,
        .residual_dynamic = std::move(resid_dyn),
        .residual_cumulative = std::move(resid_cum),
        .boundary = bc,
        .objective_trace = {},
    };

    // ---- text report ------------------------------------------------------
    std::ostringstream out;
    out << "Replication report: " << entry.country << "\n";
    out << "model " << model_idx << ": " << format_equation(model) << "\n";
    out << "data note: " << entry.source_note << "\n";
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    out << "evaluation years " << measured.start_year() << ".." << measured.end_year() << " ("
        << n << " points)\n\n";
    out << "scatter measured ~ predicted: slope " << fmt_fixed(scatter.slope, 4)
        << ", intercept " << fmt_fixed(scatter.intercept, 4) << ", R^2 "
        << fmt_fixed(scatter.r_squared, 4) << ", rms " << fmt_fixed(scatter.rms, 6) << "\n";
    out << "rms dynamic residual:    " << fmt_fixed(fit.rms_dynamic, 6) << "\n";
    out << "rms cumulative residual: " << fmt_fixed(fit.rms_cumulative, 6) << "\n";
    if (rmsfe) out << "pseudo out-of-sample rmsfe (lag " << lag << "): "
                   << fmt_fixed(*rmsfe, 6) << "\n";
    if (!entry.reference.empty()) {
        out << "\nachieved vs published reference figures:\n";
        for (const auto& ref : entry.reference) {
            std::optional<double> achieved;
            if (ref.metric == "r_squared") achieved = scatter.r_squared;
            else if (ref.metric == "slope") achieved = scatter.slope;
            else if (ref.metric == "intercept") achieved = scatter.intercept;
            else if (ref.metric == "rms") achieved = fit.rms_dynamic;
            else if (ref.metric == "rmsfe" && rmsfe) achieved = *rmsfe;
            out << "  " << ref.metric << ": ";
            if (achieved) out << fmt_fixed(*achieved, 4);
            else out << "n/a";
            out << " (reference " << fmt_double(ref.value) << ", " << ref.detail << ")\n";
        }
    }
    out << "\n" << residual_report_text(residual);

    return ReplicationResult{
        .entry = &entry,
        .model_index = model_idx,
        .fit = std::move(fit),
        .scatter = scatter,
        .residual = std::move(residual),
        .measured = std::move(measured),
        .predicted = std::move(predicted),
        .text = out.str(),
    };
}

AnnualSeries project(const ProjectionScenario& scenario) {
    scenario.model.validate();
    if (scenario.model.is_generalized())
        throw DataError("project: scenario models must be one-variable (labor force only)");
    // Growth needs 2 points and smoothing eats (window-1) more; anything less
    // cannot reach the first forecastable year.
    const int smooth_loss =
        scenario.model.smoothing ? scenario.model.smoothing->window - 1 : 0;
    if (static_cast<int>(scenario.lf_projection.size()) < 2 + smooth_loss)
        throw DataError("project: projection shorter than the model's lag horizon (" +
                        std::to_string(scenario.lf_projection.size()) + " years supplied)");
    auto out = eval_piecewise(scenario.model, &scenario.lf_projection, nullptr);
    return out.with_label(scenario.name.empty() ? out.label() : scenario.name);
}

} // namespace lfm
