#include "lfm/residual.hpp"

#include <cmath>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/series_ops.hpp"
#include "lfm/text.hpp"

namespace lfm {

std::string to_string(ResidualVerdict v) {
    switch (v) {
    case ResidualVerdict::I0: return "I(0)";
    case ResidualVerdict::I1: return "I(1)";
    case ResidualVerdict::I2: return "I(2)";
    case ResidualVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

bool rejects_5pct(const std::optional<UnitRootResult>& r) {
    return r && r->reject_at && *r->reject_at <= 0.05;
}

} // namespace

ResidualReport residual_report(const AnnualSeries& measured, const AnnualSeries& predicted,
                               int max_lag) {
    if (measured.start_year() != predicted.start_year() || measured.size() != predicted.size())
        throw DataError("residual_report: domains differ (" +
                        std::to_string(measured.start_year()) + ".." +
                        std::to_string(measured.end_year()) + " vs " +
                        std::to_string(predicted.start_year()) + ".." +
                        std::to_string(predicted.end_year()) + ")");

    const int n = static_cast<int>(measured.size());
    std::vector<double> dyn(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        dyn[static_cast<std::size_t>(i)] = measured[static_cast<std::size_t>(i)] -
                                           predicted[static_cast<std::size_t>(i)];
    AnnualSeries dynamic_diff(measured.start_year(), dyn, Unit::RatePerYear, "dynamic diff");
    AnnualSeries cumulative_diff =
        cumulative_sum(dynamic_diff).with_label("cumulative diff");

    // Normalize the cumulative gap by the attained measured cumulative level.
    // Years where that level is too close to zero are undefined; keeping the
    // longest valid suffix preserves a contiguous series (the early years are
    // where the level starts near zero).
    const AnnualSeries level = cumulative_sum(measured);
    double level_scale = 0.0;
    for (double v : level.values()) level_scale = std::max(level_scale, std::fabs(v));
    const double eps = 1e-8 * std::max(1.0, level_scale);

    double max_abs_diff = 0.0;
    for (double v : cumulative_diff.values()) max_abs_diff = std::max(max_abs_diff, std::fabs(v));

    std::optional<AnnualSeries> relative;
    if (max_abs_diff == 0.0) {
        // Perfect prediction: the relative error is identically zero.
        relative = AnnualSeries(measured.start_year(),
                                std::vector<double>(static_cast<std::size_t>(n), 0.0),
                                Unit::RatePerYear, "relative diff");
    } else {
        int first_ok = n; // index of the first year of the valid suffix
        for (int i = n - 1; i >= 0 && std::fabs(level[static_cast<std::size_t>(i)]) >= eps; --i)
            first_ok = i;
        if (first_ok >= n)
            throw DataError("residual_report: measured cumulative level too close to zero "
                            "to normalize");
        std::vector<double> rel;
        rel.reserve(static_cast<std::size_t>(n - first_ok));
        for (int i = first_ok; i < n; ++i)
            rel.push_back(cumulative_diff[static_cast<std::size_t>(i)] /
                          level[static_cast<std::size_t>(i)]);
        relative = AnnualSeries(measured.start_year() + first_ok, std::move(rel),
                                Unit::RatePerYear, "relative diff");
    }

    ResidualReport rep{
        .dynamic_diff = std::move(dynamic_diff),
        .cumulative_diff = std::move(cumulative_diff),
        .relative_diff = std::move(*relative),
        .dynamic_ur = std::nullopt,
        .cumulative_ur = std::nullopt,
        .verdict = ResidualVerdict::Inconclusive,
    };

    if (max_abs_diff == 0.0) {
        rep.verdict = ResidualVerdict::I0; // zero series treated as stationary
        return rep;
    }

    rep.dynamic_ur = phillips_perron(rep.dynamic_diff, max_lag, Deterministic::Constant);
    rep.cumulative_ur = phillips_perron(rep.cumulative_diff, max_lag, Deterministic::Constant);

    if (rejects_5pct(rep.dynamic_ur) && rejects_5pct(rep.cumulative_ur)) {
        rep.verdict = ResidualVerdict::I0;
        return rep;
    }
    // Not jointly stationary: classify how deep the cumulative gap integrates.
    try {
        switch (integration_order(rep.cumulative_diff, std::min(max_lag, 2))) {
        case IntegrationOrder::I1: rep.verdict = ResidualVerdict::I1; break;
        case IntegrationOrder::I2: rep.verdict = ResidualVerdict::I2; break;
        default: rep.verdict = ResidualVerdict::Inconclusive; break;
        }
    } catch (const DataError&) {
        rep.verdict = ResidualVerdict::Inconclusive;
    }
    return rep;
}

std::string residual_report_text(const ResidualReport& r) {
    std::ostringstream out;
    out << "Residual stationarity report\n";
    out << "  years " << r.dynamic_diff.start_year() << ".." << r.dynamic_diff.end_year()
        << ", " << r.dynamic_diff.size() << " observations\n";
    auto rms = [](const AnnualSeries& s) {
        double acc = 0.0;
        for (double v : s.values()) acc += v * v;
        return std::sqrt(acc / static_cast<double>(s.size()));
    };
    out << "  rms dynamic diff:    " << fmt_fixed(rms(r.dynamic_diff), 6) << "\n";
    out << "  rms cumulative diff: " << fmt_fixed(rms(r.cumulative_diff), 6) << "\n";
    out << "  mean |relative diff| over " << r.relative_diff.start_year() << ".."
        << r.relative_diff.end_year() << ": ";
    double acc = 0.0;
    for (double v : r.relative_diff.values()) acc += std::fabs(v);
    out << fmt_fixed(acc / static_cast<double>(r.relative_diff.size()), 6) << "\n\n";
    if (r.dynamic_ur)
        out << unit_root_text(*r.dynamic_ur, "dynamic difference");
    else
        out << "dynamic difference: identically zero, treated as stationary\n";
    if (r.cumulative_ur)
        out << unit_root_text(*r.cumulative_ur, "cumulative difference");
    else
        out << "cumulative difference: identically zero, treated as stationary\n";
    out << "\nverdict: prediction errors are " << to_string(r.verdict) << "\n";
    return out.str();
}

} // namespace lfm
