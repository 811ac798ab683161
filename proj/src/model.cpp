#include "lfm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfm/errors.hpp"
#include "lfm/series_ops.hpp"
#include "lfm/text.hpp"

namespace lfm {

std::string to_string(Target t) {
    return t == Target::Inflation ? "inflation" : "unemployment";
}

Target target_from_string(const std::string& s) {
    if (s == "inflation") return Target::Inflation;
    if (s == "unemployment") return Target::Unemployment;
    throw DataError("unknown target '" + s + "'");
}

std::string to_string(Measure m) {
    switch (m) {
    case Measure::CPI: return "CPI";
    case Measure::GdpDeflator: return "DGDP";
    case Measure::UENational: return "UE-national";
    case Measure::UESurvey: return "UE-survey";
    }
    return "unknown";
}

Measure measure_from_string(const std::string& s) {
    if (s == "CPI") return Measure::CPI;
    if (s == "DGDP") return Measure::GdpDeflator;
    if (s == "UE-national") return Measure::UENational;
    if (s == "UE-survey") return Measure::UESurvey;
    throw DataError("unknown measure '" + s + "'");
}

bool ModelSegment::covers(int year) const {
    if (valid_from && year < *valid_from) return false;
    if (valid_to && year > *valid_to) return false;
    return true;
}

void ModelSegment::validate() const {
    if (ue_lag && !ue_coeff)
        throw DataError("model segment sets a partner lag without a partner coefficient");
    if (valid_from && valid_to && *valid_from > *valid_to)
        throw DataError("model segment window " + std::to_string(*valid_from) + ".." +
                        std::to_string(*valid_to) + " is empty");
    if (lf_lag < 0 || lf_lag > 24)
        throw DataError("labor-force lag " + std::to_string(lf_lag) + " outside 0..24");
    if (!std::isfinite(lf_coeff) || !std::isfinite(intercept) ||
        (ue_coeff && !std::isfinite(*ue_coeff)))
        throw DataError("model segment has a non-finite coefficient");
}

bool PiecewiseModel::is_generalized() const {
    return std::any_of(segments.begin(), segments.end(),
                       [](const ModelSegment& s) { return s.is_generalized(); });
}

void PiecewiseModel::validate() const {
    if (segments.empty()) throw DataError("model has no segments");
    for (const auto& s : segments) s.validate();
    if (smoothing) {
        if (smoothing->window < 1 || smoothing->window % 2 == 0)
            throw DataError("smoothing window must be odd and positive, got " +
                            std::to_string(smoothing->window));
    }
    // Windows must not overlap.  Sort by lower bound (open = -inf) and check
    // each piece ends before the next begins.
    std::vector<const ModelSegment*> order;
    for (const auto& s : segments) order.push_back(&s);
    auto lo = [](const ModelSegment* s) {
        return s->valid_from ? *s->valid_from : std::numeric_limits<int>::min();
    };
    std::sort(order.begin(), order.end(),
              [&](const ModelSegment* a, const ModelSegment* b) { return lo(a) < lo(b); });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const auto* cur = order[i];
        const auto* nxt = order[i + 1];
        if (!cur->valid_to || lo(nxt) <= *cur->valid_to)
            throw DataError("model segment windows overlap around year " +
                            std::to_string(lo(nxt)));
    }
}

namespace {

// Evaluate one segment given the (possibly smoothed) labor-force growth
// series.  Either input pointer may be null when the segment does not use
// that term; the caller has checked availability.
AnnualSeries eval_segment(const ModelSegment& seg, const AnnualSeries* growth,
                          const AnnualSeries* partner) {
    seg.validate();
    const bool use_lf = growth != nullptr;
    if (!use_lf && !(seg.is_generalized() && seg.lf_coeff == 0.0))
        throw DataError("labor_force series required to evaluate this segment");
    if (seg.is_generalized() && partner == nullptr)
        throw DataError("partner series required: segment has a partner term");

    std::optional<AnnualSeries> xg, xp;
    if (use_lf) xg = shift(*growth, seg.lf_lag);
    if (seg.is_generalized()) xp = shift(*partner, seg.ue_lag.value_or(0));

    int lo = std::numeric_limits<int>::min();
    int hi = std::numeric_limits<int>::max();
    auto clamp_to = [&](const AnnualSeries& s) {
        lo = std::max(lo, s.start_year());
        hi = std::min(hi, s.end_year());
    };
    if (xg) clamp_to(*xg);
    if (xp) clamp_to(*xp);
    if (seg.valid_from) lo = std::max(lo, *seg.valid_from);
    if (seg.valid_to) hi = std::min(hi, *seg.valid_to);
    if (lo > hi)
        throw DataError("segment has no evaluable years on this data");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int t = lo; t <= hi; ++t) {
        double y = seg.intercept;
        if (xg) y += seg.lf_coeff * xg->at_year(t);
        if (xp) y += *seg.ue_coeff * xp->at_year(t);
        out.push_back(y);
    }
    return AnnualSeries(lo, std::move(out), Unit::RatePerYear);
}

} // namespace

AnnualSeries eval_simple(const ModelSegment& seg, const AnnualSeries& labor_force) {
    if (seg.is_generalized())
        throw DataError("eval_simple called on a segment with a partner term");
    auto g = growth_rate(labor_force);
    return eval_segment(seg, &g, nullptr);
}

AnnualSeries eval_generalized(const ModelSegment& seg, const AnnualSeries& labor_force,
                              const AnnualSeries& partner) {
    if (!seg.is_generalized())
        throw DataError("eval_generalized called on a segment without a partner term");
    auto g = growth_rate(labor_force);
    return eval_segment(seg, &g, &partner);
}

AnnualSeries eval_piecewise(const PiecewiseModel& m, const AnnualSeries* labor_force,
                            const AnnualSeries* partner) {
    m.validate();
    std::optional<AnnualSeries> growth;
    if (labor_force) {
        growth = growth_rate(*labor_force);
        if (m.smoothing && m.smoothing->applied_to == SmoothTarget::Predictor &&
            m.smoothing->window > 1)
            growth = moving_average(*growth, m.smoothing->window);
    } else {
        for (const auto& s : m.segments)
            if (s.lf_coeff != 0.0 || !s.is_generalized())
                throw DataError("labor_force series required to evaluate this model");
    }
    if (m.is_generalized() && partner == nullptr)
        throw DataError("partner series required: model has a partner term");

    // Evaluate pieces in window order; skip pieces the data cannot reach.
    std::vector<const ModelSegment*> order;
    for (const auto& s : m.segments) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const ModelSegment* a, const ModelSegment* b) {
        int la = a->valid_from ? *a->valid_from : std::numeric_limits<int>::min();
        int lb = b->valid_from ? *b->valid_from : std::numeric_limits<int>::min();
        return la < lb;
    });

    std::optional<AnnualSeries> acc;
    for (const auto* seg : order) {
        std::optional<AnnualSeries> piece;
        try {
            piece = eval_segment(*seg, growth ? &*growth : nullptr, partner);
        } catch (const DataError&) {
            continue; // window entirely outside the data
        }
        if (!acc) {
            acc = std::move(piece);
            continue;
        }
        if (piece->start_year() != acc->end_year() + 1)
            throw DataError("model segments leave a gap between " +
                            std::to_string(acc->end_year()) + " and " +
                            std::to_string(piece->start_year()));
        std::vector<double> joined = acc->values();
        joined.insert(joined.end(), piece->values().begin(), piece->values().end());
        acc = AnnualSeries(acc->start_year(), std::move(joined), Unit::RatePerYear);
    }
    if (!acc)
        throw DataError("model has no evaluable years on this data");
    if (m.smoothing && m.smoothing->applied_to == SmoothTarget::Prediction &&
        m.smoothing->window > 1)
        acc = moving_average(*acc, m.smoothing->window);
    return acc->with_label(to_string(m.target) + " (model)");
}

AnnualSeries eval_piecewise(const PiecewiseModel& m, const AnnualSeries* labor_force,
                            const AnnualSeries* partner, int from_year, int to_year) {
    auto full = eval_piecewise(m, labor_force, partner);
    int lo = std::max(from_year, full.start_year());
    int hi = std::min(to_year, full.end_year());
    if (lo > hi)
        throw DataError("requested window " + std::to_string(from_year) + ".." +
                        std::to_string(to_year) + " outside evaluable range " +
                        std::to_string(full.start_year()) + ".." +
                        std::to_string(full.end_year()));
    return full.sub_range(lo, hi);
}

AnnualSeries balance_residual(const AnnualSeries& inflation, const AnnualSeries& unemployment,
                              const ModelSegment& inflation_seg, const ModelSegment& ue_seg) {
    if (inflation_seg.is_generalized() || ue_seg.is_generalized())
        throw DataError("balance_residual needs one-variable segments");
    if (inflation_seg.lf_coeff == 0.0 || ue_seg.lf_coeff == 0.0)
        throw DataError("balance_residual: lf_coeff must be nonzero in both segments");

    // Each model inverts to an implied labor-force growth; index both by the
    // labor-force year and difference them.
    auto implied_from_pi = shift(inflation, -inflation_seg.lf_lag);
    auto implied_from_ue = shift(unemployment, -ue_seg.lf_lag);
    auto [pi_al, ue_al] = align(implied_from_pi, implied_from_ue);
    std::vector<double> out(pi_al.size());
    for (std::size_t i = 0; i < pi_al.size(); ++i) {
        double g_pi = (pi_al[i] - inflation_seg.intercept) / inflation_seg.lf_coeff;
        double g_ue = (ue_al[i] - ue_seg.intercept) / ue_seg.lf_coeff;
        out[i] = g_pi - g_ue;
    }
    return AnnualSeries(pi_al.start_year(), std::move(out), Unit::RatePerYear,
                        "balance residual");
}

namespace {

bool append_term(std::string& s, double coeff, const std::string& var, bool first) {
    if (coeff == 0.0 && !var.empty()) return false;
    double shown = coeff;
    if (first) {
        if (coeff < 0.0) { s += "-"; shown = -coeff; }
    } else {
        s += coeff < 0.0 ? " - " : " + ";
        shown = std::fabs(coeff);
    }
    if (var.empty()) {
        s += fmt_double(shown);
    } else {
        s += fmt_double(shown) + "*" + var;
    }
    return true;
}

std::string lag_suffix(int lag) {
    if (lag == 0) return "(t)";
    if (lag > 0) return "(t-" + std::to_string(lag) + ")";
    return "(t+" + std::to_string(-lag) + ")";
}

} // namespace

std::string format_equation(const ModelSegment& seg, Target target) {
    const std::string lhs = target == Target::Inflation ? "pi" : "ue";
    const std::string partner = target == Target::Inflation ? "ue" : "pi";
    std::string s = lhs + "(t) = ";
    bool first = true;
    if (seg.lf_coeff != 0.0 || !seg.is_generalized()) {
        if (append_term(s, seg.lf_coeff, "g" + lag_suffix(seg.lf_lag), first)) first = false;
    }
    if (seg.is_generalized()) {
        if (append_term(s, *seg.ue_coeff, partner + lag_suffix(seg.ue_lag.value_or(0)), first))
            first = false;
    }
    append_term(s, seg.intercept, "", first);
    return s;
}

std::string format_equation(const PiecewiseModel& m) {
    std::string s;
    for (std::size_t i = 0; i < m.segments.size(); ++i) {
        const auto& seg = m.segments[i];
        if (i) s += ";  ";
        if (seg.valid_from || seg.valid_to) {
            s += seg.valid_from ? std::to_string(*seg.valid_from) : std::string("");
            s += "..";
            s += seg.valid_to ? std::to_string(*seg.valid_to) : std::string("");
            s += ": ";
        }
        s += format_equation(seg, m.target);
    }
    if (m.smoothing && m.smoothing->window > 1) {
        s += m.smoothing->applied_to == SmoothTarget::Predictor
                 ? "  [growth smoothed, MA(" + std::to_string(m.smoothing->window) + ")]"
                 : "  [prediction smoothed, MA(" + std::to_string(m.smoothing->window) + ")]";
    }
    return s;
}

} // namespace lfm
