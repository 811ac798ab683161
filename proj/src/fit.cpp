#include "lfm/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "lfm/errors.hpp"
#include "lfm/linalg.hpp"
#include "lfm/series_ops.hpp"
#include "lfm/text.hpp"

namespace lfm {

void FitConfig::validate() const {
    auto check_grid = [](const GridSpec& g, const char* name) {
        if (!(g.step > 0.0) || g.min > g.max)
            throw DataError(std::string("fit config: bad ") + name + " grid");
    };
    check_grid(lf_grid, "lf");
    check_grid(intercept_grid, "intercept");
    check_grid(ue_grid, "ue");
    if (lag_min < 0 || lag_min > lag_max)
        throw DataError("fit config: bad lag range " + std::to_string(lag_min) + ".." +
                        std::to_string(lag_max));
    if (refine_iters < 0) throw DataError("fit config: refine_iters must be >= 0");
    if (predictor_smooth_window < 1 || predictor_smooth_window % 2 == 0)
        throw DataError("fit config: smoothing window must be odd and positive");
    if (min_segment_points < 3) throw DataError("fit config: min_segment_points must be >= 3");
}

namespace {

// ---------------------------------------------------------------------------
// Moment form of a least-squares problem.  SSE(theta) and exact per-coordinate
// minimization are O(k) given the precomputed Gram matrix, which is what makes
// the coefficient grids cheap to sweep.
struct MomentSet {
    std::vector<std::vector<double>> G; // X'X
    std::vector<double> b;              // X'y
    double yy = 0.0;                    // y'y
    int n = 0;
    int k = 0;

    static MomentSet from(const std::vector<std::vector<double>>& cols,
                          const std::vector<double>& y) {
        MomentSet m;
        m.k = static_cast<int>(cols.size());
        m.n = static_cast<int>(y.size());
        m.G.assign(m.k, std::vector<double>(m.k, 0.0));
        m.b.assign(m.k, 0.0);
        for (int i = 0; i < m.k; ++i) {
            for (int j = i; j < m.k; ++j) {
                double s = 0.0;
                for (int t = 0; t < m.n; ++t) s += cols[i][t] * cols[j][t];
                m.G[i][j] = m.G[j][i] = s;
            }
            double s = 0.0;
            for (int t = 0; t < m.n; ++t) s += cols[i][t] * y[t];
            m.b[i] = s;
        }
        for (int t = 0; t < m.n; ++t) m.yy += y[t] * y[t];
        return m;
    }

    double sse(const std::vector<double>& th) const {
        double s = yy;
        for (int i = 0; i < k; ++i) {
            s -= 2.0 * th[i] * b[i];
            for (int j = 0; j < k; ++j) s += th[i] * G[i][j] * th[j];
        }
        return s;
    }

    // argmin over coordinate j with the rest of theta held fixed
    double coord_argmin(const std::vector<double>& th, int j) const {
        if (G[j][j] == 0.0) return th[j];
        double num = b[j];
        for (int c = 0; c < k; ++c)
            if (c != j) num -= G[j][c] * th[c];
        return num / G[j][j];
    }
};

bool gauss_solve(std::vector<std::vector<double>> a, std::vector<double> rhs,
                 std::vector<double>& out) {
    const int k = static_cast<int>(rhs.size());
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(static_cast<std::size_t>(k), 0.0);
    for (int r = k - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < k; ++c) s -= a[r][c] * out[c];
        out[r] = s / a[r][r];
        if (!std::isfinite(out[r])) return false;
    }
    return true;
}

enum class ParamKind { LfCoeff, UeCoeff, Intercept };

struct ParamInfo {
    ParamKind kind;
    int segment;
};

// One concrete least-squares problem: a (lag, ue_lag, break) choice turned
// into columns on the dynamic scale, plus the objective-scale moments.
//
// For the running-sum objective the curve is anchored at both ends: the start
// is pinned by construction (every running sum begins at zero, i.e. the level
// curve begins at p0) and the final point is enforced exactly, so one
// coefficient — the intercept of the last regime — is determined by the
// others instead of fitted freely.  `mom` then holds the moments of the
// reduced problem, `free_idx` maps its columns back to `params`, and `pivot`
// names the eliminated coefficient, recovered from the endpoint tie
//   sum_j tie_c[j] * theta[j] = tie_d.
// Anchoring the endpoint is what lets the running-sum fit average annual
// noise away instead of letting it drift the level curve: the fitted curve
// must return to the observed terminal value no matter what the noise does
// in between.  The annual-scale objective keeps every coefficient free.
struct Problem {
    std::vector<std::vector<double>> dyn_cols;
    std::vector<double> dyn_y; // partner-pinned contribution already removed
    std::vector<ParamInfo> params;
    MomentSet mom;              // objective scale, reduced when pivot is set
    std::vector<int> free_idx;  // mom column -> params index
    std::optional<int> pivot;   // params index eliminated by the endpoint tie
    std::vector<double> tie_c;  // endpoint-tie coefficients (params order)
    double tie_d = 0.0;         // endpoint-tie target
    double sst_obj = 0.0;       // objective-scale total sum of squares
    int year_first = 0;
    int year_last = 0;
    int n = 0;
    int n_seg = 1;
    int break_year = 0; // valid when n_seg == 2
};

// Reconstruct the full coefficient vector from a reduced solution.
std::vector<double> expand_theta(const Problem& p, const std::vector<double>& reduced) {
    std::vector<double> full(p.params.size(), 0.0);
    for (std::size_t i = 0; i < p.free_idx.size(); ++i)
        full[static_cast<std::size_t>(p.free_idx[i])] = reduced[i];
    if (p.pivot) {
        double s = p.tie_d;
        for (std::size_t j = 0; j < full.size(); ++j)
            if (static_cast<int>(j) != *p.pivot) s -= p.tie_c[j] * full[j];
        full[static_cast<std::size_t>(*p.pivot)] = s / p.tie_c[static_cast<std::size_t>(*p.pivot)];
    }
    return full;
}

std::vector<double> cumsum(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        out[i] = acc;
    }
    return out;
}

// Build the design for one lag / partner-lag / break choice.  Returns nullopt
// when the data cannot support it (too few rows overall or per side).
std::optional<Problem> build_problem(const AnnualSeries& target, const AnnualSeries& growth,
                                     const AnnualSeries* partner, int lag, int ue_lag,
                                     std::optional<int> break_year, std::optional<double> pin,
                                     const FitConfig& cfg) {
    auto xg = shift(growth, lag);
    int lo = std::max(target.start_year(), xg.start_year());
    int hi = std::min(target.end_year(), xg.end_year());
    std::optional<AnnualSeries> xu;
    if (partner) {
        xu = shift(*partner, ue_lag);
        lo = std::max(lo, xu->start_year());
        hi = std::min(hi, xu->end_year());
    }
    const int n = hi - lo + 1;
    if (n < 3) return std::nullopt;

    Problem p;
    p.year_first = lo;
    p.year_last = hi;
    p.n = n;
    p.n_seg = break_year ? 2 : 1;
    if (break_year) {
        p.break_year = *break_year;
        const int left = *break_year - lo + 1;
        const int right = hi - *break_year;
        if (left < cfg.min_segment_points || right < cfg.min_segment_points)
            return std::nullopt;
    }

    std::vector<double> y(static_cast<std::size_t>(n));
    for (int t = lo; t <= hi; ++t) {
        double v = target.at_year(t);
        if (pin && xu) v -= *pin * xu->at_year(t);
        y[static_cast<std::size_t>(t - lo)] = v;
    }

    for (int seg = 0; seg < p.n_seg; ++seg) {
        auto in_seg = [&](int t) {
            if (p.n_seg == 1) return true;
            return seg == 0 ? t <= p.break_year : t > p.break_year;
        };
        std::vector<double> cg(static_cast<std::size_t>(n), 0.0);
        for (int t = lo; t <= hi; ++t)
            if (in_seg(t)) cg[static_cast<std::size_t>(t - lo)] = xg.at_year(t);
        p.dyn_cols.push_back(std::move(cg));
        p.params.push_back({ParamKind::LfCoeff, seg});
        if (partner && !pin) {
            std::vector<double> cu(static_cast<std::size_t>(n), 0.0);
            for (int t = lo; t <= hi; ++t)
                if (in_seg(t)) cu[static_cast<std::size_t>(t - lo)] = xu->at_year(t);
            p.dyn_cols.push_back(std::move(cu));
            p.params.push_back({ParamKind::UeCoeff, seg});
        }
        std::vector<double> ci(static_cast<std::size_t>(n), 0.0);
        for (int t = lo; t <= hi; ++t)
            if (in_seg(t)) ci[static_cast<std::size_t>(t - lo)] = 1.0;
        p.dyn_cols.push_back(std::move(ci));
        p.params.push_back({ParamKind::Intercept, seg});
    }
    p.dyn_y = y;

    if (n <= static_cast<int>(p.dyn_cols.size()) + 1) return std::nullopt;

    std::vector<std::vector<double>> obj_cols;
    std::vector<double> obj_y;
    if (cfg.objective == FitObjective::CumulativeRms) {
        for (const auto& c : p.dyn_cols) obj_cols.push_back(cumsum(c));
        obj_y = cumsum(y);
        // Anchor the far end of the running-sum curve: eliminate the last
        // regime's intercept (its final running-sum value is the regime's row
        // count, so the pivot is always well-conditioned).
        int piv = -1;
        for (std::size_t j = 0; j < p.params.size(); ++j)
            if (p.params[j].kind == ParamKind::Intercept && p.params[j].segment == p.n_seg - 1)
                piv = static_cast<int>(j);
        p.tie_c.resize(p.params.size());
        for (std::size_t j = 0; j < obj_cols.size(); ++j) p.tie_c[j] = obj_cols[j].back();
        p.tie_d = obj_y.back();
        p.pivot = piv;
        const double cp = p.tie_c[static_cast<std::size_t>(piv)];
        const auto& pcol = obj_cols[static_cast<std::size_t>(piv)];
        std::vector<std::vector<double>> red_cols;
        std::vector<double> red_y(obj_y.size());
        for (std::size_t t = 0; t < obj_y.size(); ++t)
            red_y[t] = obj_y[t] - (p.tie_d / cp) * pcol[t];
        for (std::size_t j = 0; j < obj_cols.size(); ++j) {
            if (static_cast<int>(j) == piv) continue;
            std::vector<double> col(obj_y.size());
            for (std::size_t t = 0; t < obj_y.size(); ++t)
                col[t] = obj_cols[j][t] - (p.tie_c[j] / cp) * pcol[t];
            red_cols.push_back(std::move(col));
            p.free_idx.push_back(static_cast<int>(j));
        }
        p.mom = MomentSet::from(red_cols, red_y);
    } else {
        obj_cols = p.dyn_cols;
        obj_y = y;
        for (std::size_t j = 0; j < obj_cols.size(); ++j)
            p.free_idx.push_back(static_cast<int>(j));
        p.mom = MomentSet::from(obj_cols, obj_y);
    }
    double mean = 0.0;
    for (double v : obj_y) mean += v;
    mean /= static_cast<double>(obj_y.size());
    for (double v : obj_y) p.sst_obj += (v - mean) * (v - mean);
    return p;
}

std::vector<double> grid_values(const GridSpec& g) {
    std::vector<double> out;
    const int steps = static_cast<int>(std::floor((g.max - g.min) / g.step + 1e-9));
    out.reserve(static_cast<std::size_t>(steps + 1));
    for (int i = 0; i <= steps; ++i) out.push_back(g.min + g.step * i);
    return out;
}

// Kind of the coefficient behind a (possibly reduced) moment column.
ParamKind col_kind(const Problem& p, int col) {
    return p.params[static_cast<std::size_t>(p.free_idx[static_cast<std::size_t>(col)])].kind;
}

// Given fixed values for the non-intercept columns, fill the free intercepts
// with the exact conditional optimum.  `th` is indexed like the moment set;
// under the endpoint tie the eliminated intercept is not among them (it is
// recovered later from the tie), and a problem may have no free intercept at
// all, in which case this is a no-op.
bool profile_intercepts(const Problem& p, std::vector<double>& th) {
    std::vector<int> icpt;
    for (int j = 0; j < p.mom.k; ++j)
        if (col_kind(p, j) == ParamKind::Intercept) icpt.push_back(j);
    const int m = static_cast<int>(icpt.size());
    if (m == 0) return true;
    std::vector<std::vector<double>> a(m, std::vector<double>(m));
    std::vector<double> rhs(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        rhs[r] = p.mom.b[icpt[r]];
        for (int j = 0; j < p.mom.k; ++j)
            if (col_kind(p, j) != ParamKind::Intercept)
                rhs[r] -= p.mom.G[icpt[r]][j] * th[j];
        for (int c = 0; c < m; ++c) a[r][c] = p.mom.G[icpt[r]][icpt[c]];
    }
    std::vector<double> sol;
    if (!gauss_solve(a, rhs, sol)) return false;
    for (int r = 0; r < m; ++r) th[static_cast<std::size_t>(icpt[r])] = sol[r];
    return true;
}

struct Solved {
    std::vector<double> theta;
    double sse = std::numeric_limits<double>::infinity();
    std::vector<double> trace; // objective RMS after each accepted refinement pass
};

// Grid seed + exact coordinate descent + one full linear polish.  The polish
// step is what reaches machine-precision optima on the strongly correlated
// cumulative designs, where plain coordinate descent converges only
// geometrically; it is accepted only when it does not increase the objective,
// so every recorded step of the refinement is monotone.
Solved solve_problem(const Problem& p, const FitConfig& cfg) {
    const int k = p.mom.k;
    std::vector<int> grid_dims;
    for (int j = 0; j < k; ++j)
        if (col_kind(p, j) != ParamKind::Intercept) grid_dims.push_back(j);

    auto grid_for = [&](int j) {
        return col_kind(p, j) == ParamKind::LfCoeff ? grid_values(cfg.lf_grid)
                                                    : grid_values(cfg.ue_grid);
    };

    Solved best;
    std::vector<double> th(static_cast<std::size_t>(k), 0.0);
    std::vector<double> best_abs; // |grid values| of the incumbent, for ties

    auto consider = [&](std::vector<double>& cand) {
        if (!profile_intercepts(p, cand)) return;
        const double sse = p.mom.sse(cand);
        if (!std::isfinite(sse)) return;
        std::vector<double> abs_vals;
        for (int j : grid_dims) abs_vals.push_back(std::fabs(cand[j]));
        if (sse < best.sse || (sse == best.sse && abs_vals < best_abs)) {
            best.sse = sse;
            best.theta = cand;
            best_abs = abs_vals;
        }
    };

    if (grid_dims.empty()) {
        consider(th);
    } else if (grid_dims.size() == 1) {
        for (double v : grid_for(grid_dims[0])) {
            th[grid_dims[0]] = v;
            consider(th);
        }
    } else if (grid_dims.size() == 2) {
        for (double v0 : grid_for(grid_dims[0])) {
            th[grid_dims[0]] = v0;
            for (double v1 : grid_for(grid_dims[1])) {
                th[grid_dims[1]] = v1;
                consider(th);
            }
        }
    } else {
        // Too many dimensions for an exhaustive product: sweep the grid two
        // coefficients at a time, twice, seeding from the incumbent.
        for (int round = 0; round < 2; ++round) {
            for (std::size_t d = 0; d + 1 < grid_dims.size(); d += 2) {
                std::vector<double> cand = best.theta.empty() ? th : best.theta;
                for (double v0 : grid_for(grid_dims[d])) {
                    cand[grid_dims[d]] = v0;
                    for (double v1 : grid_for(grid_dims[d + 1])) {
                        cand[grid_dims[d + 1]] = v1;
                        consider(cand);
                    }
                }
            }
            if (grid_dims.size() % 2 == 1) {
                std::vector<double> cand = best.theta.empty() ? th : best.theta;
                for (double v : grid_for(grid_dims.back())) {
                    cand[grid_dims.back()] = v;
                    consider(cand);
                }
            }
        }
    }
    if (best.theta.empty()) return best; // nothing solvable

    // Coordinate descent with exact per-coordinate minimization.
    std::vector<double> cur = best.theta;
    double cur_sse = best.sse;
    for (int pass = 0; pass < cfg.refine_iters; ++pass) {
        std::vector<double> next = cur;
        for (int j = 0; j < k; ++j) next[j] = p.mom.coord_argmin(next, j);
        const double next_sse = p.mom.sse(next);
        if (!std::isfinite(next_sse) || next_sse > cur_sse) break; // fp guard
        const double gain = cur_sse - next_sse;
        cur = next;
        cur_sse = next_sse;
        best.trace.push_back(std::sqrt(cur_sse / p.mom.n));
        if (gain <= 1e-15 * std::max(1.0, cur_sse)) break;
    }

    // Full normal-equation polish, kept only when it does not lose ground.
    std::vector<double> polished;
    if (gauss_solve(p.mom.G, p.mom.b, polished)) {
        const double psse = p.mom.sse(polished);
        if (std::isfinite(psse) && psse <= cur_sse) {
            cur = polished;
            cur_sse = psse;
            best.trace.push_back(std::sqrt(std::max(cur_sse, 0.0) / p.mom.n));
        }
    }
    best.theta = expand_theta(p, cur);
    best.sse = cur_sse;
    return best;
}

struct Candidate {
    Problem problem;
    Solved solved;
    int lag = 0;
    int ue_lag = 0;
    bool has_break = false;
};

AnnualSeries prepare_growth(const AnnualSeries& lf, const FitConfig& cfg) {
    auto g = growth_rate(lf);
    if (cfg.predictor_smooth_window > 1) g = moving_average(g, cfg.predictor_smooth_window);
    return g;
}

FitReport assemble_report(const Candidate& c, const AnnualSeries& lf,
                          const AnnualSeries& growth, const FitConfig& cfg, bool generalized,
                          int fitted_ue_lag) {
    const Problem& p = c.problem;
    const std::vector<double>& th = c.solved.theta;

    PiecewiseModel model;
    model.target = Target::Inflation; // semantic target supplied by the caller
    if (cfg.predictor_smooth_window > 1)
        model.smoothing = Smoothing{cfg.predictor_smooth_window, SmoothTarget::Predictor};
    for (int seg = 0; seg < p.n_seg; ++seg) {
        ModelSegment s;
        s.lf_lag = c.lag;
        for (std::size_t j = 0; j < p.params.size(); ++j) {
            if (p.params[j].segment != seg) continue;
            switch (p.params[j].kind) {
            case ParamKind::LfCoeff: s.lf_coeff = th[j]; break;
            case ParamKind::UeCoeff: s.ue_coeff = th[j]; break;
            case ParamKind::Intercept: s.intercept = th[j]; break;
            }
        }
        if (generalized) {
            if (cfg.pin_ue_coeff) s.ue_coeff = *cfg.pin_ue_coeff;
            if (!s.ue_coeff) s.ue_coeff = 0.0;
            s.ue_lag = fitted_ue_lag;
        }
        if (p.n_seg == 2) {
            if (seg == 0) s.valid_to = p.break_year;
            else s.valid_from = p.break_year + 1;
        }
        model.segments.push_back(s);
    }

    // Residuals on the dynamic scale; the pinned partner contribution was
    // already folded into dyn_y, so X*theta is the full prediction offset.
    std::vector<double> resid(static_cast<std::size_t>(p.n));
    for (int t = 0; t < p.n; ++t) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p.dyn_cols.size(); ++j) fit += p.dyn_cols[j][t] * th[j];
        resid[static_cast<std::size_t>(t)] = p.dyn_y[static_cast<std::size_t>(t)] - fit;
    }
    AnnualSeries resid_dyn(p.year_first, resid, Unit::RatePerYear, "residual");
    AnnualSeries resid_cum = cumulative_sum(resid_dyn).with_label("cumulative residual");

    double ss_dyn = 0.0, ss_cum = 0.0, sum_target = 0.0;
    for (int t = 0; t < p.n; ++t) {
        ss_dyn += resid_dyn[static_cast<std::size_t>(t)] * resid_dyn[static_cast<std::size_t>(t)];
        ss_cum += resid_cum[static_cast<std::size_t>(t)] * resid_cum[static_cast<std::size_t>(t)];
    }
    // dyn_y had the pinned term removed; undo for the observed cumulative end.
    for (int t = 0; t < p.n; ++t) sum_target += p.dyn_y[static_cast<std::size_t>(t)];

    BoundaryConditions bc;
    bc.p0 = 1.0;
    bc.p1 = 1.0 + sum_target;
    bc.year_first = p.year_first;
    bc.year_last = p.year_last;
    const int lf_first = p.year_first - c.lag;
    const int lf_last = p.year_last - c.lag;
    bc.lf0 = lf.has_year(lf_first) ? lf.at_year(lf_first) : lf[0];
    bc.lf1 = lf.has_year(lf_last) ? lf.at_year(lf_last) : lf[lf.size() - 1];
    (void)growth;

    FitReport rep{
        .fitted = std::move(model),
        .r_squared = p.sst_obj > 0.0 ? 1.0 - c.solved.sse / p.sst_obj
                                     : -std::numeric_limits<double>::infinity(),
        .rms_dynamic = std::sqrt(ss_dyn / p.n),
        .rms_cumulative = std::sqrt(ss_cum / p.n),
        .rmsfe = std::nullopt,
        .residual_dynamic = std::move(resid_dyn),
        .residual_cumulative = std::move(resid_cum),
        .boundary = bc,
        .objective_trace = c.solved.trace,
    };
    return rep;
}

// Shared search driver for the one- and two-variable fits.
FitReport fit_driver(const AnnualSeries& target, const AnnualSeries& lf,
                     const AnnualSeries* partner, const FitConfig& cfg) {
    cfg.validate();
    const auto growth = prepare_growth(lf, cfg);

    std::vector<std::optional<int>> breaks;
    if (cfg.break_candidates.empty()) {
        breaks.push_back(std::nullopt);
    } else {
        for (int b : cfg.break_candidates) breaks.emplace_back(b);
    }
    std::vector<int> ue_lags;
    if (partner) {
        for (int l = cfg.lag_min; l <= cfg.lag_max; ++l) ue_lags.push_back(l);
    } else {
        ue_lags.push_back(0);
    }

    std::optional<Candidate> best;
    int max_rows = 0;
    for (int lag = cfg.lag_min; lag <= cfg.lag_max; ++lag) {
        for (int ue_lag : ue_lags) {
            for (const auto& brk : breaks) {
                auto prob = build_problem(target, growth, partner, lag, ue_lag, brk,
                                          cfg.pin_ue_coeff, cfg);
                if (!prob) continue;
                max_rows = std::max(max_rows, prob->n);
                auto solved = solve_problem(*prob, cfg);
                if (solved.theta.empty()) continue;
                // Strict improvement keeps the tie-break at the smallest lag
                // (loops ascend), then the grid stage's |coefficient| rule.
                if (!best || solved.sse < best->solved.sse) {
                    best = Candidate{std::move(*prob), std::move(solved), lag, ue_lag,
                                     brk.has_value()};
                }
            }
        }
    }
    if (!best) {
        if (!cfg.break_candidates.empty())
            throw DataError("no usable break candidate: every candidate leaves a side with "
                            "fewer than " + std::to_string(cfg.min_segment_points) + " points");
        throw DataError("series too short to fit at any lag in " +
                        std::to_string(cfg.lag_min) + ".." + std::to_string(cfg.lag_max));
    }
    if (max_rows < cfg.min_points && !cfg.allow_short)
        throw DataError("only " + std::to_string(max_rows) + " overlapping points, fewer than " +
                        std::to_string(cfg.min_points) +
                        " (pass the short-sample override to fit anyway)");

    return assemble_report(*best, lf, growth, cfg, partner != nullptr, best->ue_lag);
}

} // namespace

FitReport fit_cumulative(const AnnualSeries& target, const AnnualSeries& labor_force,
                         const FitConfig& cfg) {
    return fit_driver(target, labor_force, nullptr, cfg);
}

FitReport fit_generalized(const AnnualSeries& target, const AnnualSeries& labor_force,
                          const AnnualSeries& partner, const FitConfig& cfg) {
    double mx = 0.0;
    for (double v : partner.values()) mx = std::max(mx, std::fabs(v));
    if (mx == 0.0) {
        // Degenerate partner: identical to the one-variable fit.
        FitReport rep = fit_driver(target, labor_force, nullptr, cfg);
        for (auto& s : rep.fitted.segments) {
            s.ue_coeff = 0.0;
            s.ue_lag = 0;
        }
        return rep;
    }
    return fit_driver(target, labor_force, &partner, cfg);
}

ScatterFit ols(const AnnualSeries& x, const AnnualSeries& y) {
    auto [xa, ya] = align(x, y);
    const int n = static_cast<int>(xa.size());
    if (n < 3) throw DataError("ols: need at least 3 aligned points, got " + std::to_string(n));
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xa[static_cast<std::size_t>(i)];
        sy += ya[static_cast<std::size_t>(i)];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xa[static_cast<std::size_t>(i)] - mx;
        const double dy = ya[static_cast<std::size_t>(i)] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw NumericError("degenerate regressor: x has zero variance");
    if (syy <= 0.0) throw NumericError("degenerate regressand: y has zero variance");
    ScatterFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ya[static_cast<std::size_t>(i)] -
                         (f.slope * xa[static_cast<std::size_t>(i)] + f.intercept);
        ssr += r * r;
    }
    f.r_squared = 1.0 - ssr / syy;
    f.rms = std::sqrt(ssr / n);
    return f;
}

double rmsfe_pseudo_oos(const AnnualSeries& target, const AnnualSeries& labor_force, int lag,
                        const FitConfig& cfg, double start_fraction) {
    cfg.validate();
    if (!(start_fraction > 0.0 && start_fraction < 1.0))
        throw DataError("rmsfe: start_fraction must be inside (0,1)");
    if (lag < 0) throw DataError("rmsfe: lag must be >= 0");
    const auto growth = prepare_growth(labor_force, cfg);
    auto xg = shift(growth, lag);
    auto [ya, xa] = align(target, xg);
    const int n = static_cast<int>(ya.size());
    const int first_train = static_cast<int>(std::ceil(start_fraction * n));
    if (first_train < 10)
        throw DataError("rmsfe: first training window has " + std::to_string(first_train) +
                        " observations, need at least 10");

    // Closed-form least squares on the configured objective scale; this is
    // the fixed point the grid+descent search converges to, so refits inside
    // the expanding window can use it directly.  The running-sum variant
    // carries the same endpoint anchor as the full fit: the window's
    // intercept is tied so the fitted running-sum curve ends exactly on the
    // observed terminal value.
    auto fit_window = [&](int through) -> std::optional<std::pair<double, double>> {
        std::vector<double> xs, ys;
        for (int i = 0; i < through; ++i) {
            xs.push_back(xa[static_cast<std::size_t>(i)]);
            ys.push_back(ya[static_cast<std::size_t>(i)]);
        }
        if (cfg.objective == FitObjective::CumulativeRms) {
            const auto cx = cumsum(xs);
            const auto cy = cumsum(ys);
            const double xn = cx.back();
            const double yn = cy.back();
            const double rn = static_cast<double>(cx.size());
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t t = 0; t < cx.size(); ++t) {
                const double ramp = static_cast<double>(t + 1);
                const double xr = cx[t] - (xn / rn) * ramp;
                const double yr = cy[t] - (yn / rn) * ramp;
                sxx += xr * xr;
                sxy += xr * yr;
            }
            if (sxx <= 0.0) return std::nullopt;
            const double a = sxy / sxx;
            return std::make_pair(a, (yn - a * xn) / rn);
        }
        std::vector<double> ones(xs.size(), 1.0);
        std::vector<std::vector<double>> cols{xs, ones};
        auto mom = MomentSet::from(cols, ys);
        std::vector<double> th;
        if (!gauss_solve(mom.G, mom.b, th)) return std::nullopt;
        return std::make_pair(th[0], th[1]);
    };

    // T counts training rows; the forecast target is the row `lag` places
    // past the end of the training window.
    double sum_sq = 0.0;
    int count = 0;
    for (int T = first_train; T <= n - lag; ++T) {
        const int target_row = T + lag - 1;
        if (target_row < 0 || target_row >= n) continue;
        auto coefs = fit_window(T);
        if (!coefs) continue;
        const double pred =
            coefs->first * xa[static_cast<std::size_t>(target_row)] + coefs->second;
        const double err = pred - ya[static_cast<std::size_t>(target_row)];
        sum_sq += err * err;
        ++count;
    }
    if (count == 0) throw DataError("rmsfe: no forecastable years with lag " + std::to_string(lag));
    return std::sqrt(sum_sq / count);
}

LagScan scan_lag(const AnnualSeries& target, const AnnualSeries& labor_force,
                 const FitConfig& cfg) {
    cfg.validate();
    LagScan out;
    double best = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int lag = cfg.lag_min; lag <= cfg.lag_max; ++lag) {
        FitConfig one = cfg;
        one.lag_min = one.lag_max = lag;
        try {
            const FitReport rep = fit_cumulative(target, labor_force, one);
            const double rms = cfg.objective == FitObjective::CumulativeRms ? rep.rms_cumulative
                                                                            : rep.rms_dynamic;
            out.rows.push_back({lag, rms});
            if (rms < best) {
                best = rms;
                out.best_lag = lag;
            }
            worst = std::max(worst, rms);
        } catch (const DataError&) {
            continue; // lag unsupported by the data; scan the rest
        }
    }
    if (out.rows.empty())
        throw DataError("scan_lag: no lag in " + std::to_string(cfg.lag_min) + ".." +
                        std::to_string(cfg.lag_max) + " is fittable on this data");
    out.flat_profile = best > 0.95 * worst;
    return out;
}

std::string fit_report_text(const FitReport& rep) {
    std::string s;
    s += "Fit report\n";
    s += "  model: " + format_equation(rep.fitted) + "\n";
    s += "  r^2 (objective scale): " + fmt_double(rep.r_squared) + "\n";
    s += "  rms (annual): " + fmt_double(rep.rms_dynamic) + "\n";
    s += "  rms (cumulative): " + fmt_double(rep.rms_cumulative) + "\n";
    if (rep.rmsfe) s += "  rmsfe (pseudo out-of-sample): " + fmt_double(*rep.rmsfe) + "\n";
    s += "  boundary: P(" + std::to_string(rep.boundary.year_first) +
         ") = " + fmt_double(rep.boundary.p0) + ", P(" + std::to_string(rep.boundary.year_last) +
         ") = " + fmt_double(rep.boundary.p1) + "; LF " + fmt_double(rep.boundary.lf0) + " -> " +
         fmt_double(rep.boundary.lf1) + "\n";
    s += "  refinement passes: " + std::to_string(rep.objective_trace.size()) + "\n";
    return s;
}

std::string fit_report_csv(const FitReport& rep) {
    std::string s = "kind,key,year,value\n";
    auto stat = [&s](const std::string& key, double v) {
        s += "stat," + key + ",," + fmt_double(v) + "\n";
    };
    for (std::size_t i = 0; i < rep.fitted.segments.size(); ++i) {
        const ModelSegment& seg = rep.fitted.segments[i];
        const std::string p = "segment" + std::to_string(i) + ".";
        auto coef = [&s, &p](const std::string& key, double v) {
            s += "coef," + p + key + ",," + fmt_double(v) + "\n";
        };
        coef("lf_coeff", seg.lf_coeff);
        coef("intercept", seg.intercept);
        coef("lf_lag", seg.lf_lag);
        if (seg.ue_coeff) {
            coef("ue_coeff", *seg.ue_coeff);
            coef("ue_lag", seg.ue_lag ? *seg.ue_lag : seg.lf_lag);
        }
        if (seg.valid_from) coef("valid_from", *seg.valid_from);
        if (seg.valid_to) coef("valid_to", *seg.valid_to);
    }
    if (rep.fitted.smoothing && rep.fitted.smoothing->window > 1)
        stat("smooth_window", rep.fitted.smoothing->window);
    stat("r_squared", rep.r_squared);
    stat("rms_dynamic", rep.rms_dynamic);
    stat("rms_cumulative", rep.rms_cumulative);
    if (rep.rmsfe) stat("rmsfe", *rep.rmsfe);
    auto bound = [&s](const std::string& key, double v) {
        s += "boundary," + key + ",," + fmt_double(v) + "\n";
    };
    bound("p0", rep.boundary.p0);
    bound("p1", rep.boundary.p1);
    bound("lf0", rep.boundary.lf0);
    bound("lf1", rep.boundary.lf1);
    bound("year_first", rep.boundary.year_first);
    bound("year_last", rep.boundary.year_last);
    auto series_rows = [&s](const char* kind, const AnnualSeries& ser) {
        for (std::size_t i = 0; i < ser.size(); ++i)
            s += std::string(kind) + ",," +
                 std::to_string(ser.start_year() + static_cast<int>(i)) + "," +
                 fmt_double(ser.values()[i]) + "\n";
    };
    series_rows("residual_dynamic", rep.residual_dynamic);
    series_rows("residual_cumulative", rep.residual_cumulative);
    return s;
}

} // namespace lfm
