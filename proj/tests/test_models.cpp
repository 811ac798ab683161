#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lfm/annual_series.hpp"
#include "lfm/errors.hpp"
#include "lfm/model.hpp"
#include "lfm/series_ops.hpp"

using namespace lfm;

namespace {

/// Labor force growing at a fixed per-year rate from a starting level.
AnnualSeries lf_const_growth(int y0, int n, double level, double g) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = level;
        level *= 1.0 + g;
    }
    return AnnualSeries(y0, std::move(v), Unit::Count, "lf");
}

AnnualSeries lf_from_growth(int y0, const std::vector<double>& g, double level = 1e5) {
    std::vector<double> v{level};
    for (double gi : g) v.push_back(v.back() * (1.0 + gi));
    return AnnualSeries(y0, std::move(v), Unit::Count, "lf");
}

AnnualSeries rates(int y0, std::vector<double> v, const char* label = "r") {
    return AnnualSeries(y0, std::move(v), Unit::RatePerYear, label);
}

} // namespace

TEST_CASE("constant labor force predicts the intercept alone") {
    const auto lf = lf_const_growth(1960, 12, 1e5, 0.0);
    const ModelSegment seg{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2};
    const auto y = eval_simple(seg, lf);
    // growth exists 1961..1971; lagging by 2 puts the prediction on 1963..1973
    CHECK(y.start_year() == 1963);
    CHECK(y.end_year() == 1973);
    for (double v : y.values()) CHECK(v == doctest::Approx(-0.03).epsilon(1e-12));
}

TEST_CASE("segment arithmetic matches hand computation") {
    const auto lf = lf_from_growth(1960, {0.02, 0.02, -0.01});
    const ModelSegment seg{.lf_coeff = 2.0, .intercept = 0.01, .lf_lag = 1};
    const auto y = eval_simple(seg, lf);
    CHECK(y.start_year() == 1962);
    CHECK(y.size() == 3);
    CHECK(y.at_year(1962) == doctest::Approx(2.0 * 0.02 + 0.01).epsilon(1e-12));
    CHECK(y.at_year(1963) == doctest::Approx(2.0 * 0.02 + 0.01).epsilon(1e-12));
    CHECK(y.at_year(1964) == doctest::Approx(2.0 * -0.01 + 0.01).epsilon(1e-12));
}

TEST_CASE("generalized segment adds the partner term at its own lag") {
    const auto lf = lf_from_growth(1960, {0.01, 0.02, 0.03, 0.01, 0.00});
    const auto ue = rates(1960, {0.05, 0.06, 0.07, 0.08, 0.09, 0.10}, "ue");
    const ModelSegment seg{
        .lf_coeff = 3.0, .intercept = -0.05, .lf_lag = 2, .ue_coeff = 0.8, .ue_lag = 1};
    const auto y = eval_generalized(seg, lf, ue);
    // growth 1961..1965 shifted 2 -> 1963..1967; ue shifted 1 -> 1961..1966
    CHECK(y.start_year() == 1963);
    CHECK(y.end_year() == 1966);
    // y(1964) = 3*g(1962) + 0.8*ue(1963) - 0.05
    CHECK(y.at_year(1964) == doctest::Approx(3.0 * 0.02 + 0.8 * 0.08 - 0.05).epsilon(1e-12));
}

TEST_CASE("negative partner lag reads the partner from a later year") {
    // ue(t) = -1.5*pi(t+1) + 0.116: the partner is dated one year after the
    // prediction, so the prediction domain ends one year before the data.
    const auto pi = rates(1970, {0.01, 0.02, 0.03, 0.04, 0.05}, "pi");
    const ModelSegment seg{
        .lf_coeff = 0.0, .intercept = 0.116, .ue_coeff = -1.5, .ue_lag = -1};
    PiecewiseModel m{.target = Target::Unemployment,
                     .measure = Measure::UENational,
                     .segments = {seg},
                     .smoothing = {}};
    const auto y = eval_piecewise(m, nullptr, &pi);
    CHECK(y.start_year() == 1969);
    CHECK(y.end_year() == 1973);
    CHECK(y.at_year(1972) == doctest::Approx(-1.5 * 0.04 + 0.116).epsilon(1e-12));
}

TEST_CASE("piecewise model switches coefficients at the window boundary") {
    const auto lf = lf_const_growth(1960, 40, 1e5, 0.01);
    const PiecewiseModel m{
        .target = Target::Inflation,
        .measure = Measure::CPI,
        .segments = {{.lf_coeff = 2.0, .intercept = 0.005, .lf_lag = 2, .valid_to = 1986},
                     {.lf_coeff = 1.1, .intercept = 0.055, .lf_lag = 2, .valid_from = 1987}},
        .smoothing = {}};
    m.validate();
    const auto y = eval_piecewise(m, &lf, nullptr);
    CHECK(y.start_year() == 1963);
    CHECK(y.end_year() == 1999 + 2);
    CHECK(y.at_year(1986) == doctest::Approx(2.0 * 0.01 + 0.005).epsilon(1e-12));
    CHECK(y.at_year(1987) == doctest::Approx(1.1 * 0.01 + 0.055).epsilon(1e-12));
}

TEST_CASE("gap between piecewise windows is an error when data spans it") {
    const auto lf = lf_const_growth(1960, 40, 1e5, 0.01);
    const PiecewiseModel m{
        .target = Target::Inflation,
        .measure = Measure::CPI,
        .segments = {{.lf_coeff = 2.0, .intercept = 0.0, .lf_lag = 0, .valid_to = 1980},
                     {.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .valid_from = 1990}},
        .smoothing = {}};
    m.validate(); // a gap is legal in the model; it fails only at evaluation
    CHECK_THROWS_AS(eval_piecewise(m, &lf, nullptr), DataError);
}

TEST_CASE("model validation rejects inconsistent shapes") {
    // partner lag without a partner coefficient
    CHECK_THROWS_AS(
        (ModelSegment{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .ue_lag = 2}).validate(),
        DataError);
    // empty validity window
    CHECK_THROWS_AS((ModelSegment{.lf_coeff = 1.0,
                                  .intercept = 0.0,
                                  .lf_lag = 0,
                                  .valid_from = 1990,
                                  .valid_to = 1980})
                        .validate(),
                    DataError);
    // lag outside the supported range
    CHECK_THROWS_AS((ModelSegment{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 25}).validate(),
                    DataError);
    // overlapping windows
    const PiecewiseModel overlap{
        .target = Target::Inflation,
        .measure = Measure::CPI,
        .segments = {{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .valid_to = 1987},
                     {.lf_coeff = 2.0, .intercept = 0.0, .lf_lag = 0, .valid_from = 1986}},
        .smoothing = {}};
    CHECK_THROWS_AS(overlap.validate(), DataError);
    // even smoothing window
    const PiecewiseModel even_window{
        .target = Target::Inflation,
        .measure = Measure::CPI,
        .segments = {{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0}},
        .smoothing = Smoothing{4, SmoothTarget::Predictor}};
    CHECK_THROWS_AS(even_window.validate(), DataError);
    // no segments at all
    const PiecewiseModel empty{.target = Target::Inflation,
                               .measure = Measure::CPI,
                               .segments = {},
                               .smoothing = {}};
    CHECK_THROWS_AS(empty.validate(), DataError);
}

TEST_CASE("covers() treats unset bounds as open") {
    const ModelSegment open{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0};
    CHECK(open.covers(1800));
    CHECK(open.covers(2100));
    const ModelSegment to86{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .valid_to = 1986};
    CHECK(to86.covers(1986));
    CHECK_FALSE(to86.covers(1987));
    const ModelSegment from71{
        .lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .valid_from = 1971};
    CHECK_FALSE(from71.covers(1970));
    CHECK(from71.covers(1971));
}

TEST_CASE("smoothing the predictor equals smoothing the prediction for linear one-variable models") {
    std::mt19937 rng(2024);
    std::normal_distribution<double> noise(0.01, 0.004);
    std::vector<double> g(30);
    for (double& v : g) v = noise(rng);
    const auto lf = lf_from_growth(1960, g);

    const ModelSegment seg{.lf_coeff = 3.0, .intercept = 0.085, .lf_lag = 11};
    PiecewiseModel pre{.target = Target::Unemployment,
                       .measure = Measure::UESurvey,
                       .segments = {seg},
                       .smoothing = Smoothing{5, SmoothTarget::Predictor}};
    PiecewiseModel post = pre;
    post.smoothing = Smoothing{5, SmoothTarget::Prediction};

    const auto a = eval_piecewise(pre, &lf, nullptr);
    const auto b = eval_piecewise(post, &lf, nullptr);
    // y = a1*MA(g)(t-k) + a2 == MA(a1*g(t-k) + a2): the linear map commutes
    // with the centered average, so only the label may differ.
    CHECK(a.start_year() == b.start_year());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-12));
    // and the smoothing trims (window-1) years versus the raw evaluation
    PiecewiseModel raw = pre;
    raw.smoothing.reset();
    const auto c = eval_piecewise(raw, &lf, nullptr);
    CHECK(a.size() + 4 == c.size());
}

TEST_CASE("smoothing placement matters for generalized models") {
    std::mt19937 rng(7);
    std::normal_distribution<double> noise(0.01, 0.01);
    std::vector<double> g(25);
    for (double& v : g) v = noise(rng);
    const auto lf = lf_from_growth(1960, g);
    std::vector<double> uev(26);
    for (double& v : uev) v = std::abs(noise(rng)) + 0.03;
    const auto ue = rates(1960, uev, "ue");

    const ModelSegment seg{
        .lf_coeff = 2.0, .intercept = -0.02, .lf_lag = 3, .ue_coeff = 0.7, .ue_lag = 1};
    PiecewiseModel pre{.target = Target::Inflation,
                       .measure = Measure::CPI,
                       .segments = {seg},
                       .smoothing = Smoothing{3, SmoothTarget::Predictor}};
    PiecewiseModel post = pre;
    post.smoothing = Smoothing{3, SmoothTarget::Prediction};
    const auto a = eval_piecewise(pre, &lf, &ue);
    const auto b = eval_piecewise(post, &lf, &ue);
    // Predictor smoothing leaves the partner term alone; Prediction smoothing
    // averages it too, so interior values must differ on noisy data.
    const auto [lo, hi] = std::pair{std::max(a.start_year(), b.start_year()),
                                    std::min(a.end_year(), b.end_year())};
    bool any_diff = false;
    for (int y = lo; y <= hi; ++y)
        if (std::abs(a.at_year(y) - b.at_year(y)) > 1e-9) any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("balance residual vanishes when both models hold exactly") {
    std::mt19937 rng(99);
    std::normal_distribution<double> noise(0.008, 0.006);
    std::vector<double> g(40);
    for (double& v : g) v = noise(rng);
    const auto lf = lf_from_growth(1960, g);

    const ModelSegment pi_seg{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2};
    const ModelSegment ue_seg{.lf_coeff = -2.1, .intercept = 0.12, .lf_lag = 5};
    const auto pi = eval_simple(pi_seg, lf);
    const auto ue = eval_simple(ue_seg, lf);

    const auto resid = balance_residual(pi, ue, pi_seg, ue_seg);
    REQUIRE(resid.size() > 10);
    for (double v : resid.values()) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("balance residual picks up a violation of one model") {
    const auto lf = lf_const_growth(1960, 30, 1e5, 0.01);
    const ModelSegment pi_seg{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2};
    const ModelSegment ue_seg{.lf_coeff = -2.1, .intercept = 0.12, .lf_lag = 5};
    const auto pi_exact = eval_simple(pi_seg, lf);
    std::vector<double> shifted = pi_exact.values();
    for (double& v : shifted) v += 0.004; // violate the inflation model by 0.4pp
    const AnnualSeries pi_off(pi_exact.start_year(), std::move(shifted), Unit::RatePerYear, "pi");
    const auto ue = eval_simple(ue_seg, lf);
    const auto resid = balance_residual(pi_off, ue, pi_seg, ue_seg);
    for (double v : resid.values()) CHECK(v == doctest::Approx(0.004 / 4.0).epsilon(1e-9));
}

TEST_CASE("equations format in the documented style") {
    const ModelSegment us_pi{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2};
    CHECK(format_equation(us_pi, Target::Inflation) == "pi(t) = 4*g(t-2) - 0.03");

    const ModelSegment de_ue{
        .lf_coeff = 0.0, .intercept = 0.116, .ue_coeff = -1.5, .ue_lag = -1,
        .valid_from = 1971};
    const PiecewiseModel de{.target = Target::Unemployment,
                            .measure = Measure::UENational,
                            .segments = {de_ue},
                            .smoothing = {}};
    CHECK(format_equation(de) == "1971..: ue(t) = -1.5*pi(t+1) + 0.116");

    const PiecewiseModel italy{
        .target = Target::Unemployment,
        .measure = Measure::UESurvey,
        .segments = {{.lf_coeff = 3.0, .intercept = 0.085, .lf_lag = 11, .valid_from = 1969}},
        .smoothing = Smoothing{5, SmoothTarget::Predictor}};
    CHECK(format_equation(italy) ==
          "1969..: ue(t) = 3*g(t-11) + 0.085  [growth smoothed, MA(5)]");

    const PiecewiseModel austria{
        .target = Target::Inflation,
        .measure = Measure::GdpDeflator,
        .segments = {{.lf_coeff = 1.2,
                      .intercept = 0.066,
                      .lf_lag = 0,
                      .ue_coeff = -1.0,
                      .ue_lag = 0,
                      .valid_from = 1965,
                      .valid_to = 1986},
                     {.lf_coeff = 0.9,
                      .intercept = 0.0074,
                      .lf_lag = 0,
                      .ue_coeff = -1.0,
                      .ue_lag = 0,
                      .valid_from = 1987}},
        .smoothing = {}};
    CHECK(format_equation(austria) ==
          "1965..1986: pi(t) = 1.2*g(t) - 1*ue(t) + 0.066;  "
          "1987..: pi(t) = 0.9*g(t) - 1*ue(t) + 0.0074");
}

TEST_CASE("restricted evaluation clamps to the requested years") {
    const auto lf = lf_const_growth(1960, 30, 1e5, 0.01);
    const PiecewiseModel m{
        .target = Target::Inflation,
        .measure = Measure::CPI,
        .segments = {{.lf_coeff = 2.0, .intercept = 0.0, .lf_lag = 1}},
        .smoothing = {}};
    const auto full = eval_piecewise(m, &lf, nullptr);
    const auto part = eval_piecewise(m, &lf, nullptr, 1970, 1980);
    CHECK(part.start_year() == 1970);
    CHECK(part.end_year() == 1980);
    for (int y = 1970; y <= 1980; ++y)
        CHECK(part.at_year(y) == doctest::Approx(full.at_year(y)).epsilon(1e-15));
}
