#pragma once
// Shared synthetic benchmark for the noisy-recovery and noise-suppression
// checks.
//
// Labor-force growth is drawn to look like postwar annual data: a slow
// demographic swing (one rise-and-fall over several decades) around a mean of
// one to two percent, plus white business-cycle wiggle.  The target rate
// series is generated from a single-segment model and perturbed with
// level-measurement noise: the measured series underlying a rate (a price or
// count index) carries an i.i.d. error on its *level*, so the derived annual
// rate carries the differenced error e_t - e_{t-1}.  Each annual perturbation
// is Gaussian with standard deviation exactly `sigma`, but consecutive errors
// share a term and cancel in running sums — which is what the running-sum
// objective exploits and the annual-rate objective cannot.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lfm/annual_series.hpp"
#include "lfm/model.hpp"

namespace bench {

inline constexpr double kTwoPi = 6.283185307179586;

// Demographic swing + white wiggle, n annual growth rates.
inline std::vector<double> demographic_growth(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> mean_d(0.008, 0.02);
    std::uniform_real_distribution<double> amp_d(0.006, 0.014);
    std::uniform_real_distribution<double> period_d(30.0, 70.0);
    std::uniform_real_distribution<double> phase_d(0.0, kTwoPi);
    const double mu = mean_d(rng);
    const double amp = amp_d(rng);
    const double period = period_d(rng);
    const double phase = phase_d(rng);
    std::normal_distribution<double> wiggle(0.0, 0.006);
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            mu + amp * std::sin(kTwoPi * i / period + phase) + wiggle(rng);
    return g;
}

// Rate-series noise derived from an i.i.d. level error: each annual
// perturbation e_t - e_{t-1} is N(0, sigma^2) marginally, and the running sum
// of the perturbations stays bounded instead of drifting.
inline void add_level_noise(std::mt19937& rng, std::vector<double>& v, double sigma) {
    if (sigma <= 0.0) return; // noise-free draws leave the series untouched
    std::normal_distribution<double> level(0.0, sigma / std::sqrt(2.0));
    double prev = level(rng);
    for (double& x : v) {
        const double e = level(rng);
        x += e - prev;
        prev = e;
    }
}

inline lfm::AnnualSeries lf_from_growth(int year0, const std::vector<double>& g,
                                        double level = 1.0e5) {
    std::vector<double> v{level};
    for (double gi : g) v.push_back(v.back() * (1.0 + gi));
    return lfm::AnnualSeries(year0, std::move(v), lfm::Unit::Count, "labor force");
}

struct Draw {
    lfm::AnnualSeries lf;     // labor-force level series
    lfm::AnnualSeries target; // noisy model-generated annual rate series
    lfm::ModelSegment truth;
};

// One benchmark instance: n_years noisy target observations regardless of the
// truth lag (the labor-force series is extended backward to cover it).
inline Draw draw(std::uint32_t seed, int n_years, double sigma, lfm::ModelSegment truth) {
    std::mt19937 rng(seed);
    const auto g = demographic_growth(rng, n_years + truth.lf_lag);
    auto lf = lf_from_growth(1950, g);
    auto clean = lfm::eval_simple(truth, lf);
    std::vector<double> v = clean.values();
    add_level_noise(rng, v, sigma);
    return Draw{std::move(lf),
                lfm::AnnualSeries(clean.start_year(), std::move(v), clean.unit(), "target"),
                truth};
}

// Random single-segment truth: slope magnitude 0.5..4 with random sign,
// intercept within +/-5 percentage points, lag 0..5.
inline lfm::ModelSegment random_truth(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.5, 4.0);
    std::bernoulli_distribution flip(0.5);
    std::uniform_real_distribution<double> icpt(-0.05, 0.05);
    std::uniform_int_distribution<int> lag(0, 5);
    lfm::ModelSegment s;
    s.lf_coeff = flip(rng) ? -mag(rng) : mag(rng);
    s.intercept = icpt(rng);
    s.lf_lag = lag(rng);
    return s;
}

inline Draw draw_random(std::uint32_t seed, int n_years, double sigma) {
    std::mt19937 seeder(seed ^ 0x9e3779b9u);
    const lfm::ModelSegment truth = random_truth(seeder);
    return draw(seed, n_years, sigma, truth);
}

} // namespace bench
