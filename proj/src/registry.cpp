#include "lfm/registry.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/text.hpp"

namespace lfm {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Registry build_builtin() {
    using T = Target;
    using M = Measure;
    Registry r;

    // ---- canonical entries, one per country ------------------------------
    r.add({
        .country = "Austria",
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 1.2, .intercept = 0.066, .lf_lag = 0,
                               .ue_coeff = -1.0, .ue_lag = 0,
                               .valid_from = 1965, .valid_to = 1986},
                              {.lf_coeff = 0.9, .intercept = 0.0074, .lf_lag = 0,
                               .ue_coeff = -1.0, .ue_lag = 0,
                               .valid_from = 1987}}},
            },
        .source_note = "GDP deflator; labor force and unemployment from national accounts",
        .reference = {},
    });

    r.add({
        .country = "Canada",
        .models =
            {
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = -2.1, .intercept = 0.12, .lf_lag = 0}}},
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = 2.58, .intercept = -0.043, .lf_lag = 2}}},
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = 3.8, .intercept = -0.098, .lf_lag = 2,
                               .ue_coeff = 0.79, .ue_lag = 2}}},
            },
        .source_note = "CPI inflation; unemployment on the national definition",
        .reference = {},
    });

    r.add({
        .country = "France",
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 4.0, .intercept = 0.095, .lf_lag = 4,
                               .ue_coeff = -1.0, .ue_lag = 4}}},
            },
        .source_note = "inflation measure not restated with the equation; GDP deflator assumed",
        .reference = {},
    });

    r.add({
        .country = "Germany",
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = -1.71, .intercept = 0.041, .lf_lag = 6}}},
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = 2.5, .intercept = 0.04, .lf_lag = 5}}},
                // Unemployment led by next year's inflation: ue(t) = -1.5*pi(t+1) + 0.116.
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = 0.0, .intercept = 0.116, .lf_lag = 0,
                               .ue_coeff = -1.50, .ue_lag = -1,
                               .valid_from = 1971}}},
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = -0.3, .intercept = 0.072, .lf_lag = 6,
                               .ue_coeff = 0.59, .ue_lag = 1}}},
            },
        .source_note = "CPI inflation; registered unemployment, West Germany before 1991",
        .reference = {{.metric = "r_squared", .value = 0.86,
                       .detail = "unemployment from next-year inflation, 1971-2006"}},
    });

    r.add({
        .country = "Italy",
        .models =
            {
                {.target = T::Unemployment,
                 .measure = M::UESurvey,
                 .segments = {{.lf_coeff = 3.0, .intercept = 0.085, .lf_lag = 11,
                               .valid_from = 1969}},
                 .smoothing = Smoothing{.window = 5, .applied_to = SmoothTarget::Predictor}},
            },
        .source_note = "survey (US-definition) unemployment and labor force; "
                       "labor-force growth smoothed before lagging",
        .reference = {{.metric = "r_squared", .value = 0.92,
                       .detail = "unemployment vs 11-year-lagged smoothed growth, 1973-2006"},
                      {.metric = "rmsfe", .value = 0.0055,
                       .detail = "out-of-sample, 11-year horizon, 1973-2006"}},
    });

    r.add({
        .country = "Japan",
        .models =
            {
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = -1.5, .intercept = 0.045, .lf_lag = 0}}},
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 1.77, .intercept = -0.0035, .lf_lag = 0}}},
            },
        .source_note = "GDP deflator; national labor-force survey",
        .reference = {},
    });

    r.add({
        .country = "Netherlands",
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 3.5, .intercept = -0.03, .lf_lag = 3}}},
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 3.5, .intercept = 0.006, .lf_lag = 3,
                               .ue_coeff = -0.48, .ue_lag = 3}}},
            },
        .source_note = "GDP deflator; national-definition unemployment",
        .reference = {{.metric = "r_squared", .value = 0.77,
                       .detail = "two-variable inflation model, 1980-2006"}},
    });

    r.add({
        .country = "Sweden",
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 0.0, .intercept = 0.11, .lf_lag = 0,
                               .ue_coeff = 1.15, .ue_lag = 0}}},
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = -6.0, .intercept = 0.069, .lf_lag = 2}}},
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 5.0, .intercept = 0.044, .lf_lag = 2}}},
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 5.0, .intercept = 0.006, .lf_lag = 2,
                               .ue_coeff = -0.5, .ue_lag = 0}}},
            },
        .source_note = "GDP deflator; open unemployment, national definition",
        .reference = {},
    });

    r.add({
        .country = "Switzerland",
        .models =
            {
                {.target = T::Unemployment,
                 .measure = M::UENational,
                 .segments = {{.lf_coeff = 0.0, .intercept = 0.04, .lf_lag = 0,
                               .ue_coeff = -1.0, .ue_lag = 0}}},
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = 2.0, .intercept = 0.005, .lf_lag = 2,
                               .valid_to = 1986},
                              {.lf_coeff = 1.1, .intercept = 0.055, .lf_lag = 2,
                               .valid_from = 1987}}},
            },
        .source_note = "CPI inflation; registered unemployment",
        .reference = {{.metric = "slope", .value = 0.74,
                       .detail = "measured vs predicted inflation scatter"},
                      {.metric = "intercept", .value = 0.003,
                       .detail = "measured vs predicted inflation scatter"},
                      {.metric = "r_squared", .value = 0.82,
                       .detail = "measured vs predicted inflation scatter"}},
    });

    r.add({
        .country = "United States",
        .models =
            {
                {.target = T::Unemployment,
                 .measure = M::UESurvey,
                 .segments = {{.lf_coeff = 2.1, .intercept = -0.023, .lf_lag = 5}}},
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2}}},
            },
        .source_note = "GDP deflator; civilian labor force and unemployment",
        .reference = {{.metric = "rmsfe", .value = 0.008,
                       .detail = "CPI inflation at a two-year horizon, 1965-2002"}},
    });

    // ---- alternates: variants on other data definitions ------------------
    r.add({
        .country = "Austria",
        .alternate = true,
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 2.0, .intercept = 0.033, .lf_lag = 0,
                               .valid_to = 1986},
                              {.lf_coeff = 1.25, .intercept = 0.0075, .lf_lag = 0,
                               .valid_from = 1987}}},
            },
        .source_note = "one-variable variant; cumulative fit of GDP-deflator inflation, "
                       "1960-2003",
        .reference = {{.metric = "r_squared", .value = 0.82,
                       .detail = "cumulative inflation, 1960-2003"},
                      {.metric = "rms", .value = 0.009,
                       .detail = "annual inflation residual, 1960-2003"}},
    });

    r.add({
        .country = "Austria",
        .alternate = true,
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 1.1, .intercept = 0.068, .lf_lag = 0,
                               .ue_coeff = -1.0, .ue_lag = 0,
                               .valid_to = 1986},
                              {.lf_coeff = 0.8, .intercept = 0.077, .lf_lag = 0,
                               .ue_coeff = -1.0, .ue_lag = 0,
                               .valid_from = 1987}}},
            },
        .source_note = "two-variable variant on employment-office labor data",
        .reference = {},
    });

    r.add({
        .country = "Canada",
        .alternate = true,
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = 2.58, .intercept = -0.0043, .lf_lag = 2}}},
            },
        .source_note = "alternate intercept for the CPI model",
        .reference = {},
    });

    r.add({
        .country = "Japan",
        .alternate = true,
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::GdpDeflator,
                 .segments = {{.lf_coeff = 1.31, .intercept = 0.0007, .lf_lag = 0}}},
            },
        .source_note = "alternate GDP-deflator coefficients",
        .reference = {},
    });

    r.add({
        .country = "United States",
        .alternate = true,
        .models =
            {
                {.target = T::Inflation,
                 .measure = M::CPI,
                 .segments = {{.lf_coeff = 4.5, .intercept = -0.031, .lf_lag = 2}}},
            },
        .source_note = "CPI variant, fit over 1965-2006",
        .reference = {},
    });

    return r;
}

} // namespace

const Registry& Registry::builtin() {
    static const Registry r = build_builtin();
    return r;
}

void Registry::add(CountryModels entry) {
    if (entry.country.empty()) throw DataError("registry entry has no country name");
    if (entry.models.empty())
        throw DataError("registry entry for " + entry.country + " has no models");
    for (const auto& m : entry.models) m.validate();
    if (!entry.alternate) {
        for (const auto& e : entries_)
            if (!e.alternate && lower(e.country) == lower(entry.country))
                throw DataError("duplicate canonical registry entry for " + entry.country);
    }
    entries_.push_back(std::move(entry));
}

const CountryModels& Registry::lookup(std::string_view country) const {
    const std::string key = lower(country);
    for (const auto& e : entries_)
        if (!e.alternate && lower(e.country) == key) return e;
    std::string msg = "unknown country '" + std::string(country) + "'; available:";
    for (const auto& name : countries()) msg += " " + name;
    throw DataError(msg);
}

std::vector<const CountryModels*> Registry::alternates_for(std::string_view country) const {
    const std::string key = lower(country);
    std::vector<const CountryModels*> out;
    for (const auto& e : entries_)
        if (e.alternate && lower(e.country) == key) out.push_back(&e);
    return out;
}

std::vector<std::string> Registry::countries() const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
        if (!e.alternate) out.push_back(e.country);
    return out;
}

// Table layout: one '|'-separated row per segment.  Model-level fields repeat
// on every row of the model; entry-level note repeats on every row of the
// entry.  Optional fields serialize as empty columns.
namespace {
const char* kTableHeader =
    "# country|kind|model|target|measure|segment|lf_coeff|intercept|lf_lag|"
    "ue_coeff|ue_lag|valid_from|valid_to|smooth_window|smooth_at|note";
} // namespace

std::string Registry::export_table() const {
    std::ostringstream out;
    out << kTableHeader << "\n";
    for (const auto& e : entries_) {
        if (e.source_note.find('|') != std::string::npos)
            throw DataError("registry note may not contain '|'");
        for (std::size_t mi = 0; mi < e.models.size(); ++mi) {
            const auto& m = e.models[mi];
            for (std::size_t si = 0; si < m.segments.size(); ++si) {
                const auto& s = m.segments[si];
                out << e.country << '|' << (e.alternate ? "alternate" : "canonical") << '|'
                    << mi << '|' << to_string(m.target) << '|' << to_string(m.measure) << '|'
                    << si << '|' << fmt_double(s.lf_coeff) << '|' << fmt_double(s.intercept)
                    << '|' << s.lf_lag << '|'
                    << (s.ue_coeff ? fmt_double(*s.ue_coeff) : std::string()) << '|'
                    << (s.ue_lag ? std::to_string(*s.ue_lag) : std::string()) << '|'
                    << (s.valid_from ? std::to_string(*s.valid_from) : std::string()) << '|'
                    << (s.valid_to ? std::to_string(*s.valid_to) : std::string()) << '|';
                if (m.smoothing) {
                    out << m.smoothing->window << '|'
                        << (m.smoothing->applied_to == SmoothTarget::Predictor ? "predictor"
                                                                               : "prediction");
                } else {
                    out << '|';
                }
                out << '|' << e.source_note << "\n";
            }
        }
    }
    return out.str();
}

Registry Registry::import_table(const std::string& text) {
    Registry r;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    CountryModels* cur_entry = nullptr;
    std::string cur_key;
    int cur_model = -1;
    std::vector<CountryModels> staged;

    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto f = split(std::string(t), '|');
        const std::string where = "registry table line " + std::to_string(lineno);
        if (f.size() != 16)
            throw DataError(where + ": expected 16 columns, got " + std::to_string(f.size()));

        const std::string& country = f[0];
        bool alternate;
        if (f[1] == "canonical") alternate = false;
        else if (f[1] == "alternate") alternate = true;
        else throw DataError(where + ": kind must be canonical or alternate, got '" + f[1] + "'");
        int model_idx = parse_int(f[2], where + " model");
        int segment_idx = parse_int(f[5], where + " segment");

        // A fresh entry starts when the (country, kind) pair changes, and
        // also when model 0 / segment 0 reappears under the same pair: a
        // country may carry several alternate entries back to back.
        const std::string key = country + "\x1f" + f[1];
        const bool entry_boundary =
            !cur_entry || key != cur_key ||
            (model_idx == 0 && segment_idx == 0 && cur_model >= 0);
        if (entry_boundary) {
            staged.push_back(CountryModels{.country = country, .alternate = alternate,
                                           .models = {}, .source_note = f[15], .reference = {}});
            cur_entry = &staged.back();
            cur_key = key;
            cur_model = -1;
        }
        if (model_idx != cur_model) {
            if (model_idx != cur_model + 1)
                throw DataError(where + ": model index " + std::to_string(model_idx) +
                                " out of order");
            PiecewiseModel m;
            m.target = target_from_string(f[3]);
            m.measure = measure_from_string(f[4]);
            if (!f[13].empty()) {
                Smoothing sm;
                sm.window = parse_int(f[13], where + " smooth_window");
                if (f[14] == "predictor") sm.applied_to = SmoothTarget::Predictor;
                else if (f[14] == "prediction") sm.applied_to = SmoothTarget::Prediction;
                else throw DataError(where + ": smooth_at must be predictor or prediction");
                m.smoothing = sm;
            }
            cur_entry->models.push_back(std::move(m));
            cur_model = model_idx;
        }
        if (segment_idx != static_cast<int>(cur_entry->models.back().segments.size()))
            throw DataError(where + ": segment index " + std::to_string(segment_idx) +
                            " out of order");
        ModelSegment s;
        s.lf_coeff = parse_double(f[6], where + " lf_coeff");
        s.intercept = parse_double(f[7], where + " intercept");
        s.lf_lag = parse_int(f[8], where + " lf_lag");
        if (!f[9].empty()) s.ue_coeff = parse_double(f[9], where + " ue_coeff");
        if (!f[10].empty()) s.ue_lag = parse_int(f[10], where + " ue_lag");
        if (!f[11].empty()) s.valid_from = parse_int(f[11], where + " valid_from");
        if (!f[12].empty()) s.valid_to = parse_int(f[12], where + " valid_to");
        cur_entry->models.back().segments.push_back(s);
    }
    for (auto& e : staged) r.add(std::move(e));
    return r;
}

} // namespace lfm
