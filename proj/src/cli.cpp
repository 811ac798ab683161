#include "lfm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lfm/csv.hpp"
#include "lfm/errors.hpp"
#include "lfm/fit.hpp"
#include "lfm/manifest.hpp"
#include "lfm/model.hpp"
#include "lfm/registry.hpp"
#include "lfm/replicate.hpp"
#include "lfm/residual.hpp"
#include "lfm/svg_plot.hpp"
#include "lfm/text.hpp"

namespace lfm {
namespace {

/// Command-line misuse distinct from bad data: maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DataError("cannot write '" + p.string() + "'");
    f << content;
    f.flush();
    if (!f) throw DataError("write failed for '" + p.string() + "'");
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
    return p;
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

std::pair<int, int> parse_lag_range(const std::string& s) {
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const int k = parse_int(s, "lag");
            return {k, k};
        }
        return {parse_int(s.substr(0, dots), "lag range start"),
                parse_int(s.substr(dots + 2), "lag range end")};
    } catch (const DataError&) {
        throw UsageError("bad --lag-range '" + s + "' (expected MIN..MAX or a single lag)");
    }
}

FitObjective objective_from(const std::string& s) {
    if (s == "cumulative") return FitObjective::CumulativeRms;
    if (s == "dynamic") return FitObjective::DynamicRms;
    throw UsageError("bad --objective '" + s + "' (expected 'cumulative' or 'dynamic')");
}

/// The model list a subcommand evaluates: either a registry country's models
/// or the first entry of a model table file.
struct ModelSource {
    std::vector<PiecewiseModel> models;
    std::string origin;
};

ModelSource resolve_models(const std::string& country, const std::string& model_file) {
    if (country.empty() == model_file.empty())
        throw UsageError("give exactly one of --country or --model");
    if (!country.empty()) {
        const CountryModels& entry = Registry::builtin().lookup(country);
        return {entry.models, entry.country};
    }
    const Registry imported = Registry::import_table(read_file(model_file));
    if (imported.entries().empty())
        throw DataError("model file '" + model_file + "' holds no model entries");
    return {imported.entries().front().models, model_file};
}

bool needs_labor_force(const PiecewiseModel& m) {
    return std::any_of(m.segments.begin(), m.segments.end(),
                       [](const ModelSegment& s) { return s.lf_coeff != 0.0; });
}

SeriesRole partner_role(Target t) {
    return t == Target::Inflation ? SeriesRole::Unemployment : SeriesRole::Inflation;
}

/// The role `m` needs but the caller did not supply, if any.
std::optional<SeriesRole> missing_role(const PiecewiseModel& m, bool have_lf, bool have_ue,
                                       bool have_pi) {
    if (needs_labor_force(m) && !have_lf) return SeriesRole::LaborForce;
    if (m.is_generalized()) {
        const SeriesRole r = partner_role(m.target);
        if (r == SeriesRole::Unemployment && !have_ue) return r;
        if (r == SeriesRole::Inflation && !have_pi) return r;
    }
    return std::nullopt;
}

int choose_model(const std::vector<PiecewiseModel>& models, int requested, bool have_lf,
                 bool have_ue, bool have_pi, const std::string& origin) {
    const int n = static_cast<int>(models.size());
    if (requested >= 0) {
        if (requested >= n)
            throw DataError("model index " + std::to_string(requested) + " out of range (" +
                            origin + " has " + std::to_string(n) + " models)");
        if (auto miss = missing_role(models[static_cast<std::size_t>(requested)], have_lf,
                                     have_ue, have_pi))
            throw DataError(to_string(*miss) + " series required");
        return requested;
    }
    for (int i = 0; i < n; ++i)
        if (!missing_role(models[static_cast<std::size_t>(i)], have_lf, have_ue, have_pi))
            return i;
    const auto miss = missing_role(models.front(), have_lf, have_ue, have_pi);
    throw DataError("none of the " + std::to_string(n) + " models of " + origin +
                    " can be evaluated from the supplied series (" + to_string(*miss) +
                    " series required)");
}

// ---------------------------------------------------------------------------
// Per-subcommand argument bundles, bound to CLI11 options in run_cli.

struct CommonIo {
    std::string out_dir;
    bool svg = false;
};

void require_out_dir_for_svg(const CommonIo& io) {
    if (io.svg && io.out_dir.empty()) throw UsageError("--svg requires --out-dir");
}

struct FitArgs {
    std::string lf, inflation, ue;
    std::string lag_range;
    std::string objective = "cumulative";
    std::string measure;
    std::vector<int> breaks;
    int smooth = 1;
    double pin_ue = 0.0;
    bool pin_set = false;
    bool allow_short = false;
    CommonIo io;
};

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
    require_out_dir_for_svg(a.io);
    if (a.inflation.empty() && a.ue.empty())
        throw UsageError("fit needs a target series: --inflation and/or --ue");

    FitConfig cfg;
    if (!a.lag_range.empty()) std::tie(cfg.lag_min, cfg.lag_max) = parse_lag_range(a.lag_range);
    cfg.break_candidates = a.breaks;
    cfg.predictor_smooth_window = a.smooth;
    cfg.objective = objective_from(a.objective);
    cfg.allow_short = a.allow_short;
    if (a.pin_set) cfg.pin_ue_coeff = a.pin_ue;

    std::vector<std::string> warnings;
    const AnnualSeries lf =
        load_series(SeriesFile{a.lf, SeriesRole::LaborForce, SourceMeasure::OECD}, &warnings);
    std::optional<AnnualSeries> target, partner;
    Target tgt = Target::Inflation;
    Measure meas = Measure::GdpDeflator;
    if (!a.inflation.empty()) {
        target = load_series(SeriesFile{a.inflation, SeriesRole::Inflation, SourceMeasure::DGDP},
                             &warnings);
        if (!a.ue.empty())
            partner = load_series(
                SeriesFile{a.ue, SeriesRole::Unemployment, SourceMeasure::OECD}, &warnings);
    } else {
        target = load_series(SeriesFile{a.ue, SeriesRole::Unemployment, SourceMeasure::OECD},
                             &warnings);
        tgt = Target::Unemployment;
        meas = Measure::UENational;
    }
    print_warnings(err, warnings);

    FitReport rep = partner ? fit_generalized(*target, lf, *partner, cfg)
                            : fit_cumulative(*target, lf, cfg);
    rep.fitted.target = tgt;
    rep.fitted.measure = a.measure.empty() ? meas : measure_from_string(a.measure);
    out << fit_report_text(rep);

    if (!a.io.out_dir.empty()) {
        const auto dir = ensure_out_dir(a.io.out_dir);
        write_file(dir / "fit_report.csv", fit_report_csv(rep));
        Registry table;
        table.add(CountryModels{.country = "fitted",
                                .alternate = false,
                                .models = {rep.fitted},
                                .source_note = "fit output",
                                .reference = {}});
        write_file(dir / "model.table", table.export_table());
        if (a.io.svg) {
            const AnnualSeries pred =
                eval_piecewise(rep.fitted, &lf, partner ? &*partner : nullptr);
            emit_plot({target->with_label("measured"), pred.with_label("fitted")},
                      (dir / "fit.svg").string(), PlotOptions{.title = "model fit"});
        }
        out << "artifacts written to " << dir.string() << '\n';
    }
    return 0;
}

struct PredictArgs {
    std::string country, model_file;
    int model_index = -1;
    std::string lf, ue, inflation;
    CommonIo io;
};

int cmd_predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
    require_out_dir_for_svg(a.io);
    const ModelSource src = resolve_models(a.country, a.model_file);

    std::vector<std::string> warnings;
    std::optional<AnnualSeries> lf, ue, pi;
    if (!a.lf.empty())
        lf = load_series(SeriesFile{a.lf, SeriesRole::LaborForce, SourceMeasure::OECD},
                         &warnings);
    if (!a.ue.empty())
        ue = load_series(SeriesFile{a.ue, SeriesRole::Unemployment, SourceMeasure::OECD},
                         &warnings);
    if (!a.inflation.empty())
        pi = load_series(SeriesFile{a.inflation, SeriesRole::Inflation, SourceMeasure::OECD},
                         &warnings);
    print_warnings(err, warnings);

    const int idx = choose_model(src.models, a.model_index, lf.has_value(), ue.has_value(),
                                 pi.has_value(), src.origin);
    const PiecewiseModel& m = src.models[static_cast<std::size_t>(idx)];
    const std::optional<AnnualSeries>& partner =
        partner_role(m.target) == SeriesRole::Unemployment ? ue : pi;
    AnnualSeries pred = eval_piecewise(m, lf ? &*lf : nullptr, partner ? &*partner : nullptr);
    pred = pred.with_label("predicted " + to_string(m.target));

    if (a.io.out_dir.empty()) {
        out << series_to_csv(pred);
        return 0;
    }
    const auto dir = ensure_out_dir(a.io.out_dir);
    write_file(dir / "prediction.csv", series_to_csv(pred));
    if (a.io.svg) {
        std::vector<AnnualSeries> series{pred};
        const std::optional<AnnualSeries>& measured =
            m.target == Target::Inflation ? pi : ue;
        if (measured) series.push_back(measured->with_label("measured"));
        emit_plot(series, (dir / "prediction.svg").string(), PlotOptions{.title = "prediction"});
    }
    out << "Prediction: " << src.origin << ", model " << idx << '\n';
    out << "  " << format_equation(m) << '\n';
    out << "  " << pred.size() << " years " << pred.start_year() << ".." << pred.end_year()
        << '\n';
    out << "artifacts written to " << dir.string() << '\n';
    return 0;
}

struct DiagnoseArgs {
    std::string measured, predicted;
    int max_lag = 4;
    int mc_trials = 0;
    unsigned seed = 12345;
    CommonIo io;
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out, std::ostream& err) {
    require_out_dir_for_svg(a.io);
    if (a.mc_trials > 0) {
        // Self-check: a model that is right on average differs from the data
        // by level noise; its residual report should come back stationary.
        const int n = 50;
        const double sigma = 0.005;
        int counts[4] = {0, 0, 0, 0};
        for (int t = 0; t < a.mc_trials; ++t) {
            std::mt19937 rng(a.seed + static_cast<unsigned>(t));
            std::normal_distribution<double> rate(0.02, 0.01);
            std::normal_distribution<double> noise(0.0, sigma);
            std::vector<double> x(n), y(n);
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rate(rng);
            double prev = 0.0;
            for (int i = 0; i < n; ++i) {
                const double e = noise(rng);
                y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + e - prev;
                prev = e;
            }
            const AnnualSeries ms(1960, x, Unit::RatePerYear, "measured");
            const AnnualSeries ps(1960, y, Unit::RatePerYear, "predicted");
            const ResidualReport rep = residual_report(ms, ps, a.max_lag);
            ++counts[static_cast<int>(rep.verdict)];
        }
        out << "Monte-Carlo residual diagnostic: " << a.mc_trials << " trials, seed " << a.seed
            << '\n';
        out << "  verdict I0: " << counts[0] << "  I1: " << counts[1] << "  I2: " << counts[2]
            << "  inconclusive: " << counts[3] << '\n';
        return 0;
    }
    if (a.measured.empty() || a.predicted.empty())
        throw UsageError("diagnose needs --measured and --predicted (or --mc-trials)");

    std::vector<std::string> warnings;
    const AnnualSeries measured =
        load_series_csv(a.measured, Unit::RatePerYear, "measured", &warnings);
    const AnnualSeries predicted =
        load_series_csv(a.predicted, Unit::RatePerYear, "predicted", &warnings);
    print_warnings(err, warnings);

    const ResidualReport rep = residual_report(measured, predicted, a.max_lag);
    out << residual_report_text(rep);
    if (!a.io.out_dir.empty()) {
        const auto dir = ensure_out_dir(a.io.out_dir);
        write_file(dir / "residual_dynamic.csv", series_to_csv(rep.dynamic_diff));
        write_file(dir / "residual_cumulative.csv", series_to_csv(rep.cumulative_diff));
        write_file(dir / "residual_relative.csv", series_to_csv(rep.relative_diff));
        if (a.io.svg)
            emit_plot({rep.dynamic_diff.with_label("annual difference"),
                       rep.cumulative_diff.with_label("cumulative difference")},
                      (dir / "diagnosis.svg").string(),
                      PlotOptions{.title = "prediction error"});
        out << "artifacts written to " << dir.string() << '\n';
    }
    return 0;
}

struct ReplicateArgs {
    std::string country, manifest;
    int model_index = -1;
    int max_lag = 4;
    double start_fraction = 0.5;
    CommonIo io;
};

int cmd_replicate(const ReplicateArgs& a, std::ostream& out, std::ostream&) {
    require_out_dir_for_svg(a.io);
    const CountryManifest manifest = load_manifest(a.manifest);
    const std::string country = a.country.empty() ? manifest.country : a.country;

    ReplicateOptions opt;
    if (a.model_index >= 0) opt.model_index = a.model_index;
    opt.unit_root_max_lag = a.max_lag;
    opt.rmsfe_start_fraction = a.start_fraction;

    const ReplicationResult res = replicate(country, manifest, opt);
    out << res.text;
    if (!a.io.out_dir.empty()) {
        const auto dir = ensure_out_dir(a.io.out_dir);
        write_file(dir / "measured.csv", series_to_csv(res.measured));
        write_file(dir / "predicted.csv", series_to_csv(res.predicted));
        write_file(dir / "fit_report.csv", fit_report_csv(res.fit));
        if (a.io.svg)
            emit_plot({res.measured.with_label("measured"),
                       res.predicted.with_label("predicted")},
                      (dir / "replication.svg").string(),
                      PlotOptions{.title = "replication: " + country});
        out << "artifacts written to " << dir.string() << '\n';
    }
    return 0;
}

struct ProjectArgs {
    std::string country, model_file, lf;
    std::string name = "projection";
    int model_index = -1;
    CommonIo io;
};

int cmd_project(const ProjectArgs& a, std::ostream& out, std::ostream& err) {
    require_out_dir_for_svg(a.io);
    const ModelSource src = resolve_models(a.country, a.model_file);

    std::vector<std::string> warnings;
    const AnnualSeries lf = load_series(
        SeriesFile{a.lf, SeriesRole::LaborForce, SourceMeasure::OECD}, &warnings);
    print_warnings(err, warnings);

    int idx = a.model_index;
    if (idx < 0) {
        const auto it = std::find_if(src.models.begin(), src.models.end(),
                                     [](const PiecewiseModel& m) { return !m.is_generalized(); });
        if (it == src.models.end())
            throw DataError("project: " + src.origin +
                            " has only generalized models; a labor-force scenario needs a "
                            "one-variable model");
        idx = static_cast<int>(it - src.models.begin());
    } else if (idx >= static_cast<int>(src.models.size())) {
        throw DataError("model index " + std::to_string(idx) + " out of range (" + src.origin +
                        " has " + std::to_string(src.models.size()) + " models)");
    }

    const ProjectionScenario scenario{a.name, lf, src.models[static_cast<std::size_t>(idx)]};
    const AnnualSeries projected = project(scenario);

    if (a.io.out_dir.empty()) {
        out << series_to_csv(projected);
        return 0;
    }
    const auto dir = ensure_out_dir(a.io.out_dir);
    write_file(dir / "projection.csv", series_to_csv(projected));
    if (a.io.svg)
        emit_plot({projected}, (dir / "projection.svg").string(),
                  PlotOptions{.title = a.name});
    out << "Projection '" << a.name << "': " << src.origin << ", model " << idx << '\n';
    out << "  " << format_equation(scenario.model) << '\n';
    out << "  " << projected.size() << " years " << projected.start_year() << ".."
        << projected.end_year() << '\n';
    out << "artifacts written to " << dir.string() << '\n';
    return 0;
}

struct RegistryArgs {
    std::string country, export_path;
};

void print_entry(std::ostream& out, const CountryModels& entry) {
    out << entry.country << (entry.alternate ? " (alternate)" : "") << '\n';
    for (const PiecewiseModel& m : entry.models) out << "  " << format_equation(m) << '\n';
    if (!entry.source_note.empty()) out << "  note: " << entry.source_note << '\n';
    for (const ReferenceStat& r : entry.reference) {
        out << "  published " << r.metric << " = " << fmt_double(r.value);
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
    }
}

int cmd_registry(const RegistryArgs& a, std::ostream& out, std::ostream&) {
    const Registry& reg = Registry::builtin();
    if (!a.export_path.empty()) {
        const std::string table = reg.export_table();
        if (a.export_path == "-") {
            out << table;
        } else {
            write_file(a.export_path, table);
            out << "wrote " << a.export_path << '\n';
        }
        return 0;
    }
    if (!a.country.empty()) {
        print_entry(out, reg.lookup(a.country));
        for (const CountryModels* alt : reg.alternates_for(a.country)) print_entry(out, *alt);
        return 0;
    }
    const auto& entries = reg.entries();
    const auto canonical = std::count_if(entries.begin(), entries.end(),
                                         [](const CountryModels& e) { return !e.alternate; });
    out << "Registry: " << canonical << " countries\n";
    for (const CountryModels& e : entries) print_entry(out, e);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Labor-force-driven models of inflation and unemployment"};
    app.name("lfm");
    app.require_subcommand(1);

    FitArgs fit_a;
    CLI::App* fit_cmd = app.add_subcommand(
        "fit", "Calibrate a model on labor-force and target series");
    fit_cmd->add_option("--lf", fit_a.lf, "labor force CSV (counts)")->required();
    fit_cmd->add_option("--inflation", fit_a.inflation, "inflation CSV (target)");
    fit_cmd->add_option("--ue", fit_a.ue,
                        "unemployment CSV (target, or second regressor with --inflation)");
    fit_cmd->add_option("--lag-range", fit_a.lag_range, "lag search range MIN..MAX or fixed lag");
    fit_cmd->add_option("--break", fit_a.breaks, "candidate structural-break year (repeatable)");
    fit_cmd->add_option("--smooth", fit_a.smooth, "odd moving-average window on growth");
    fit_cmd->add_option("--objective", fit_a.objective, "'cumulative' (default) or 'dynamic'");
    fit_cmd->add_option("--measure", fit_a.measure,
                        "measure label for the fitted model (CPI, DGDP, UE-national, UE-survey)");
    CLI::Option* pin_opt =
        fit_cmd->add_option("--pin-ue", fit_a.pin_ue, "hold the partner coefficient fixed");
    fit_cmd->add_flag("--allow-short", fit_a.allow_short, "waive the minimum-sample requirement");
    fit_cmd->add_option("--out-dir", fit_a.io.out_dir, "artifact directory");
    fit_cmd->add_flag("--svg", fit_a.io.svg, "also write an SVG chart (needs --out-dir)");

    PredictArgs pred_a;
    CLI::App* pred_cmd = app.add_subcommand(
        "predict", "Evaluate a registry or file-defined model on data");
    pred_cmd->add_option("--country", pred_a.country, "registry country");
    pred_cmd->add_option("--model", pred_a.model_file, "model table file (fit/registry export)");
    pred_cmd->add_option("--model-index", pred_a.model_index, "model within the entry");
    pred_cmd->add_option("--lf", pred_a.lf, "labor force CSV");
    pred_cmd->add_option("--ue", pred_a.ue, "unemployment CSV");
    pred_cmd->add_option("--inflation", pred_a.inflation, "inflation CSV");
    pred_cmd->add_option("--out-dir", pred_a.io.out_dir,
                         "artifact directory (without it the CSV goes to stdout)");
    pred_cmd->add_flag("--svg", pred_a.io.svg, "also write an SVG chart (needs --out-dir)");

    DiagnoseArgs diag_a;
    CLI::App* diag_cmd = app.add_subcommand(
        "diagnose", "Stationarity report on prediction errors");
    diag_cmd->add_option("--measured", diag_a.measured, "measured rate CSV");
    diag_cmd->add_option("--predicted", diag_a.predicted, "predicted rate CSV");
    diag_cmd->add_option("--max-lag", diag_a.max_lag, "unit-root test lag order");
    diag_cmd->add_option("--mc-trials", diag_a.mc_trials,
                         "run a Monte-Carlo self-check with this many trials");
    diag_cmd->add_option("--seed", diag_a.seed, "Monte-Carlo base seed");
    diag_cmd->add_option("--out-dir", diag_a.io.out_dir, "artifact directory");
    diag_cmd->add_flag("--svg", diag_a.io.svg, "also write an SVG chart (needs --out-dir)");

    ReplicateArgs repl_a;
    CLI::App* repl_cmd = app.add_subcommand(
        "replicate", "Evaluate a country's registry model against supplied data");
    repl_cmd->add_option("country", repl_a.country,
                         "registry country (default: the manifest's country)");
    repl_cmd->add_option("--manifest", repl_a.manifest, "country data manifest")->required();
    repl_cmd->add_option("--model-index", repl_a.model_index, "model within the entry");
    repl_cmd->add_option("--max-lag", repl_a.max_lag, "unit-root test lag order");
    repl_cmd->add_option("--start-fraction", repl_a.start_fraction,
                         "first training share for the forecast-error backtest");
    repl_cmd->add_option("--out-dir", repl_a.io.out_dir, "artifact directory");
    repl_cmd->add_flag("--svg", repl_a.io.svg, "also write an SVG chart (needs --out-dir)");

    ProjectArgs proj_a;
    CLI::App* proj_cmd = app.add_subcommand(
        "project", "Drive a model with a labor-force projection");
    proj_cmd->add_option("--country", proj_a.country, "registry country");
    proj_cmd->add_option("--model", proj_a.model_file, "model table file");
    proj_cmd->add_option("--model-index", proj_a.model_index, "model within the entry");
    proj_cmd->add_option("--lf", proj_a.lf, "projected labor force CSV (counts)")->required();
    proj_cmd->add_option("--name", proj_a.name, "scenario name (labels the output)");
    proj_cmd->add_option("--out-dir", proj_a.io.out_dir,
                         "artifact directory (without it the CSV goes to stdout)");
    proj_cmd->add_flag("--svg", proj_a.io.svg, "also write an SVG chart (needs --out-dir)");

    RegistryArgs reg_a;
    CLI::App* reg_cmd = app.add_subcommand(
        "registry", "List or export the built-in country models");
    reg_cmd->add_option("--country", reg_a.country, "show one country only");
    reg_cmd->add_option("--export", reg_a.export_path,
                        "write the machine-readable table here ('-' for stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        fit_a.pin_set = pin_opt->count() > 0;
        if (fit_cmd->parsed()) return cmd_fit(fit_a, out, err);
        if (pred_cmd->parsed()) return cmd_predict(pred_a, out, err);
        if (diag_cmd->parsed()) return cmd_diagnose(diag_a, out, err);
        if (repl_cmd->parsed()) return cmd_replicate(repl_a, out, err);
        if (proj_cmd->parsed()) return cmd_project(proj_a, out, err);
        if (reg_cmd->parsed()) return cmd_registry(reg_a, out, err);
        throw UsageError("no subcommand given");
    } catch (const CLI::CallForHelp&) {
        const CLI::App* shown = &app;
        for (const CLI::App* sub : app.get_subcommands()) shown = sub;
        out << shown->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error[usage]: " << e.what() << '\n';
        err << app.help();
        return 1;
    } catch (const UsageError& e) {
        err << "error[usage]: " << e.what() << '\n';
        err << app.help();
        return 1;
    } catch (const DataError& e) {
        err << "error[data]: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        err << "error[numeric]: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return 3;
    }
}

} // namespace lfm
