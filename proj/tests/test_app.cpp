#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lfm/annual_series.hpp"
#include "lfm/cli.hpp"
#include "lfm/csv.hpp"
#include "lfm/errors.hpp"
#include "lfm/manifest.hpp"
#include "lfm/model.hpp"
#include "lfm/registry.hpp"
#include "lfm/replicate.hpp"
#include "lfm/svg_plot.hpp"

using namespace lfm;
namespace fs = std::filesystem;

namespace {

const std::string kTestDir = LFM_TEST_DIR;
const std::string kFixtures = kTestDir + "/fixtures";
const std::string kGolden = kTestDir + "/golden";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(static_cast<bool>(in), "cannot open " << path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    REQUIRE(static_cast<bool>(out));
}

// Scratch directory, wiped on construction so reruns start clean.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return CliRun{code, out.str(), err.str()};
}

} // namespace

// ---------------------------------------------------------------------------
// CSV contract

TEST_CASE("csv loads the documented two-row example") {
    TempDir tmp("lfm_app_csv1");
    write_file(tmp.file("a.csv"), "year,value\n1960,2364200\n1961,2378000\n");
    const auto s = load_series_csv(tmp.file("a.csv"), Unit::Count, "lf");
    CHECK(s.size() == 2);
    CHECK(s.start_year() == 1960);
    CHECK(s[0] == 2364200.0);
    CHECK(s[1] == 2378000.0);
}

TEST_CASE("csv interior problems are hard errors naming the year") {
    TempDir tmp("lfm_app_csv2");
    write_file(tmp.file("gap.csv"), "year,value\n1960,1\n1962,2\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("gap.csv"), Unit::Count, "x"),
                         doctest::Contains("1961"), DataError);

    write_file(tmp.file("hole.csv"), "year,value\n1960,1\n1961,\n1962,2\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("hole.csv"), Unit::Count, "x"),
                         doctest::Contains("interior year 1961"), DataError);
}

TEST_CASE("csv edge rows without values drop with a warning") {
    TempDir tmp("lfm_app_csv3");
    write_file(tmp.file("e.csv"), "year,value\n1959,\n1960,5\n1961,6\n1962,\n");
    std::vector<std::string> warnings;
    const auto s = load_series_csv(tmp.file("e.csv"), Unit::Count, "x", &warnings);
    CHECK(s.start_year() == 1960);
    CHECK(s.size() == 2);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("1959") != std::string::npos);
    CHECK(warnings[1].find("1962") != std::string::npos);
}

TEST_CASE("csv structural errors carry the file position") {
    TempDir tmp("lfm_app_csv4");
    write_file(tmp.file("h.csv"), "anno,valore\n1960,1\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("h.csv"), Unit::Count, "x"),
                         doctest::Contains(":1: header must be exactly 'year,value'"),
                         DataError);

    write_file(tmp.file("f.csv"), "year,value\n1960,1,9\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("f.csv"), Unit::Count, "x"),
                         doctest::Contains("expected 2 fields"), DataError);

    write_file(tmp.file("o.csv"), "year,value\n1961,1\n1960,2\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("o.csv"), Unit::Count, "x"),
                         doctest::Contains("strictly increasing"), DataError);

    write_file(tmp.file("empty.csv"), "");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("empty.csv"), Unit::Count, "x"),
                         doctest::Contains("empty file"), DataError);

    write_file(tmp.file("nodata.csv"), "year,value\n");
    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("nodata.csv"), Unit::Count, "x"),
                         doctest::Contains("no data rows"), DataError);

    CHECK_THROWS_WITH_AS(load_series_csv(tmp.file("missing.csv"), Unit::Count, "x"),
                         doctest::Contains("cannot open"), DataError);
}

TEST_CASE("csv canonical save/load round trip is byte-identical") {
    // The committed fixture is already canonical: loading and re-saving it
    // must reproduce the exact bytes.
    const std::string orig = read_file(kFixtures + "/lf_synth.csv");
    const auto s = load_series_csv(kFixtures + "/lf_synth.csv", Unit::Count, "lf");
    CHECK(series_to_csv(s) == orig);

    // Property: save(load(save(x))) is a fixed point and values are bit-exact.
    TempDir tmp("lfm_app_csv5");
    std::mt19937 rng(8);
    std::normal_distribution<double> d(0.03, 0.01);
    std::vector<double> v(25);
    for (double& x : v) x = d(rng);
    const AnnualSeries made(1970, v, Unit::RatePerYear, "pi");
    save_series_csv(made, tmp.file("r.csv"));
    const auto back = load_series_csv(tmp.file("r.csv"), Unit::RatePerYear, "pi");
    REQUIRE(back.size() == made.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == made[i]);
    CHECK(series_to_csv(back) == read_file(tmp.file("r.csv")));
}

// ---------------------------------------------------------------------------
// Manifests

TEST_CASE("manifest parses roles, breaks, comments, and relative paths") {
    const std::string text =
        "# comment line\n"
        "country=Italy\n"
        "series=labor_force,OECD,lf.csv\n"
        "series=unemployment,US-definition,/abs/ue.csv\n"
        "break=1992,survey redesign\n"
        "\n";
    const auto m = parse_manifest(text, "/base/dir", "inline");
    CHECK(m.country == "Italy");
    REQUIRE(m.series.size() == 2);
    const SeriesFile* lf = m.find_role(SeriesRole::LaborForce);
    REQUIRE(lf != nullptr);
    CHECK(lf->path == "/base/dir/lf.csv"); // relative resolves against base
    const SeriesFile* ue = m.find_role(SeriesRole::Unemployment);
    REQUIRE(ue != nullptr);
    CHECK(ue->path == "/abs/ue.csv"); // absolute kept
    CHECK(ue->measure == SourceMeasure::USDefinition);
    CHECK(m.find_role(SeriesRole::Inflation) == nullptr);
    REQUIRE(m.known_breaks.size() == 1);
    CHECK(m.known_breaks[0].first == 1992);
    CHECK(m.known_breaks[0].second == "survey redesign");

    const auto file_m = load_manifest(kFixtures + "/italy.manifest");
    CHECK(file_m.country == "Italy");
    REQUIRE(file_m.find_role(SeriesRole::LaborForce) != nullptr);
    // resolves next to the manifest itself
    CHECK(load_series(*file_m.find_role(SeriesRole::LaborForce)).size() == 41);
}

TEST_CASE("manifest validation rejects incomplete declarations") {
    CHECK_THROWS_WITH_AS(parse_manifest("series=labor_force,OECD,a.csv\n", ".", "m"),
                         doctest::Contains("no country= line"), DataError);
    CHECK_THROWS_WITH_AS(parse_manifest("country=X\nseries=unemployment,OECD,u.csv\n", ".", "m"),
                         doctest::Contains("labor_force series required"), DataError);
    CHECK_THROWS_WITH_AS(parse_manifest("country=X\ncountry=Y\n", ".", "m"),
                         doctest::Contains("duplicate country="), DataError);
    CHECK_THROWS_WITH_AS(parse_manifest("country=X\nwhat=ever\n", ".", "m"),
                         doctest::Contains("unknown key"), DataError);
    CHECK_THROWS_WITH_AS(parse_manifest("country=X\nseries=labor_force,OECD\n", ".", "m"),
                         doctest::Contains("series needs role,measure,path"), DataError);
    CHECK_THROWS_WITH_AS(parse_manifest("country=X\nbreak=soon\n", ".", "m"),
                         doctest::Contains("break needs year,note"), DataError);
}

// ---------------------------------------------------------------------------
// Replication driver

TEST_CASE("replicate evaluates the registry model against supplied data") {
    const auto manifest = load_manifest(kFixtures + "/italy.manifest");
    const std::string lf_before = read_file(kFixtures + "/lf_synth.csv");
    const std::string ue_before = read_file(kFixtures + "/ue_synth.csv");

    const ReplicationResult res = replicate("Italy", manifest);
    REQUIRE(res.entry != nullptr);
    CHECK(res.entry->country == "Italy");
    CHECK(res.measured.size() > 10);
    CHECK(res.predicted.size() == res.measured.size());
    CHECK(res.scatter.n == static_cast<int>(res.measured.size()));
    CHECK(std::isfinite(res.scatter.r_squared));
    CHECK(res.fit.rmsfe.has_value()); // lagged model: pseudo-out-of-sample works
    // the report prints achieved figures next to the published ones
    CHECK(res.text.find("reference") != std::string::npos);

    // inputs are never mutated
    CHECK(read_file(kFixtures + "/lf_synth.csv") == lf_before);
    CHECK(read_file(kFixtures + "/ue_synth.csv") == ue_before);
}

TEST_CASE("replicate reports missing roles and bad model indices") {
    TempDir tmp("lfm_app_rep");
    // labor force only: Italy's canonical model predicts unemployment, so the
    // measured series is missing.
    write_file(tmp.file("only_lf.manifest"),
               "country=Italy\nseries=labor_force,OECD," + kFixtures + "/lf_synth.csv\n");
    const auto m = load_manifest(tmp.file("only_lf.manifest"));
    CHECK_THROWS_WITH_AS(replicate("Italy", m),
                         doctest::Contains("no series combination"), DataError);
    ReplicateOptions first;
    first.model_index = 0;
    CHECK_THROWS_WITH_AS(replicate("Italy", m, first),
                         doctest::Contains("unemployment series required"), DataError);

    const auto full = load_manifest(kFixtures + "/italy.manifest");
    ReplicateOptions opt;
    opt.model_index = 9;
    CHECK_THROWS_WITH_AS(replicate("Italy", full, opt), doctest::Contains("model index"),
                         DataError);

    CHECK_THROWS_AS(replicate("Atlantis", full), DataError);
}

// ---------------------------------------------------------------------------
// Projection

TEST_CASE("flat growth projects to the constant model value") {
    std::vector<double> flat(31, 1.0e6); // zero growth 2000..2030
    ProjectionScenario sc{"flat", AnnualSeries(2000, flat, Unit::Count, "lf"), {}};
    sc.model.target = Target::Inflation;
    sc.model.segments.push_back(ModelSegment{.lf_coeff = 4.0, .intercept = -0.03, .lf_lag = 2});

    const auto out = project(sc);
    CHECK(out.end_year() == 2032); // lag years past the last projected input
    for (double v : out.values()) CHECK(std::abs(v - (-0.03)) < 1e-15);
    CHECK(out.label() == "flat");
}

TEST_CASE("projection equals direct model evaluation") {
    const Registry& reg = Registry::builtin();
    const PiecewiseModel model = reg.lookup("Italy").models.at(0);

    std::mt19937 rng(17);
    std::normal_distribution<double> d(0.012, 0.004);
    std::vector<double> lf{5.0e6};
    for (int i = 0; i < 45; ++i) lf.push_back(lf.back() * (1.0 + d(rng)));
    const AnnualSeries lfs(1985, lf, Unit::Count, "lf");

    const ProjectionScenario sc{"", lfs, model};
    const auto got = project(sc);
    const auto oracle = eval_piecewise(model, &lfs, nullptr);
    REQUIRE(got.size() == oracle.size());
    REQUIRE(got.start_year() == oracle.start_year());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - oracle[i]) <= 1e-12);
}

TEST_CASE("flat-growth projection property over random models") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coeff(-5.0, 5.0), icpt(-0.1, 0.1),
        growth(-0.02, 0.03);
    std::uniform_int_distribution<int> lag(0, 8);
    for (int t = 0; t < 50; ++t) {
        const double g = growth(rng);
        std::vector<double> lf{1.0e6};
        for (int i = 0; i < 30; ++i) lf.push_back(lf.back() * (1.0 + g));

        ProjectionScenario sc{"", AnnualSeries(2000, lf, Unit::Count, "lf"), {}};
        sc.model.target = Target::Inflation;
        const ModelSegment seg{.lf_coeff = coeff(rng), .intercept = icpt(rng),
                               .lf_lag = lag(rng)};
        sc.model.segments.push_back(seg);

        const double expect = seg.lf_coeff * g + seg.intercept;
        const AnnualSeries out = project(sc);
        for (double v : out.values()) CHECK(std::abs(v - expect) <= 1e-12);
    }
}

TEST_CASE("degenerate projections fail cleanly") {
    CHECK_THROWS_AS(AnnualSeries(2000, std::vector<double>{}, Unit::Count, "lf"), DataError);

    ProjectionScenario sc{"", AnnualSeries(2000, std::vector<double>{1.0e6}, Unit::Count, "lf"),
                          {}};
    sc.model.target = Target::Inflation;
    sc.model.segments.push_back(ModelSegment{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 3});
    CHECK_THROWS_WITH_AS(project(sc), doctest::Contains("shorter than"), DataError);

    // generalized models cannot be driven by a labor-force path alone
    std::vector<double> flat(20, 1.0e6);
    ProjectionScenario gen{"", AnnualSeries(2000, flat, Unit::Count, "lf"), {}};
    gen.model.target = Target::Inflation;
    gen.model.segments.push_back(
        ModelSegment{.lf_coeff = 1.0, .intercept = 0.0, .lf_lag = 0, .ue_coeff = -1.0});
    CHECK_THROWS_WITH_AS(project(gen), doctest::Contains("one-variable"), DataError);
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace {

// y-coordinates of every vertex of the first polyline in the document
std::vector<double> polyline_ys(const std::string& svg) {
    const auto p = svg.find("points=\"");
    REQUIRE(p != std::string::npos);
    const auto end = svg.find('"', p + 8);
    std::vector<double> ys;
    std::istringstream pts(svg.substr(p + 8, end - p - 8));
    std::string pair;
    while (pts >> pair) {
        const auto comma = pair.find(',');
        REQUIRE(comma != std::string::npos);
        ys.push_back(std::stod(pair.substr(comma + 1)));
    }
    return ys;
}

} // namespace

TEST_CASE("constant series renders as a horizontal mid-canvas line") {
    const AnnualSeries s(1990, std::vector<double>(12, 0.042), Unit::RatePerYear, "flat");
    const std::string svg = render_svg({s});
    CHECK(svg.find("<svg") != std::string::npos);
    const auto ys = polyline_ys(svg);
    REQUIRE(ys.size() == 12);
    for (double y : ys) CHECK(y == ys[0]);
    CHECK(ys[0] > 480 * 0.25);
    CHECK(ys[0] < 480 * 0.75);
}

TEST_CASE("identical series coincide and the legend names both") {
    const AnnualSeries a(1990, {0.01, 0.03, 0.02, 0.05}, Unit::RatePerYear, "measured");
    const AnnualSeries b(1990, {0.01, 0.03, 0.02, 0.05}, Unit::RatePerYear, "predicted");
    const std::string svg = render_svg({a, b});
    CHECK(svg.find("measured") != std::string::npos);
    CHECK(svg.find("predicted") != std::string::npos);

    // both polylines carry identical vertex lists
    const auto p1 = svg.find("points=\"");
    REQUIRE(p1 != std::string::npos);
    const auto e1 = svg.find('"', p1 + 8);
    const std::string pts1 = svg.substr(p1 + 8, e1 - p1 - 8);
    const auto p2 = svg.find("points=\"", e1);
    REQUIRE(p2 != std::string::npos);
    const auto e2 = svg.find('"', p2 + 8);
    CHECK(svg.substr(p2 + 8, e2 - p2 - 8) == pts1);
}

TEST_CASE("rendering is deterministic and matches the committed golden") {
    std::vector<double> a, b;
    for (int i = 0; i < 30; ++i) {
        a.push_back(0.02 + 0.015 * (i % 7) / 7.0 - 0.001 * i);
        b.push_back(0.021 + 0.014 * ((i + 2) % 7) / 7.0 - 0.001 * i);
    }
    const AnnualSeries m(1960, a, Unit::RatePerYear, "measured");
    const AnnualSeries p(1960, b, Unit::RatePerYear, "predicted");
    PlotOptions opt;
    opt.title = "golden chart";

    const std::string once = render_svg({m, p}, opt);
    const std::string twice = render_svg({m, p}, opt);
    CHECK(once == twice);
    CHECK(once == read_file(kGolden + "/chart.svg"));

    TempDir tmp("lfm_app_svg");
    emit_plot({m, p}, tmp.file("c.svg"), opt);
    CHECK(read_file(tmp.file("c.svg")) == once);
}

TEST_CASE("empty plot input is an error") {
    CHECK_THROWS_AS(render_svg({}), DataError);
}

// ---------------------------------------------------------------------------
// CLI

TEST_CASE("cli registry export matches the committed golden") {
    const auto r = cli({"registry", "--export", "-"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == read_file(kGolden + "/registry_export.txt"));
}

TEST_CASE("cli predict output matches the committed golden and is deterministic") {
    const std::vector<std::string> args{"predict", "--country", "Italy", "--lf",
                                        kFixtures + "/lf_synth.csv"};
    const auto r1 = cli(args);
    CHECK(r1.code == 0);
    CHECK(r1.out == read_file(kGolden + "/predict_italy.csv"));
    const auto r2 = cli(args);
    CHECK(r2.out == r1.out);
}

TEST_CASE("cli fit recovers the generating model and emits stable artifacts") {
    TempDir tmp("lfm_app_fit");
    const std::vector<std::string> args{
        "fit",       "--lf",        kFixtures + "/lf_synth.csv",
        "--inflation", kFixtures + "/pi_synth.csv",
        "--lag-range", "0..5",      "--out-dir", tmp.file("run1")};
    const auto r = cli(args);
    CAPTURE(r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("Fit report") != std::string::npos);

    // the emitted model table round-trips into an evaluable model
    const auto reg = Registry::import_table(read_file(tmp.file("run1") + "/model.table"));
    REQUIRE(reg.entries().size() == 1);
    const PiecewiseModel& m = reg.entries()[0].models.at(0);
    REQUIRE(m.segments.size() == 1);
    CHECK(m.segments[0].lf_lag == 2);
    CHECK(std::abs(m.segments[0].lf_coeff - 3.5) <= 1e-6);
    CHECK(std::abs(m.segments[0].intercept - (-0.02)) <= 1e-8);

    // identical invocation, bit-identical artifacts
    std::vector<std::string> args2 = args;
    args2.back() = tmp.file("run2");
    const auto r2 = cli(args2);
    CHECK(r2.code == 0);
    CHECK(read_file(tmp.file("run2") + "/fit_report.csv") ==
          read_file(tmp.file("run1") + "/fit_report.csv"));
    CHECK(read_file(tmp.file("run2") + "/model.table") ==
          read_file(tmp.file("run1") + "/model.table"));
}

TEST_CASE("cli svg artifacts are byte-stable across runs") {
    TempDir tmp("lfm_app_clisvg");
    const std::vector<std::string> base{"predict",  "--country", "Italy",
                                        "--lf",     kFixtures + "/lf_synth.csv",
                                        "--svg",    "--out-dir"};
    auto a1 = base;
    a1.push_back(tmp.file("p1"));
    auto a2 = base;
    a2.push_back(tmp.file("p2"));
    CHECK(cli(a1).code == 0);
    CHECK(cli(a2).code == 0);
    const std::string svg1 = read_file(tmp.file("p1") + "/prediction.svg");
    CHECK(svg1 == read_file(tmp.file("p2") + "/prediction.svg"));
    CHECK(svg1.find("<svg") != std::string::npos);
}

TEST_CASE("cli exit codes separate usage, data, and numeric failures") {
    const auto unknown = cli({"frobnicate"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("error[usage]:") != std::string::npos);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    const auto no_args = cli({});
    CHECK(no_args.code == 1);

    const auto two_sources = cli({"predict", "--country", "Italy", "--model", "x.table",
                                  "--lf", kFixtures + "/lf_synth.csv"});
    CHECK(two_sources.code == 1);
    CHECK(two_sources.err.find("error[usage]:") != std::string::npos);
    CHECK(two_sources.err.find("exactly one of --country or --model") != std::string::npos);

    const auto no_series = cli({"predict", "--country", "Italy"});
    CHECK(no_series.code == 2);
    CHECK(no_series.err.find("error[data]:") != std::string::npos);

    const auto bad_country =
        cli({"predict", "--country", "Atlantis", "--lf", kFixtures + "/lf_synth.csv"});
    CHECK(bad_country.code == 2);
    CHECK(bad_country.err.find("error[data]:") != std::string::npos);
    CHECK(bad_country.err.find("unknown country") != std::string::npos);

    const auto bad_file = cli({"registry", "--country", "Atlantis"});
    CHECK(bad_file.code == 2);

    const auto missing_file =
        cli({"fit", "--lf", "/nonexistent/lf.csv", "--inflation", "/nonexistent/pi.csv"});
    CHECK(missing_file.code == 2);
    CHECK(missing_file.err.find("cannot open") != std::string::npos);

    const auto svg_no_dir =
        cli({"predict", "--country", "Italy", "--lf", kFixtures + "/lf_synth.csv", "--svg"});
    CHECK(svg_no_dir.code == 1);
    CHECK(svg_no_dir.err.find("--svg requires --out-dir") != std::string::npos);

    const auto help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("fit") != std::string::npos);
}
