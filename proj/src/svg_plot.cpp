#include "lfm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lfm/errors.hpp"
#include "lfm/text.hpp"

namespace lfm {

namespace {

constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 36.0;

const char* kPalette[] = {"#1f6feb", "#d33c2e", "#1a9850", "#9b59b6", "#e67e22", "#444444"};
constexpr int kPaletteSize = 6;

// Nice decimal tick step >= raw, as mantissa (1, 2 or 5) times 10^exponent.
void nice_step(double raw, int& mantissa, int& exponent) {
    exponent = static_cast<int>(std::floor(std::log10(raw)));
    const double base = std::pow(10.0, exponent);
    const double m = raw / base;
    if (m <= 1.0) mantissa = 1;
    else if (m <= 2.0) mantissa = 2;
    else if (m <= 5.0) mantissa = 5;
    else {
        mantissa = 1;
        ++exponent;
    }
}

std::string tick_label(double value, int exponent) {
    const int decimals = exponent < 0 ? -exponent : 0;
    std::string s = fmt_fixed(value, decimals);
    if (s == "-" + fmt_fixed(0.0, decimals)) s = fmt_fixed(0.0, decimals); // no negative zero
    return s;
}

} // namespace

std::string render_svg(const std::vector<AnnualSeries>& series, const PlotOptions& opt) {
    if (series.empty()) throw DataError("plot: no series given");

    int year_lo = series[0].start_year(), year_hi = series[0].end_year();
    double val_lo = series[0].min_value(), val_hi = series[0].max_value();
    for (const auto& s : series) {
        year_lo = std::min(year_lo, s.start_year());
        year_hi = std::max(year_hi, s.end_year());
        val_lo = std::min(val_lo, s.min_value());
        val_hi = std::max(val_hi, s.max_value());
    }

    // 5% padding beyond the data extremes; degenerate ranges widen
    // symmetrically so a constant sits at mid-canvas.
    double y_span = val_hi - val_lo;
    if (y_span <= 0.0) y_span = std::max(1.0, std::fabs(val_lo)) * 0.2;
    double y0 = val_lo - 0.05 * y_span;
    double y1 = val_hi + 0.05 * y_span;
    if (val_hi == val_lo) {
        y0 = val_lo - 0.5 * y_span;
        y1 = val_hi + 0.5 * y_span;
    }

    double x_span = static_cast<double>(year_hi - year_lo);
    if (x_span <= 0.0) x_span = 2.0;
    const double x0 = year_lo - 0.05 * x_span;
    const double x1 = year_hi + 0.05 * x_span;

    const double w = static_cast<double>(opt.width);
    const double h = static_cast<double>(opt.height);
    const double px0 = kMarginLeft, px1 = w - kMarginRight;
    const double py0 = kMarginTop, py1 = h - kMarginBottom;

    auto sx = [&](double year) { return px0 + (year - x0) / (x1 - x0) * (px1 - px0); };
    auto sy = [&](double v) { return py1 - (v - y0) / (y1 - y0) * (py1 - py0); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" fill=\"#ffffff\"/>\n";
    if (!opt.title.empty())
        out << "<text x=\"" << fmt_fixed(w / 2.0, 2)
            << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
            << opt.title << "</text>\n";

    // y ticks
    {
        int mant, expn;
        nice_step((y1 - y0) / 6.0, mant, expn);
        const double step = mant * std::pow(10.0, expn);
        const long k_first = static_cast<long>(std::ceil(y0 / step));
        const long k_last = static_cast<long>(std::floor(y1 / step));
        for (long k = k_first; k <= k_last; ++k) {
            const double v = k * step;
            const double y = sy(v);
            out << "<line x1=\"" << fmt_fixed(px0, 2) << "\" y1=\"" << fmt_fixed(y, 2)
                << "\" x2=\"" << fmt_fixed(px1, 2) << "\" y2=\"" << fmt_fixed(y, 2)
                << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            out << "<text x=\"" << fmt_fixed(px0 - 6.0, 2) << "\" y=\"" << fmt_fixed(y + 3.5, 2)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
                << tick_label(v, expn) << "</text>\n";
        }
    }
    // x ticks: integer year steps from a fixed menu
    {
        const int span = year_hi - year_lo;
        int step = 100;
        for (int c : {1, 2, 5, 10, 20, 25, 50, 100}) {
            if (span / c <= 8) {
                step = c;
                break;
            }
        }
        const int first = ((year_lo + step - 1) / step) * step;
        for (int yr = first; yr <= year_hi; yr += step) {
            const double x = sx(static_cast<double>(yr));
            out << "<line x1=\"" << fmt_fixed(x, 2) << "\" y1=\"" << fmt_fixed(py1, 2)
                << "\" x2=\"" << fmt_fixed(x, 2) << "\" y2=\"" << fmt_fixed(py1 + 4.0, 2)
                << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
            out << "<text x=\"" << fmt_fixed(x, 2) << "\" y=\"" << fmt_fixed(py1 + 16.0, 2)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" << yr
                << "</text>\n";
        }
    }
    // frame
    out << "<rect x=\"" << fmt_fixed(px0, 2) << "\" y=\"" << fmt_fixed(py0, 2) << "\" width=\""
        << fmt_fixed(px1 - px0, 2) << "\" height=\"" << fmt_fixed(py1 - py0, 2)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // series polylines
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j) out << ' ';
            out << fmt_fixed(sx(static_cast<double>(s.start_year() + static_cast<int>(j))), 2)
                << ',' << fmt_fixed(sy(s[j]), 2);
        }
        out << "\"/>\n";
    }
    // legend
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        const double ly = py0 + 14.0 + 14.0 * static_cast<double>(i);
        out << "<line x1=\"" << fmt_fixed(px0 + 8.0, 2) << "\" y1=\"" << fmt_fixed(ly - 3.5, 2)
            << "\" x2=\"" << fmt_fixed(px0 + 28.0, 2) << "\" y2=\"" << fmt_fixed(ly - 3.5, 2)
            << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << fmt_fixed(px0 + 33.0, 2) << "\" y=\"" << fmt_fixed(ly, 2)
            << "\" font-family=\"sans-serif\" font-size=\"10\">"
            << (series[i].label().empty() ? ("series " + std::to_string(i + 1))
                                          : series[i].label())
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_plot(const std::vector<AnnualSeries>& series, const std::string& path,
               const PlotOptions& opt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << render_svg(series, opt);
    if (!out) throw DataError("write failed for '" + path + "'");
}

} // namespace lfm
