#pragma once

#include <string>
#include <vector>

#include "lfm/annual_series.hpp"

namespace lfm {

struct PlotOptions {
    int width = 800;
    int height = 480;
    std::string title;
};

/// Render a line chart of the given series as a standalone SVG document.
/// Everything about the output is deterministic — fixed canvas, fixed
/// margins, fixed 1-2-5 tick steps, fixed-precision coordinates — so the
/// same input always produces byte-identical bytes.
std::string render_svg(const std::vector<AnnualSeries>& series, const PlotOptions& opt = {});

/// render_svg + write to a file.
void emit_plot(const std::vector<AnnualSeries>& series, const std::string& path,
               const PlotOptions& opt = {});

} // namespace lfm
