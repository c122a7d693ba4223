#pragma once

#include "blasius/shooting.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace blasius {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "eta";
    std::string y_label;
    // Curves are clipped to this range when set; near-singular profiles
    // would otherwise flatten everything else.
    std::optional<double> y_min;
    std::optional<double> y_max;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG with axes, ticks, legend and one polyline per series.
/// Throws std::invalid_argument if there is nothing to draw.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts);

/// f, f' and f'' against eta, written atomically.
void emit_plot(const SolutionTable& table, const std::filesystem::path& path, PlotOptions opts = {});

/// Overlay of two tables (e.g. network against oracle), dashed for the second.
void emit_comparison_plot(const SolutionTable& model, const SolutionTable& oracle,
                          const std::filesystem::path& path, PlotOptions opts = {});

} // namespace blasius
