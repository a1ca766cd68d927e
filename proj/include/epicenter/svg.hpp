#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "epicenter/pattern.hpp"
#include "epicenter/resample.hpp"

namespace epi {

/// One scatter panel in the style of the resampling figures: cases as solid
/// dots, center clouds as open circles, full-sample centers as +/x markers,
/// landmarks as labeled triangles.  Output is plain SVG with fixed numeric
/// formatting, so identical inputs give identical bytes.
struct FigurePanel {
    std::string title;
    const CasePattern* cases = nullptr;
    const CenterCloud* centroid_cloud = nullptr;       // cyan open circles
    const CenterCloud* center_point_cloud = nullptr;   // blue open circles
    std::optional<PlanePoint> centroid_marker;         // magenta +
    std::optional<PlanePoint> center_point_marker;     // green x
    std::span<const Landmark> landmarks;               // red triangles
};

void write_figure_panel(const std::filesystem::path& path, const FigurePanel& panel);

/// Histogram of replicate statistics with the observed value marked.
void write_histogram(const std::filesystem::path& path, std::span<const double> replicates,
                     double observed, const std::string& title);

}  // namespace epi
