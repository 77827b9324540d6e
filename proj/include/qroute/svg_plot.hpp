#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qroute::harness {

enum class Axis { kLeft, kRight };

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  Axis axis = Axis::kLeft;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "step";
  std::string left_label;
  std::string right_label;
  int width = 900;
  int height = 500;
};

/// Standalone SVG line chart, one <polyline> per series with one point per
/// sample, plus axes, tick labels and a legend. Series on Axis::kRight get
/// their own scale. Throws std::invalid_argument for no series, an empty
/// series, or mismatched x/y lengths.
std::string render_svg_plot(std::span<const PlotSeries> series, const PlotOptions& options);

/// Writes render_svg_plot to `path`. Throws std::runtime_error if the file
/// cannot be written.
void emit_svg_plot(std::span<const PlotSeries> series, const std::filesystem::path& path,
                   const PlotOptions& options = {});

}  // namespace qroute::harness
