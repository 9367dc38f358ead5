#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "velaid/scenario.hpp"

namespace velaid {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> markers;  ///< x positions drawn as vertical jump markers
};

/// Self-contained SVG rendering. Jump markers carry class="jump-marker".
std::string render_svg(const LineChart& chart);

/// Writes attitude_error.svg, bias_error.svg and accel_error.svg into
/// `out_dir` (created if missing). Returns the paths written.
std::vector<std::filesystem::path> emit_plots(const std::vector<CsvRow>& rows, const std::filesystem::path& out_dir);

/// Reads schema-v1 telemetry from `csv` and plots it. Throws
/// std::runtime_error on I/O or schema errors.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

}  // namespace velaid
