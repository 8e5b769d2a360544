#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lsimamab {

struct PlotOptions {
    std::string title;
    int width = 860;
    int height = 540;
};

// Renders a line plot of the named columns of a summary CSV as a standalone
// SVG; no display server involved. One series per y column, drawn with
// markers, plus a one-standard-error band whenever a column named
// "<stem>_se" matches a "<stem>_mean" series. The x axis switches to a log
// scale when all x values are positive and span at least two decades.
// A single data row degenerates to markers only. The output is a pure
// function of the CSV bytes.
//
// Throws std::invalid_argument naming the available columns when a requested
// column is missing, and std::runtime_error when the CSV has no data rows.
void render_plot(const std::filesystem::path& summary_csv, const std::string& x_column,
                 const std::vector<std::string>& y_columns,
                 const std::filesystem::path& output_svg, const PlotOptions& options = {});

}  // namespace lsimamab
