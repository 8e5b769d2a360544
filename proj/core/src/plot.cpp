#include "lsimamab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "internal/format.hpp"

namespace lsimamab {

namespace {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.columns = split_csv_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.columns.size())
            throw std::runtime_error("ragged CSV row in " + path.string());
        t.rows.push_back(std::move(cells));
    }
    return t;
}

int require_column(const Table& t, const std::string& name) {
    const int idx = t.column_index(name);
    if (idx >= 0) return idx;
    std::string available;
    for (const auto& c : t.columns) {
        if (!available.empty()) available += ", ";
        available += c;
    }
    throw std::invalid_argument("column '" + name + "' not found; available columns: " + available);
}

double parse_double(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str()) throw std::runtime_error("non-numeric CSV cell '" + cell + "'");
    return v;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log10 = false;

    double fraction(double v) const {
        const double a = log10 ? std::log10(v) : v;
        const double l = log10 ? std::log10(lo) : lo;
        const double h = log10 ? std::log10(hi) : hi;
        if (h == l) return 0.5;
        return (a - l) / (h - l);
    }
};

std::vector<double> linear_ticks(double lo, double hi, int target) {
    if (hi <= lo) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    double v = std::ceil(lo / step) * step;
    for (; v <= hi + step * 1e-9; v += step) ticks.push_back(v == 0.0 ? 0.0 : v);
    return ticks;
}

std::vector<double> decade_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (int e = static_cast<int>(std::floor(std::log10(lo)));
         e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) ticks.push_back(v);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

std::string tick_label(double v) {
    std::string s = internal::format_sig9(v);
    // trim to a compact general form; sig9 already has no trailing zeros
    return s;
}

}  // namespace

void render_plot(const std::filesystem::path& summary_csv, const std::string& x_column,
                 const std::vector<std::string>& y_columns,
                 const std::filesystem::path& output_svg, const PlotOptions& options) {
    if (y_columns.empty()) throw std::invalid_argument("render_plot: no y columns requested");
    const Table table = read_csv(summary_csv);
    if (table.rows.empty())
        throw std::runtime_error("CSV " + summary_csv.string() + " has no data rows");

    const int xi = require_column(table, x_column);
    struct Series {
        std::string name;
        std::vector<double> y;
        std::vector<double> se;  // empty when no matching band column
    };
    std::vector<double> xs;
    xs.reserve(table.rows.size());
    for (const auto& row : table.rows) xs.push_back(parse_double(row[static_cast<std::size_t>(xi)]));

    std::vector<Series> series;
    for (const auto& name : y_columns) {
        const int yi = require_column(table, name);
        Series s;
        s.name = name;
        for (const auto& row : table.rows) s.y.push_back(parse_double(row[static_cast<std::size_t>(yi)]));
        // a `<stem>_se` column next to a `<stem>_mean` series becomes a band
        const std::string mean_suffix = "_mean";
        if (name.size() > mean_suffix.size() &&
            name.compare(name.size() - mean_suffix.size(), mean_suffix.size(), mean_suffix) == 0) {
            const std::string se_name =
                name.substr(0, name.size() - mean_suffix.size()) + "_se";
            const int si = table.column_index(se_name);
            if (si >= 0)
                for (const auto& row : table.rows)
                    s.se.push_back(parse_double(row[static_cast<std::size_t>(si)]));
        }
        series.push_back(std::move(s));
    }

    Axis x_axis;
    x_axis.lo = *std::min_element(xs.begin(), xs.end());
    x_axis.hi = *std::max_element(xs.begin(), xs.end());
    x_axis.log10 = x_axis.lo > 0.0 && x_axis.hi / x_axis.lo >= 100.0;
    if (x_axis.lo == x_axis.hi) {
        x_axis.lo -= 0.5;
        x_axis.hi += 0.5;
        x_axis.log10 = false;
    }

    Axis y_axis;
    y_axis.lo = std::numeric_limits<double>::infinity();
    y_axis.hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            const double band = s.se.empty() ? 0.0 : s.se[i];
            y_axis.lo = std::min(y_axis.lo, s.y[i] - band);
            y_axis.hi = std::max(y_axis.hi, s.y[i] + band);
        }
    if (y_axis.lo == y_axis.hi) {
        y_axis.lo -= 1.0;
        y_axis.hi += 1.0;
    } else {
        const double pad = (y_axis.hi - y_axis.lo) * 0.06;
        y_axis.lo -= pad;
        y_axis.hi += pad;
    }

    const double width = options.width;
    const double height = options.height;
    const double ml = 78, mr = 24, mt = options.title.empty() ? 20 : 40, mb = 52;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;
    auto px = [&](double v) { return ml + x_axis.fraction(v) * plot_w; };
    auto py = [&](double v) { return mt + (1.0 - y_axis.fraction(v)) * plot_h; };
    auto fmt = [](double v) { return internal::format_sig9(v); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"16\">"
            << options.title << "</text>\n";

    // axes frame
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    const std::vector<double> xticks =
        x_axis.log10 ? decade_ticks(x_axis.lo, x_axis.hi) : linear_ticks(x_axis.lo, x_axis.hi, 6);
    for (double v : xticks) {
        const double x = px(v);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << mt + plot_h << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << mt + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << mt + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(v) << "</text>\n";
    }
    for (double v : linear_ticks(y_axis.lo, y_axis.hi, 6)) {
        const double y = py(v);
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(y) << "\" x2=\"" << ml << "\" y2=\""
            << fmt(y) << "\" stroke=\"#333\"/>\n";
        svg << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\"" << ml + plot_w
            << "\" y2=\"" << fmt(y) << "\" stroke=\"#eee\"/>\n";
        svg << "<text x=\"" << ml - 9 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(v) << "</text>\n";
    }
    svg << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_column
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (!s.se.empty() && xs.size() > 1) {
            std::string pts;
            for (std::size_t i = 0; i < xs.size(); ++i)
                pts += fmt(px(xs[i])) + "," + fmt(py(s.y[i] + s.se[i])) + " ";
            for (std::size_t i = xs.size(); i-- > 0;)
                pts += fmt(px(xs[i])) + "," + fmt(py(s.y[i] - s.se[i])) + " ";
            svg << "<polygon points=\"" << pts << "\" fill=\"" << color
                << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
        }
        if (xs.size() > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
            for (std::size_t i = 0; i < xs.size(); ++i)
                svg << fmt(px(xs[i])) << ',' << fmt(py(s.y[i])) << ' ';
            svg << "\"/>\n";
        }
        for (std::size_t i = 0; i < xs.size(); ++i)
            svg << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(s.y[i]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        // legend entry
        const double ly = mt + 14 + 18 * static_cast<double>(k);
        svg << "<line x1=\"" << ml + plot_w - 150 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << ml + plot_w - 128 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + plot_w - 122 << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(output_svg, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write SVG " + output_svg.string());
    out << svg.str();
    if (!out) throw std::runtime_error("failed writing SVG " + output_svg.string());
}

}  // namespace lsimamab
