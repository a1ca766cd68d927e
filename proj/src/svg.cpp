#include "epicenter/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

#include "epicenter/error.hpp"

namespace epi {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 40.0;

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(const PlanePoint& p) {
        xmin = std::min(xmin, p.easting);
        xmax = std::max(xmax, p.easting);
        ymin = std::min(ymin, p.northing);
        ymax = std::max(ymax, p.northing);
    }

    bool valid() const { return xmin <= xmax && ymin <= ymax; }

    void pad(double fraction) {
        const double dx = std::max(1.0, (xmax - xmin) * fraction);
        const double dy = std::max(1.0, (ymax - ymin) * fraction);
        xmin -= dx;
        xmax += dx;
        ymin -= dy;
        ymax += dy;
    }
};

class Canvas {
public:
    Canvas(std::ofstream& out, const Bounds& bounds) : out_(out), bounds_(bounds) {
        const double span = std::max(bounds.xmax - bounds.xmin, bounds.ymax - bounds.ymin);
        scale_ = (kCanvas - 2.0 * kMargin) / span;
    }

    double x(double easting) const { return kMargin + (easting - bounds_.xmin) * scale_; }
    // SVG y runs downward
    double y(double northing) const { return kCanvas - kMargin - (northing - bounds_.ymin) * scale_; }

    void circle(const PlanePoint& p, double radius, const char* style) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" %s/>\n",
                      x(p.easting), y(p.northing), radius, style);
        out_ << buf;
    }

    void line(double x1, double y1, double x2, double y2, const char* style) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" %s/>\n", x1, y1, x2,
                      y2, style);
        out_ << buf;
    }

    void plus_marker(const PlanePoint& p, double arm, const char* color) {
        char style[96];
        std::snprintf(style, sizeof style, "stroke=\"%s\" stroke-width=\"2\"", color);
        line(x(p.easting) - arm, y(p.northing), x(p.easting) + arm, y(p.northing), style);
        line(x(p.easting), y(p.northing) - arm, x(p.easting), y(p.northing) + arm, style);
    }

    void cross_marker(const PlanePoint& p, double arm, const char* color) {
        char style[96];
        std::snprintf(style, sizeof style, "stroke=\"%s\" stroke-width=\"2\"", color);
        line(x(p.easting) - arm, y(p.northing) - arm, x(p.easting) + arm, y(p.northing) + arm,
             style);
        line(x(p.easting) - arm, y(p.northing) + arm, x(p.easting) + arm, y(p.northing) - arm,
             style);
    }

    void triangle(const PlanePoint& p, double size, const char* color) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "  <polygon points=\"%.2f,%.2f %.2f,%.2f %.2f,%.2f\" fill=\"none\" "
                      "stroke=\"%s\" stroke-width=\"2\"/>\n",
                      x(p.easting), y(p.northing) - size, x(p.easting) - size,
                      y(p.northing) + size, x(p.easting) + size, y(p.northing) + size, color);
        out_ << buf;
    }

    void text(double px, double py, const std::string& label, const char* style) {
        char buf[384];
        std::snprintf(buf, sizeof buf, "  <text x=\"%.2f\" y=\"%.2f\" %s>%s</text>\n", px, py,
                      style, label.c_str());
        out_ << buf;
    }

private:
    std::ofstream& out_;
    Bounds bounds_;
    double scale_;
};

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::ofstream& out) {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  kCanvas, kCanvas, kCanvas, kCanvas);
    out << buf;
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

void write_figure_panel(const std::filesystem::path& path, const FigurePanel& panel) {
    // region of detail: clouds, markers and landmarks set the frame; cases
    // outside it are simply clipped, as in the published detail panels
    Bounds bounds;
    if (panel.centroid_cloud)
        for (const auto& p : panel.centroid_cloud->points) bounds.add(p);
    if (panel.center_point_cloud)
        for (const auto& p : panel.center_point_cloud->points) bounds.add(p);
    if (panel.centroid_marker) bounds.add(*panel.centroid_marker);
    if (panel.center_point_marker) bounds.add(*panel.center_point_marker);
    for (const auto& lm : panel.landmarks) bounds.add(lm.location);
    if (!bounds.valid() && panel.cases)
        for (const auto& p : panel.cases->points) bounds.add(p);
    if (!bounds.valid()) throw InputError("write_figure_panel: nothing to draw");
    bounds.pad(0.10);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    open_svg(out);

    Canvas canvas(out, bounds);
    if (panel.cases)
        for (const auto& p : panel.cases->points)
            canvas.circle(p, 2.0, "fill=\"black\"");
    if (panel.centroid_cloud)
        for (const auto& p : panel.centroid_cloud->points)
            canvas.circle(p, 3.0, "fill=\"none\" stroke=\"cyan\"");
    if (panel.center_point_cloud)
        for (const auto& p : panel.center_point_cloud->points)
            canvas.circle(p, 3.0, "fill=\"none\" stroke=\"blue\"");
    if (panel.centroid_marker) canvas.plus_marker(*panel.centroid_marker, 7.0, "magenta");
    if (panel.center_point_marker) canvas.cross_marker(*panel.center_point_marker, 6.0, "green");
    for (const auto& lm : panel.landmarks) {
        canvas.triangle(lm.location, 6.0, "red");
        canvas.text(canvas.x(lm.location.easting) + 8.0, canvas.y(lm.location.northing) - 8.0,
                    escape_xml(lm.name), "font-size=\"12\" fill=\"black\"");
    }
    canvas.text(kMargin, kMargin - 14.0, escape_xml(panel.title),
                "font-size=\"15\" fill=\"black\"");

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "  <rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  kMargin, kMargin, kCanvas - 2.0 * kMargin, kCanvas - 2.0 * kMargin);
    out << buf;
    out << "</svg>\n";
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

void write_histogram(const std::filesystem::path& path, std::span<const double> replicates,
                     double observed, const std::string& title) {
    if (replicates.empty()) throw InputError("write_histogram: no replicates");

    double lo = observed, hi = observed;
    for (double r : replicates) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (hi <= lo) hi = lo + 1.0;
    const double span = (hi - lo) * 1.05;
    lo -= (hi - lo) * 0.025;

    constexpr std::size_t kBins = 30;
    std::vector<std::size_t> counts(kBins, 0);
    for (double r : replicates) {
        auto bin = static_cast<std::size_t>((r - lo) / span * kBins);
        counts[std::min(bin, kBins - 1)]++;
    }
    const double peak = static_cast<double>(*std::max_element(counts.begin(), counts.end()));

    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    open_svg(out);

    char buf[256];
    const double plot_w = kCanvas - 2.0 * kMargin;
    const double plot_h = kCanvas - 2.0 * kMargin;
    for (std::size_t b = 0; b < kBins; ++b) {
        if (counts[b] == 0) continue;
        const double h = plot_h * static_cast<double>(counts[b]) / peak;
        std::snprintf(buf, sizeof buf,
                      "  <rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"steelblue\"/>\n",
                      kMargin + plot_w * static_cast<double>(b) / kBins,
                      kCanvas - kMargin - h, plot_w / kBins - 1.0, h);
        out << buf;
    }
    const double ox = kMargin + (observed - lo) / span * plot_w;
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"red\" "
                  "stroke-width=\"2\"/>\n",
                  ox, kMargin, ox, kCanvas - kMargin);
    out << buf;
    std::snprintf(buf, sizeof buf, "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"15\">%s</text>\n",
                  kMargin, kMargin - 14.0, escape_xml(title).c_str());
    out << buf;
    out << "</svg>\n";
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

}  // namespace epi
