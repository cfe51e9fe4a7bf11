#include "qsd/app.hpp"

#include "qsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qsd::app {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    double plot_w() const { return kWidth - kLeft - kRight; }
    double plot_h() const { return kHeight - kTop - kBottom; }
    double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w(); }
    double py(double y) const { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h(); }
};

Frame make_frame(double x_lo, double x_hi, double y_lo, double y_hi) {
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    if (!(y_hi > y_lo)) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    return {x_lo, x_hi, y_lo - pad, y_hi + pad};
}

void header(std::ostringstream& os, const std::string& title) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& x_label, const std::string& y_label) {
    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(f.plot_w())
       << "\" height=\"" << num(f.plot_h()) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
        const double yv = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
        const double px = f.px(xv);
        const double py = f.py(yv);
        os << "<line x1=\"" << num(px) << "\" y1=\"" << num(kTop + f.plot_h()) << "\" x2=\"" << num(px)
           << "\" y2=\"" << num(kTop + f.plot_h() + 5) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << num(px) << "\" y=\"" << num(kTop + f.plot_h() + 20)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(xv) << "</text>\n"
           << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft) << "\" y2=\""
           << num(py) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(yv) << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + f.plot_w() / 2) << "\" y=\"" << num(kHeight - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(x_label)
       << "</text>\n"
       << "<text x=\"18\" y=\"" << num(kTop + f.plot_h() / 2) << "\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " << num(kTop + f.plot_h() / 2)
       << ")\">" << xml_escape(y_label) << "</text>\n";
}

void polyline(std::ostringstream& os, const Frame& f, const std::vector<double>& x, const std::vector<double>& y,
              const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ' ';
        os << num(f.px(x[i])) << ',' << num(f.py(y[i]));
    }
    os << "\"/>\n";
}

// Diverging map with zero pinned to white: red for positive, blue for negative.
std::string diverging(double t) {
    t = std::clamp(t, -1.0, 1.0);
    const double a = std::abs(t);
    const auto mix = [&](double from, double to) { return static_cast<int>(std::lround(from + (to - from) * a)); };
    char buf[32];
    if (t >= 0.0) {
        std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", mix(255, 178), mix(255, 24), mix(255, 43));
    } else {
        std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", mix(255, 33), mix(255, 102), mix(255, 172));
    }
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace

std::string curve_svg(const Curve& c) {
    if (c.abscissa.empty() || c.abscissa.size() != c.ordinate.size()) {
        throw InvalidArgument("curve plot needs matching, non-empty abscissa and ordinate");
    }
    const auto [ylo, yhi] = std::minmax_element(c.ordinate.begin(), c.ordinate.end());
    const Frame f = make_frame(c.abscissa.front(), c.abscissa.back(), std::min(*ylo, 0.0), std::max(*yhi, 1.0));
    std::ostringstream os;
    header(os, to_string(c.kind) + " curve");
    axes(os, f, "ln c", "CDF");
    polyline(os, f, c.abscissa, c.ordinate, kPalette[0]);
    os << "</svg>\n";
    return os.str();
}

std::string phase_svg(const PhaseFunction& pf) {
    const auto& gx = pf.spec().x;
    const auto& gy = pf.spec().y;
    double vmax = 0.0;
    for (double v : pf.values()) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;

    const Frame f{gx.lo(), gx.hi(), gy.lo(), gy.hi()};
    std::ostringstream os;
    header(os, "Wigner function f(x, y)");
    const std::size_t sx = std::max<std::size_t>(1, (pf.nx() + 127) / 128);
    const std::size_t sy = std::max<std::size_t>(1, (pf.ny() + 127) / 128);
    const double cw = f.plot_w() / std::ceil(static_cast<double>(pf.nx()) / sx);
    const double ch = f.plot_h() / std::ceil(static_cast<double>(pf.ny()) / sy);
    for (std::size_t ix = 0, cx = 0; ix < pf.nx(); ix += sx, ++cx) {
        for (std::size_t iy = 0, cy = 0; iy < pf.ny(); iy += sy, ++cy) {
            const double v = pf.at(ix, iy);
            os << "<rect" << (v < -1e-9 * vmax ? " class=\"neg\"" : "") << " x=\"" << num(kLeft + cx * cw)
               << "\" y=\"" << num(kTop + f.plot_h() - (cy + 1) * ch) << "\" width=\"" << num(cw + 0.3)
               << "\" height=\"" << num(ch + 0.3) << "\" fill=\"" << diverging(v / vmax) << "\"/>\n";
        }
    }
    axes(os, f, "x (log buying price)", "y (log selling price)");
    // Colour bar
    const double bar_x = kWidth - kRight + 8;
    for (int i = 0; i < 20; ++i) {
        const double t = 1.0 - 2.0 * (i + 0.5) / 20.0;
        os << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(kTop + i * f.plot_h() / 20.0) << "\" width=\"10\" "
           << "height=\"" << num(f.plot_h() / 20.0 + 0.3) << "\" fill=\"" << diverging(t) << "\"/>\n";
    }
    os << "<text x=\"" << num(bar_x) << "\" y=\"" << num(kTop - 4) << "\" font-family=\"sans-serif\" "
       << "font-size=\"10\">" << tick(vmax) << "</text>\n"
       << "<text x=\"" << num(bar_x) << "\" y=\"" << num(kTop + f.plot_h() + 12) << "\" font-family=\"sans-serif\" "
       << "font-size=\"10\">" << tick(-vmax) << "</text>\n"
       << "</svg>\n";
    return os.str();
}

std::string line_plot_svg(const LinePlot& p) {
    if (p.x.empty() || p.series.empty()) throw InvalidArgument("line plot needs data");
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (const auto& [name, ys] : p.series) {
        if (ys.size() != p.x.size()) throw InvalidArgument("series '" + name + "' length mismatch");
        for (double y : ys) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    const Frame f = make_frame(p.x.front(), p.x.back(), lo, hi);
    std::ostringstream os;
    header(os, p.title);
    axes(os, f, p.x_label, p.y_label);
    for (std::size_t s = 0; s < p.series.size(); ++s) {
        const char* color = kPalette[s % std::size(kPalette)];
        polyline(os, f, p.x, p.series[s].second, color);
        os << "<text x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16 + 14.0 * s) << "\" fill=\"" << color
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(p.series[s].first) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void render_plot(const Curve& data, const std::filesystem::path& path) { write_file(path, curve_svg(data)); }
void render_plot(const PhaseFunction& data, const std::filesystem::path& path) { write_file(path, phase_svg(data)); }
void render_plot(const LinePlot& data, const std::filesystem::path& path) { write_file(path, line_plot_svg(data)); }

}  // namespace qsd::app
