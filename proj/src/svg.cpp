#include "tranroots/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tranroots/errors.hpp"

namespace tranroots {

namespace {

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string px(double v)
{
    return fmt("%.3f", v);
}

double tick_step(double range)
{
    const double raw = range / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    if (f < 1.5)
        return mag;
    if (f < 3.5)
        return 2 * mag;
    if (f < 7.5)
        return 5 * mag;
    return 10 * mag;
}

std::string tick_label(double v, double step)
{
    if (std::abs(v) < step * 1e-9)
        v = 0;
    return fmt("%g", v);
}

struct Frame {
    Box box;
    double scale;   // pixels per unit, same on both axes
    double left, top;
    double plot_w, plot_h;

    double x(double re) const { return left + (re - box.re_min) * scale; }
    double y(double im) const { return top + (box.im_max - im) * scale; }
};

}  // namespace

std::string render_svg(const CurveSegments& segments, std::span<const cplx> points, const SvgStyle& style)
{
    const Box& b = segments.box;
    if (!(b.width() > 0) || !(b.height() > 0) || !std::isfinite(b.width()) || !std::isfinite(b.height()))
        throw InvalidArgument("render_svg: degenerate box");

    Frame fr;
    fr.box = b;
    fr.scale = style.width / std::max(b.width(), b.height());
    fr.plot_w = b.width() * fr.scale;
    fr.plot_h = b.height() * fr.scale;
    fr.left = style.margin;
    fr.top = style.margin / 2.0;
    const double total_w = fr.plot_w + 1.5 * style.margin;
    const double total_h = fr.plot_h + 1.5 * style.margin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(total_w) << "\" height=\"" << px(total_h)
       << "\" viewBox=\"0 0 " << px(total_w) << ' ' << px(total_h) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << px(total_w) << "\" height=\"" << px(total_h)
       << "\" fill=\"white\"/>\n";
    os << "<defs><clipPath id=\"plot\"><rect x=\"" << px(fr.left) << "\" y=\"" << px(fr.top) << "\" width=\""
       << px(fr.plot_w) << "\" height=\"" << px(fr.plot_h) << "\"/></clipPath></defs>\n";

    // frame and ticks
    os << "<g stroke=\"#444\" stroke-width=\"1\" fill=\"none\">\n";
    os << "<rect x=\"" << px(fr.left) << "\" y=\"" << px(fr.top) << "\" width=\"" << px(fr.plot_w)
       << "\" height=\"" << px(fr.plot_h) << "\"/>\n";
    if (b.im_min <= 0 && b.im_max >= 0)
        os << "<line x1=\"" << px(fr.x(b.re_min)) << "\" y1=\"" << px(fr.y(0)) << "\" x2=\"" << px(fr.x(b.re_max))
           << "\" y2=\"" << px(fr.y(0)) << "\" stroke=\"#bbb\"/>\n";
    if (b.re_min <= 0 && b.re_max >= 0)
        os << "<line x1=\"" << px(fr.x(0)) << "\" y1=\"" << px(fr.y(b.im_min)) << "\" x2=\"" << px(fr.x(0))
           << "\" y2=\"" << px(fr.y(b.im_max)) << "\" stroke=\"#bbb\"/>\n";
    os << "</g>\n";

    std::ostringstream labels;
    os << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    const double sx = tick_step(b.width());
    for (long i = static_cast<long>(std::ceil(b.re_min / sx)); i * sx <= b.re_max; ++i) {
        const double v = i * sx;
        const double X = fr.x(v), Y = fr.top + fr.plot_h;
        os << "<line x1=\"" << px(X) << "\" y1=\"" << px(Y) << "\" x2=\"" << px(X) << "\" y2=\"" << px(Y + 5)
           << "\"/>\n";
        labels << "<text x=\"" << px(X) << "\" y=\"" << px(Y + 18) << "\" text-anchor=\"middle\">"
               << tick_label(v, sx) << "</text>\n";
    }
    const double sy = tick_step(b.height());
    for (long i = static_cast<long>(std::ceil(b.im_min / sy)); i * sy <= b.im_max; ++i) {
        const double v = i * sy;
        const double X = fr.left, Y = fr.y(v);
        os << "<line x1=\"" << px(X - 5) << "\" y1=\"" << px(Y) << "\" x2=\"" << px(X) << "\" y2=\"" << px(Y)
           << "\"/>\n";
        labels << "<text x=\"" << px(X - 8) << "\" y=\"" << px(Y + 4) << "\" text-anchor=\"end\">"
               << tick_label(v, sy) << "</text>\n";
    }
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n" << labels.str() << "</g>\n";

    os << "<g clip-path=\"url(#plot)\" stroke=\"#1f5fbf\" stroke-width=\"" << px(style.stroke_width)
       << "\" fill=\"none\" stroke-linejoin=\"round\">\n";
    for (const auto& poly : segments.segments) {
        if (poly.size() < 2)
            continue;
        os << "<polyline points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (i)
                os << ' ';
            os << px(fr.x(poly[i].real())) << ',' << px(fr.y(poly[i].imag()));
        }
        os << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g fill=\"#c0262d\" stroke=\"none\">\n";
    for (const cplx& z : points) {
        if (!b.contains(z))
            continue;
        os << "<circle cx=\"" << px(fr.x(z.real())) << "\" cy=\"" << px(fr.y(z.imag())) << "\" r=\""
           << px(style.point_radius) << "\"/>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

void emit_svg(const CurveSegments& segments, std::span<const cplx> points, const std::string& out_path,
              const SvgStyle& style)
{
    const std::string doc = render_svg(segments, points, style);
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + out_path + " for writing");
    f << doc;
    f.close();
    if (!f)
        throw IoError("failed writing " + out_path);
}

}  // namespace tranroots
