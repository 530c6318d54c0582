#ifndef TRANROOTS_SVG_HPP
#define TRANROOTS_SVG_HPP

#include <span>
#include <string>

#include "tranroots/curve.hpp"

namespace tranroots {

struct SvgStyle {
    int width = 800;          // pixels of the longer side of the plot area
    int margin = 50;
    double point_radius = 3.0;
    double stroke_width = 1.0;
};

// Standalone SVG of the polylines and root markers over segments.box.
// Equal aspect ratio, axes with tick labels. Throws InvalidArgument for an empty box.
std::string render_svg(const CurveSegments& segments, std::span<const cplx> points, const SvgStyle& style = {});

// Writes render_svg to out_path; IoError when the file cannot be written.
void emit_svg(const CurveSegments& segments, std::span<const cplx> points, const std::string& out_path,
              const SvgStyle& style = {});

}  // namespace tranroots

#endif  // TRANROOTS_SVG_HPP
