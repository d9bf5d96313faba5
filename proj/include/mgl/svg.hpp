#pragma once

#include <string>

#include "mgl/measure.hpp"
#include "mgl/piecewise.hpp"

namespace mgl {

struct PlotOptions {
  int width = 640;
  int height = 400;
  int samples_per_segment = 240;
  std::string title;
};

/// SVG drawing of f on (0,1]: one curve per interval, a filled dot at the
/// value f(z_i), an open circle at the right limit, and a dashed segment
/// joining them. Tick marks at the atom positions and at y = +-1.
std::string eigenfunction_svg(const PiecewiseSine& f, const MeasureSpec& spec, const PlotOptions& opts = {});

/// Writes eigenfunction_svg to `path`; throws std::runtime_error when the file
/// cannot be written.
void render_eigenfunction(const PiecewiseSine& f, const MeasureSpec& spec, const std::string& path,
                          const PlotOptions& opts = {});

}  // namespace mgl
