#include "mgl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mgl/report.hpp"

namespace mgl {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string eigenfunction_svg(const PiecewiseSine& f, const MeasureSpec& spec, const PlotOptions& opts) {
  if (f.segments.size() != spec.interval_count())
    throw std::invalid_argument("eigenfunction_svg: segment count does not match the measure");
  const ContinuousPart& cont = spec.continuous();
  const double margin = 50.0;
  const double W = opts.width;
  const double H = opts.height;

  std::vector<double> bounds{0.0};
  for (const auto& a : spec.atoms()) bounds.push_back(a.position);
  if (!spec.is_canonical()) bounds.push_back(1.0);

  // sample every interval once to fix the vertical scale
  std::vector<std::vector<std::pair<double, double>>> curves;
  double ymax = 1.0;
  for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
    std::vector<std::pair<double, double>> pts;
    const int S = std::max(2, opts.samples_per_segment);
    for (int i = 0; i <= S; ++i) {
      const double x = bounds[j] + (bounds[j + 1] - bounds[j]) * static_cast<double>(i) / S;
      const double y = f.segment_value(j, cont.value(x));
      pts.emplace_back(x, y);
      ymax = std::max(ymax, std::abs(y));
    }
    curves.push_back(std::move(pts));
  }
  ymax *= 1.1;
  auto px = [&](double x) { return margin + x * (W - 2.0 * margin); };
  auto py = [&](double y) { return H / 2.0 - y * (H / 2.0 - margin) / ymax; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    svg << "<text x=\"" << num(W / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << opts.title << "</text>\n";

  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << num(px(0.0)) << "\" y1=\"" << num(py(0.0)) << "\" x2=\"" << num(px(1.0)) << "\" y2=\""
      << num(py(0.0)) << "\"/>\n";
  svg << "<line x1=\"" << num(px(0.0)) << "\" y1=\"" << num(margin / 2.0) << "\" x2=\"" << num(px(0.0))
      << "\" y2=\"" << num(H - margin / 2.0) << "\"/>\n";
  for (double y : {1.0, -1.0})
    svg << "<line x1=\"" << num(px(0.0) - 5.0) << "\" y1=\"" << num(py(y)) << "\" x2=\"" << num(px(0.0) + 5.0)
        << "\" y2=\"" << num(py(y)) << "\"/>\n";
  for (const auto& a : spec.atoms())
    svg << "<line x1=\"" << num(px(a.position)) << "\" y1=\"" << num(py(0.0) - 5.0) << "\" x2=\""
        << num(px(a.position)) << "\" y2=\"" << num(py(0.0) + 5.0) << "\"/>\n";
  svg << "</g>\n";

  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << num(px(0.0) - 8.0) << "\" y=\"" << num(py(1.0) + 4.0) << "\" text-anchor=\"end\">1</text>\n";
  svg << "<text x=\"" << num(px(0.0) - 8.0) << "\" y=\"" << num(py(-1.0) + 4.0)
      << "\" text-anchor=\"end\">-1</text>\n";
  for (const auto& a : spec.atoms())
    svg << "<text x=\"" << num(px(a.position)) << "\" y=\"" << num(py(0.0) + 18.0) << "\" text-anchor=\"middle\">"
        << label(a.position) << "</text>\n";
  svg << "</g>\n";

  svg << "<g fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"1.6\">\n";
  for (const auto& pts : curves) {
    svg << "<polyline points=\"";
    for (const auto& [x, y] : pts) svg << num(px(x)) << ',' << num(py(y)) << ' ';
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  // jumps: value at the atom (filled), right limit (open), dashed link
  auto jump = [&](double x, double value, double right) {
    svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(py(value)) << "\" x2=\"" << num(px(x)) << "\" y2=\""
        << num(py(right)) << "\" stroke=\"#1f4e9a\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(right))
        << "\" r=\"4\" fill=\"white\" stroke=\"#1f4e9a\" stroke-width=\"1.4\"/>\n";
    svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(value)) << "\" r=\"4\" fill=\"#1f4e9a\"/>\n";
  };
  const double start = f.segment_value(0, 0.0);
  svg << "<circle cx=\"" << num(px(0.0)) << "\" cy=\"" << num(py(start))
      << "\" r=\"4\" fill=\"white\" stroke=\"#1f4e9a\" stroke-width=\"1.4\"/>\n";
  for (const auto& a : spec.atoms()) jump(a.position, f.evaluate(a.position, spec), f.right_limit(a.position, spec));
  svg << "</svg>\n";
  return svg.str();
}

void render_eigenfunction(const PiecewiseSine& f, const MeasureSpec& spec, const std::string& path,
                          const PlotOptions& opts) {
  write_text(path, eigenfunction_svg(f, spec, opts));
}

}  // namespace mgl
