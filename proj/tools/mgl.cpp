// mgl: spectra of measure-geometric Laplacians from the command line.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgl/analysis.hpp"
#include "mgl/measure_io.hpp"
#include "mgl/monodromy.hpp"
#include "mgl/oracle.hpp"
#include "mgl/report.hpp"
#include "mgl/svg.hpp"
#include "mgl/transforms.hpp"

namespace {

using mgl::format_number;

struct Common {
  std::string measure;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--measure", c.measure, "measure description (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--json", c.json, "print a JSON report on stdout");
}

// Spectrum of the canonical form with at least `count` eigenvalues.
mgl::SpectrumResult spectrum_with_count(const mgl::MeasureSpec& canonical, std::size_t count) {
  const double L = canonical.continuous().total_mass();
  double b_max = std::numbers::pi * (static_cast<double>(count) + 2.0) / L;
  mgl::SpectrumResult s = mgl::find_spectrum(canonical, b_max);
  while (s.count < count) {
    b_max *= 2.0;
    s = mgl::find_spectrum(canonical, b_max);
  }
  return s;
}

int run_spectrum(const Common& c, double bmax, double tol, const std::string& out) {
  const mgl::MeasureSpec spec = mgl::load_measure(c.measure);
  const mgl::CanonicalForm cf = mgl::to_canonical(spec);
  mgl::SpectrumOptions opts;
  opts.tol = tol;
  const mgl::SpectrumResult s = mgl::find_spectrum(cf.spec, bmax, opts);
  mgl::write_text(out, mgl::spectrum_csv(s, cf.spec.atom_count()));
  if (c.json) {
    nlohmann::json doc = mgl::spectrum_json(s);
    doc["measure"] = mgl::measure_to_json(spec);
    doc["canonical_shift"] = cf.shift;
    doc["csv"] = out;
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << s.pairs.size() << " distinct eigenvalues (" << s.count << " with multiplicity) for b in [0, "
              << format_number(bmax) << "] written to " << out << '\n';
    if (!s.weyl_ok) std::cout << "warning: " << s.weyl_message << '\n';
  }
  return 0;
}

int run_oracle(const Common& c, std::size_t n, std::size_t m, const std::string& out) {
  const mgl::MeasureSpec spec = mgl::load_measure(c.measure);
  const mgl::MeasureSpec canonical = mgl::to_canonical(spec).spec;
  const mgl::SpectrumResult s = spectrum_with_count(canonical, m);
  const mgl::SymmetricProfile p = mgl::laplacian_profile(mgl::discretize(spec, n));
  const mgl::Eigensystem es = mgl::lowest_eigenpairs(p, std::min(m, p.matrix.size()));
  const mgl::ErrorReport r = mgl::compare_spectra(s, es.values, m);
  mgl::write_text(out, mgl::compare_csv(r));
  if (c.json) {
    std::cout << mgl::compare_json(r, n, p.matrix.size()).dump(2) << '\n';
  } else {
    std::cout << "matrix size " << p.matrix.size() << ", max relative error " << format_number(r.max_error)
              << " over " << r.relative_errors.size() << " eigenvalues, written to " << out << '\n';
    if (r.length_mismatch) std::cout << "warning: " << r.message << '\n';
  }
  return 0;
}

int run_count(const Common& c, double x, const std::string& sweep) {
  const mgl::MeasureSpec spec = mgl::load_measure(c.measure);
  std::vector<double> xs;
  if (x > 0.0) xs.push_back(x);
  std::stringstream ss(sweep);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) xs.push_back(std::stod(item));
  if (xs.empty()) throw CLI::ValidationError("count", "give --x or --sweep");
  const std::vector<mgl::CountingSample> samples = mgl::counting_sweep(spec, xs);
  if (c.json) {
    std::cout << mgl::counting_json(samples).dump(2) << '\n';
  } else {
    std::cout << "x,count,ratio\n";
    for (const auto& s : samples) std::cout << format_number(s.x) << ',' << s.count << ',' << format_number(s.ratio) << '\n';
  }
  return 0;
}

int run_plot(const Common& c, long k, const std::string& svg) {
  const mgl::MeasureSpec spec = mgl::load_measure(c.measure);
  const mgl::MeasureSpec canonical = mgl::to_canonical(spec).spec;
  std::size_t want = static_cast<std::size_t>(2 * std::abs(k) + 4);
  for (int attempt = 0; attempt < 8; ++attempt, want *= 2) {
    const mgl::SpectrumResult s = spectrum_with_count(canonical, want);
    for (const auto& e : s.pairs) {
      if (e.k != k) continue;
      const mgl::PiecewiseSine f = mgl::to_original_coordinates(e.fn(), spec);
      mgl::PlotOptions opts;
      opts.title = (s.closed_form_labels ? "k = " : "rank ") + std::to_string(k) + ", b = " + format_number(e.b);
      mgl::render_eigenfunction(f, spec, svg, opts);
      if (c.json) {
        nlohmann::json segs = nlohmann::json::array();
        for (const auto& seg : f.segments) segs.push_back({{"a", seg.amplitude}, {"gamma", seg.phase}});
        std::cout << nlohmann::json{{"k", e.k}, {"b", e.b}, {"lambda", e.lambda}, {"multiplicity", e.multiplicity},
                                    {"segments", segs}, {"svg", svg}}
                         .dump(2)
                  << '\n';
      } else {
        std::cout << "eigenfunction " << k << " (b = " << format_number(e.b) << ") written to " << svg << '\n';
      }
      return 0;
    }
  }
  std::cerr << "error: no eigenvalue with index " << k << '\n';
  return 1;
}

int run_check(const Common& c) {
  const mgl::MeasureSpec spec = mgl::load_measure(c.measure);
  const mgl::RunReport r = mgl::run_invariant_suite(spec);
  if (c.json) {
    std::cout << mgl::run_report_json(r).dump(2) << '\n';
  } else {
    for (const auto& i : r.invariants)
      std::cout << (i.passed ? "PASS " : "FAIL ") << i.name << ": " << i.detail << '\n';
    std::cout << (r.all_passed() ? "all invariants hold" : "some invariants failed") << '\n';
  }
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of measure-geometric Laplacians"};
  app.require_subcommand(1);

  Common spectrum_c, oracle_c, count_c, plot_c, check_c;
  double bmax = 0.0, tol = 1e-12, x = 0.0;
  std::size_t grid = 0, m = 0;
  long k = 0;
  std::string out, sweep, svg;

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues and eigenfunctions up to a frequency cutoff");
  add_common(spectrum, spectrum_c);
  spectrum->add_option("--bmax", bmax, "largest frequency b")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--tol", tol, "root width")->check(CLI::PositiveNumber);
  spectrum->add_option("--out", out, "CSV output")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "compare with the discrete cycle-graph Laplacian");
  add_common(oracle, oracle_c);
  oracle->add_option("-n", grid, "grid cells per unit mass")->required()->check(CLI::Range(10, 1000000));
  oracle->add_option("-m", m, "number of eigenvalues")->required()->check(CLI::Range(1, 1000000));
  oracle->add_option("--out", out, "CSV output")->required();

  CLI::App* count = app.add_subcommand("count", "eigenvalue counting function");
  add_common(count, count_c);
  count->add_option("--x", x, "threshold")->check(CLI::PositiveNumber);
  count->add_option("--sweep", sweep, "comma-separated thresholds");

  CLI::App* plot = app.add_subcommand("plot", "SVG of one eigenfunction");
  add_common(plot, plot_c);
  plot->add_option("--k", k, "closed-form index, or rank when none applies")->required();
  plot->add_option("--svg", svg, "SVG output")->required();

  CLI::App* check = app.add_subcommand("check", "run the invariant suite");
  add_common(check, check_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) return run_spectrum(spectrum_c, bmax, tol, out);
    if (*oracle) return run_oracle(oracle_c, grid, m, out);
    if (*count) return run_count(count_c, x, sweep);
    if (*plot) return run_plot(plot_c, k, svg);
    if (*check) return run_check(check_c);
  } catch (const mgl::MeasureError& e) {
    std::cerr << "invalid measure: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
