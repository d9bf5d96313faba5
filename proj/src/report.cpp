#include "mgl/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mgl/measure_io.hpp"

namespace mgl {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string spectrum_csv(const SpectrumResult& s, std::size_t atom_count) {
  std::ostringstream out;
  out << "k_or_rank,b,lambda_minus_delta,multiplicity";
  for (std::size_t j = 1; j <= atom_count; ++j) out << ",a_" << j;
  for (std::size_t j = 1; j <= atom_count; ++j) out << ",gamma_" << j;
  out << '\n';
  for (const auto& e : s.pairs) {
    for (const auto& f : e.basis) {
      out << e.k << ',' << format_number(e.b) << ',' << format_number(e.b * e.b) << ',' << e.multiplicity;
      for (const auto& seg : f.segments) out << ',' << format_number(seg.amplitude);
      for (const auto& seg : f.segments) out << ',' << format_number(seg.phase);
      out << '\n';
    }
  }
  return out.str();
}

std::string compare_csv(const ErrorReport& r) {
  std::ostringstream out;
  out << "index,analytic_lambda_minus_delta,oracle_lambda_minus_delta,relative_error\n";
  for (std::size_t i = 0; i < r.relative_errors.size(); ++i)
    out << i << ',' << format_number(-r.analytic[i]) << ',' << format_number(-r.oracle[i]) << ','
        << format_number(r.relative_errors[i]) << '\n';
  return out.str();
}

namespace {

nlohmann::json sine_json(const PiecewiseSine& f) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : f.segments) segs.push_back({{"a", s.amplitude}, {"gamma", s.phase}});
  return {{"b", f.frequency}, {"segments", segs}};
}

}  // namespace

nlohmann::json spectrum_json(const SpectrumResult& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& e : s.pairs) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& f : e.basis) basis.push_back(sine_json(f));
    pairs.push_back({{"k", e.k},
                     {"b", e.b},
                     {"lambda", e.lambda},
                     {"lambda_minus_delta", e.b * e.b},
                     {"multiplicity", e.multiplicity},
                     {"eigenfunctions", basis}});
  }
  return {{"b_max", s.b_max},
          {"step", s.step},
          {"evaluations", s.evaluations},
          {"refinements", s.refinements},
          {"labels", s.closed_form_labels ? "closed_form_index" : "rank"},
          {"count", s.count},
          {"weyl", {{"expected", s.weyl_expected}, {"slack", s.weyl_slack}, {"ok", s.weyl_ok}, {"message", s.weyl_message}}},
          {"eigenpairs", pairs}};
}

nlohmann::json compare_json(const ErrorReport& r, std::size_t grid, std::size_t matrix_size) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.relative_errors.size(); ++i)
    rows.push_back({{"index", i},
                    {"analytic_lambda", r.analytic[i]},
                    {"oracle_lambda", r.oracle[i]},
                    {"relative_error", r.relative_errors[i]}});
  return {{"grid", grid},
          {"matrix_size", matrix_size},
          {"max_relative_error", r.max_error},
          {"length_mismatch", r.length_mismatch},
          {"message", r.message},
          {"rows", rows}};
}

nlohmann::json counting_json(const std::vector<CountingSample>& samples) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : samples) rows.push_back({{"x", c.x}, {"count", c.count}, {"ratio", c.ratio}});
  return {{"samples", rows}};
}

nlohmann::json run_report_json(const RunReport& r) {
  nlohmann::json inv = nlohmann::json::array();
  for (const auto& i : r.invariants)
    inv.push_back({{"name", i.name}, {"passed", i.passed}, {"value", i.value}, {"bound", i.bound}, {"detail", i.detail}});
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& [name, t] : r.timings) timings[name] = t;
  return {{"measure", measure_to_json(r.measure)},
          {"spectrum", spectrum_json(r.spectrum)},
          {"invariants", inv},
          {"all_passed", r.all_passed()},
          {"timings_seconds", timings}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed to write " + path);
}

}  // namespace mgl
