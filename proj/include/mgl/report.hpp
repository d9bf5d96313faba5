#pragma once

// CSV and JSON emission. Numbers are printed with 15 significant digits.
// Tables report eigenvalues of -Delta_eta (non-negative); JSON additionally
// carries lambda of Delta_eta.

#include <string>
#include <vector>

#include "json.hpp"

#include "mgl/analysis.hpp"
#include "mgl/measure.hpp"
#include "mgl/monodromy.hpp"
#include "mgl/oracle.hpp"

namespace mgl {

std::string format_number(double x);

/// k_or_rank,b,lambda_minus_delta,multiplicity,a_1..a_N,gamma_1..gamma_N with
/// one row per basis function.
std::string spectrum_csv(const SpectrumResult& s, std::size_t atom_count);

/// index,analytic_lambda_minus_delta,oracle_lambda_minus_delta,relative_error
std::string compare_csv(const ErrorReport& r);

nlohmann::json spectrum_json(const SpectrumResult& s);
nlohmann::json compare_json(const ErrorReport& r, std::size_t grid, std::size_t matrix_size);
nlohmann::json counting_json(const std::vector<CountingSample>& samples);
nlohmann::json run_report_json(const RunReport& r);

/// Writes text to a file; throws std::runtime_error when it cannot.
void write_text(const std::string& path, const std::string& text);

}  // namespace mgl
