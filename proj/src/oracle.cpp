#include "mgl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mgl/simd/kernels.hpp"

namespace mgl {

AtomicApprox discretize(const MeasureSpec& spec, std::size_t n) {
  if (n < 10) throw std::invalid_argument("discretize: n must be at least 10");
  const ContinuousPart& cont = spec.continuous();
  AtomicApprox out;

  auto add_cells = [&](double lo, double hi) {
    const double mass = cont.value(hi) - cont.value(lo);
    const std::size_t cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * mass)));
    const double width = (hi - lo) / static_cast<double>(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const double x0 = lo + width * static_cast<double>(c);
      const double x1 = c + 1 == cells ? hi : x0 + width;
      out.positions.push_back(0.5 * (x0 + x1));
      out.weights.push_back(cont.value(x1) - cont.value(x0));
      out.original.push_back(0);
    }
  };

  double lo = 0.0;
  for (const auto& atom : spec.atoms()) {
    add_cells(lo, atom.position);
    if (std::abs(out.positions.back() - atom.position) < 1e-12) {
      out.weights.back() += atom.weight;
      out.original.back() = 1;
    } else {
      out.positions.push_back(atom.position);
      out.weights.push_back(atom.weight);
      out.original.push_back(1);
    }
    lo = atom.position;
  }
  if (lo < 1.0) add_cells(lo, 1.0);
  return out;
}

SymmetricProfile laplacian_profile(const AtomicApprox& a) {
  const std::size_t m = a.weights.size();
  if (m < 3) throw std::invalid_argument("laplacian_profile: need at least three atoms");
  SymmetricProfile p{DenseMatrix(m), a.weights};
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t prev = (i + m - 1) % m;
    const double wi = a.weights[i];
    p.matrix(i, i) = -(1.0 / wi + 1.0 / a.weights[prev]) / wi;
    const double off = 1.0 / (wi * std::sqrt(wi * a.weights[next]));
    p.matrix(i, next) = off;
    p.matrix(next, i) = off;
  }
  return p;
}

std::vector<double> apply_discrete_laplacian(const std::vector<double>& w, const std::vector<double>& f) {
  const std::size_t m = w.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t prev = (i + m - 1) % m;
    out[i] = ((f[next] - f[i]) / w[i] - (f[i] - f[prev]) / w[prev]) / w[i];
  }
  return out;
}

namespace {

double energy_quotient(const std::vector<double>& w, const std::vector<double>& v) {
  const std::size_t m = w.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const double fi = v[i] / std::sqrt(w[i]);
    const double fn = v[next] / std::sqrt(w[next]);
    const double grad = (fn - fi) / w[i];
    num += w[i] * grad * grad;
    den += v[i] * v[i];
  }
  return -num / den;
}

// B x using only the cyclic tridiagonal entries.
std::vector<double> cyclic_multiply(const DenseMatrix& b, const std::vector<double>& x) {
  const std::size_t m = x.size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t next = (i + 1) % m;
    const std::size_t prev = (i + m - 1) % m;
    y[i] = b(i, i) * x[i] + b(i, next) * x[next] + b(i, prev) * x[prev];
  }
  return y;
}

double residual_norm(const DenseMatrix& b, const std::vector<double>& x, double lambda) {
  const std::vector<double> bx = cyclic_multiply(b, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (bx[i] - lambda * x[i]) * (bx[i] - lambda * x[i]);
  return std::sqrt(s);
}

// One inverse-iteration step with the cyclic matrix itself, solved by
// Sherman-Morrison around the tridiagonal part.
std::vector<double> polish(const DenseMatrix& b, const std::vector<double>& kernel, std::vector<double> x,
                           double sigma) {
  const auto& K = simd::kernels();
  const std::size_t m = x.size();
  const double corner = b(0, m - 1);
  const double gamma = -(b(0, 0) - sigma);
  Tridiagonal t;
  t.diag.resize(m);
  t.off.resize(m - 1);
  for (std::size_t i = 0; i < m; ++i) t.diag[i] = b(i, i);
  for (std::size_t i = 0; i + 1 < m; ++i) t.off[i] = b(i, i + 1);
  t.diag[0] -= gamma;
  t.diag[m - 1] -= corner * corner / gamma;

  std::vector<double> z(m, 0.0);
  z[0] = gamma;
  z[m - 1] = corner;
  solve_shifted_tridiagonal(t, sigma, x);
  solve_shifted_tridiagonal(t, sigma, z);
  const double vy = x[0] + corner / gamma * x[m - 1];
  const double vz = z[0] + corner / gamma * z[m - 1];
  K.axpy(-vy / (1.0 + vz), z.data(), x.data(), m);

  K.axpy(-K.dot(kernel.data(), x.data(), m), kernel.data(), x.data(), m);
  const double len = std::sqrt(K.dot(x.data(), x.data(), m));
  for (double& xi : x) xi /= len;
  return x;
}

}  // namespace

Eigensystem lowest_eigenpairs(const SymmetricProfile& p, std::size_t m) {
  const auto& K = simd::kernels();
  const std::size_t n = p.matrix.size();
  if (m == 0 || m > n) throw std::invalid_argument("lowest_eigenpairs: need 1 <= m <= size");

  std::vector<double> kernel(n);
  for (std::size_t i = 0; i < n; ++i) kernel[i] = std::sqrt(p.weights[i]);
  const double klen = std::sqrt(K.dot(kernel.data(), kernel.data(), n));
  for (double& x : kernel) x /= klen;

  Eigensystem out;
  out.values.push_back(0.0);
  out.vectors.push_back(kernel);
  if (m == 1) return out;

  // Reflector P with P kernel = -e_0; P B P has a zero first row and column.
  std::vector<double> u = kernel;
  u[0] += 1.0;  // kernel[0] > 0
  const double beta = 2.0 / K.dot(u.data(), u.data(), n);
  DenseMatrix b = p.matrix;
  std::vector<double> q = b.multiply(u);
  for (double& x : q) x *= beta;
  const double half = 0.5 * beta * K.dot(q.data(), u.data(), n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = q[i] - half * u[i];
  for (std::size_t i = 0; i < n; ++i) K.rank2(b.row(i), u[i], w.data(), w[i], u.data(), n);

  DenseMatrix c(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) c(i - 1, j - 1) = 0.5 * (b(i, j) + b(j, i));

  const Eigensystem inner = largest_eigenpairs(c, m - 1);
  for (const auto& y : inner.vectors) {
    std::vector<double> x(n, 0.0);
    std::copy(y.begin(), y.end(), x.begin() + 1);
    const double s = beta * K.dot(u.data(), x.data(), n);
    K.axpy(-s, u.data(), x.data(), n);
    double lambda = energy_quotient(p.weights, x);
    std::vector<double> refined = polish(p.matrix, kernel, x, lambda);
    const double refined_lambda = energy_quotient(p.weights, refined);
    if (std::isfinite(refined_lambda) &&
        residual_norm(p.matrix, refined, refined_lambda) < residual_norm(p.matrix, x, lambda)) {
      x = std::move(refined);
      lambda = refined_lambda;
    }
    out.values.push_back(lambda);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

ErrorReport compare_spectra(const std::vector<double>& analytic, const std::vector<double>& oracle, std::size_t m) {
  ErrorReport r;
  const std::size_t count = std::min({m, analytic.size(), oracle.size()});
  if (count < m) {
    r.length_mismatch = true;
    std::ostringstream msg;
    msg << "requested " << m << " eigenvalues but only " << analytic.size() << " analytic and " << oracle.size()
        << " oracle values are available";
    r.message = msg.str();
  }
  for (std::size_t i = 0; i < count; ++i) {
    r.analytic.push_back(analytic[i]);
    r.oracle.push_back(oracle[i]);
    const double e = std::abs(oracle[i] - analytic[i]) / std::max(1.0, std::abs(analytic[i]));
    r.relative_errors.push_back(e);
    r.max_error = std::max(r.max_error, e);
  }
  return r;
}

ErrorReport compare_spectra(const SpectrumResult& analytic, const std::vector<double>& oracle, std::size_t m) {
  std::vector<double> values;
  for (const auto& e : analytic.pairs)
    for (int i = 0; i < e.multiplicity; ++i) values.push_back(e.lambda);
  return compare_spectra(values, oracle, m);
}

}  // namespace mgl
