#include "mgl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "mgl/simd/kernels.hpp"

namespace mgl {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double norm2(const std::vector<double>& v) {
  return std::sqrt(simd::kernels().dot(v.data(), v.data(), v.size()));
}

}  // namespace

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = simd::kernels().dot(row(i), x.data(), n_);
  return y;
}

double DenseMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

double DenseMatrix::frobenius_norm() const {
  return std::sqrt(simd::kernels().dot(data_.data(), data_.data(), data_.size()));
}

Eigensystem jacobi_eigensystem(DenseMatrix a, const JacobiOptions& opts) {
  const auto& K = simd::kernels();
  const std::size_t n = a.size();
  DenseMatrix vt(n);  // rows are eigenvectors
  for (std::size_t i = 0; i < n; ++i) vt(i, i) = 1.0;
  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  std::size_t sweep = 0;
  double off = off_norm();
  while (off > opts.tolerance * scale) {
    if (sweep == opts.max_sweeps) {
      std::ostringstream msg;
      msg << "Jacobi did not converge in " << sweep << " sweeps (off-diagonal norm " << off << ")";
      throw ConvergenceError(msg.str(), off, sweep);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p) - t * apq;
        const double aqq = a(q, q) + t * apq;
        K.rotate(a.row(p), a.row(q), c, s, n);
        for (std::size_t i = 0; i < n; ++i) {
          const double x = a(i, p);
          const double y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        a(p, p) = app;
        a(q, q) = aqq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        K.rotate(vt.row(p), vt.row(q), c, s, n);
      }
    }
    ++sweep;
    off = off_norm();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  Eigensystem out;
  for (std::size_t i : order) {
    out.values.push_back(a(i, i));
    out.vectors.emplace_back(vt.row(i), vt.row(i) + n);
  }
  return out;
}

HouseholderReduction::HouseholderReduction(DenseMatrix a) {
  const auto& K = simd::kernels();
  const std::size_t n = a.size();
  t_.diag.assign(n, 0.0);
  t_.off.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<double> p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    std::vector<double> v(a.row(k) + k + 1, a.row(k) + n);
    const double xnorm = norm2(v);
    t_.diag[k] = a(k, k);
    if (xnorm == 0.0) {
      t_.off[k] = 0.0;
      reflectors_.emplace_back(m, 0.0);
      betas_.push_back(0.0);
      continue;
    }
    const double alpha = -std::copysign(xnorm, v[0]);
    v[0] -= alpha;
    const double beta = 2.0 / K.dot(v.data(), v.data(), m);
    for (std::size_t i = 0; i < m; ++i) p[i] = beta * K.dot(a.row(k + 1 + i) + k + 1, v.data(), m);
    const double half = 0.5 * beta * K.dot(p.data(), v.data(), m);
    for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - half * v[i];
    for (std::size_t i = 0; i < m; ++i) K.rank2(a.row(k + 1 + i) + k + 1, v[i], w.data(), w[i], v.data(), m);
    t_.off[k] = alpha;
    reflectors_.push_back(std::move(v));
    betas_.push_back(beta);
  }
  if (n >= 2) {
    t_.diag[n - 2] = a(n - 2, n - 2);
    t_.off[n - 2] = a(n - 1, n - 2);
  }
  t_.diag[n - 1] = a(n - 1, n - 1);
}

std::vector<double> HouseholderReduction::back_transform(std::vector<double> y) const {
  const auto& K = simd::kernels();
  const std::size_t n = y.size();
  for (std::size_t r = reflectors_.size(); r-- > 0;) {
    if (betas_[r] == 0.0) continue;
    const std::vector<double>& v = reflectors_[r];
    double* tail = y.data() + (n - v.size());
    const double s = betas_[r] * K.dot(v.data(), tail, v.size());
    K.axpy(-s, v.data(), tail, v.size());
  }
  return y;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, std::size_t max_iterations) {
  const long n = static_cast<long>(t.diag.size());
  std::vector<double> d = t.diag;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (long i = 0; i + 1 < n; ++i) e[static_cast<std::size_t>(i)] = t.off[static_cast<std::size_t>(i)];

  for (long l = 0; l < n; ++l) {
    std::size_t iter = 0;
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iterations) {
          double off = 0.0;
          for (double x : e) off += x * x;
          std::ostringstream msg;
          msg << "implicit QL did not converge for eigenvalue " << l << " (off-diagonal norm " << std::sqrt(off)
              << ")";
          throw ConvergenceError(msg.str(), std::sqrt(off), iter);
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        long i;
        for (i = m - 1; i >= l; --i) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// LU with partial pivoting of T - sigma I; U has three bands.
struct TridiagonalLU {
  std::vector<double> u0, u1, u2, mult;
  std::vector<char> swapped;

  TridiagonalLU(const Tridiagonal& t, double sigma, double tiny) {
    const std::size_t n = t.diag.size();
    u0.assign(n, 0.0);
    u1.assign(n, 0.0);
    u2.assign(n, 0.0);
    mult.assign(n, 0.0);
    swapped.assign(n, 0);
    double c0 = t.diag[0] - sigma;
    double c1 = n > 1 ? t.off[0] : 0.0;
    double c2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double n0 = t.off[i];
      const double n1 = t.diag[i + 1] - sigma;
      const double n2 = i + 2 < n ? t.off[i + 1] : 0.0;
      if (std::abs(c0) >= std::abs(n0)) {
        if (c0 == 0.0) c0 = tiny;
        const double l = n0 / c0;
        u0[i] = c0;
        u1[i] = c1;
        u2[i] = c2;
        mult[i] = l;
        c0 = n1 - l * c1;
        c1 = n2 - l * c2;
      } else {
        const double l = c0 / n0;
        u0[i] = n0;
        u1[i] = n1;
        u2[i] = n2;
        mult[i] = l;
        swapped[i] = 1;
        c0 = c1 - l * n1;
        c1 = c2 - l * n2;
      }
      c2 = 0.0;
    }
    u0[n - 1] = c0 == 0.0 ? tiny : c0;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= mult[i] * b[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = b[i];
      if (i + 1 < n) s -= u1[i] * b[i + 1];
      if (i + 2 < n) s -= u2[i] * b[i + 2];
      b[i] = s / u0[i];
    }
  }
};

double infinity_norm(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(t.diag[i]);
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    tnorm = std::max(tnorm, r);
  }
  return tnorm;
}

}  // namespace

void solve_shifted_tridiagonal(const Tridiagonal& t, double sigma, std::vector<double>& b) {
  const double tiny = std::max(eps * infinity_norm(t), std::numeric_limits<double>::min());
  TridiagonalLU(t, sigma, tiny).solve(b);
}

std::vector<std::vector<double>> tridiagonal_eigenvectors(const Tridiagonal& t, const std::vector<double>& values) {
  const auto& K = simd::kernels();
  const std::size_t n = t.diag.size();
  const double tnorm = infinity_norm(t);
  const double tiny = std::max(eps * tnorm, std::numeric_limits<double>::min());
  const double cluster = 1e-3 * tnorm;

  std::vector<std::vector<double>> out;
  std::size_t cluster_start = 0;
  double prev_sigma = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    double sigma = values[j];
    if (j > 0 && std::abs(values[j] - values[j - 1]) > cluster) cluster_start = j;
    // separate coincident shifts so the solves produce different vectors
    if (j > cluster_start && std::abs(sigma - prev_sigma) < 10.0 * eps * tnorm) sigma = prev_sigma + 10.0 * eps * tnorm;
    prev_sigma = sigma;

    const TridiagonalLU lu(t, sigma, tiny);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + j);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& xi : x) xi = dist(rng);
    for (int it = 0; it < 4; ++it) {
      lu.solve(x);
      for (std::size_t c = cluster_start; c < j; ++c) K.axpy(-K.dot(out[c].data(), x.data(), n), out[c].data(), x.data(), n);
      const double len = norm2(x);
      for (double& xi : x) xi /= len;
    }
    out.push_back(std::move(x));
  }
  return out;
}

Eigensystem largest_eigenpairs(const DenseMatrix& a, std::size_t m) {
  const std::size_t n = a.size();
  if (m == 0 || m > n) throw std::invalid_argument("largest_eigenpairs: need 1 <= m <= n");
  const HouseholderReduction h(a);
  std::vector<double> all = tridiagonal_eigenvalues(h.tridiagonal());
  Eigensystem out;
  out.values.assign(all.rbegin(), all.rbegin() + static_cast<long>(m));
  for (auto& y : tridiagonal_eigenvectors(h.tridiagonal(), out.values)) out.vectors.push_back(h.back_transform(std::move(y)));
  return out;
}

template <typename T>
BasicLu<T>::BasicLu(std::size_t n, std::vector<T> rows) : n_(n), lu_(std::move(rows)), perm_(n) {
  if (lu_.size() != n * n) throw std::invalid_argument("BasicLu: matrix data does not match the size");
  auto at = [&](std::size_t i, std::size_t j) -> T& { return lu_[i * n + j]; };
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  T scale = 0;
  for (const T& x : lu_) scale = std::max(scale, std::abs(x));
  const T tiny = std::numeric_limits<T>::epsilon() * std::max(scale, T(1e-300));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (p != k) {
      std::swap_ranges(lu_.begin() + k * n, lu_.begin() + (k + 1) * n, lu_.begin() + p * n);
      std::swap(perm_[k], perm_[p]);
      parity_ = -parity_;
    }
    if (std::abs(at(k, k)) < tiny) at(k, k) = at(k, k) < 0 ? -tiny : tiny;
    const T pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = at(i, k) / pivot;
      at(i, k) = l;
      if (l == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= l * at(k, j);
    }
  }
}

template <typename T>
void BasicLu<T>::solve(std::vector<T>& b) const {
  const std::size_t n = n_;
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_[i * n + j] * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_[i * n + j] * x[j];
    x[i] /= lu_[i * n + i];
  }
  b = std::move(x);
}

template <typename T>
T BasicLu<T>::determinant() const {
  T d = static_cast<T>(parity_);
  for (std::size_t i = 0; i < n_; ++i) d *= lu_[i * n_ + i];
  return d;
}

template class BasicLu<double>;
template class BasicLu<long double>;

}  // namespace mgl
