#pragma once

// Dense symmetric eigensolvers: cyclic Jacobi, and Householder reduction to
// tridiagonal form followed by implicit QL for eigenvalues and inverse
// iteration for selected eigenvectors.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgl {

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double off_diagonal_norm, std::size_t iterations)
      : std::runtime_error(what), off_diagonal_norm(off_diagonal_norm), iterations(iterations) {}

  double off_diagonal_norm;
  std::size_t iterations;
};

/// Row-major dense square matrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double* row(std::size_t i) { return data_.data() + i * n_; }
  const double* row(std::size_t i) const { return data_.data() + i * n_; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  double max_asymmetry() const;
  double frobenius_norm() const;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Eigensystem {
  std::vector<double> values;                // in the order documented by the producer
  std::vector<std::vector<double>> vectors;  // unit vectors, vectors[i] belongs to values[i]
};

struct JacobiOptions {
  std::size_t max_sweeps = 100;
  double tolerance = 1e-15;  // off-diagonal Frobenius norm relative to ||A||_F
};

/// Full eigensystem by cyclic Jacobi rotations; values ascending.
Eigensystem jacobi_eigensystem(DenseMatrix a, const JacobiOptions& opts = {});

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

/// Householder reduction Q^T A Q = T, with the reflectors kept for back
/// transformation.
class HouseholderReduction {
public:
  explicit HouseholderReduction(DenseMatrix a);

  const Tridiagonal& tridiagonal() const { return t_; }
  /// Q y for a vector in the tridiagonal basis.
  std::vector<double> back_transform(std::vector<double> y) const;

private:
  Tridiagonal t_;
  std::vector<std::vector<double>> reflectors_;
  std::vector<double> betas_;
};

/// All eigenvalues of a symmetric tridiagonal matrix, ascending. Throws
/// ConvergenceError when an eigenvalue needs more than max_iterations sweeps.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, std::size_t max_iterations = 60);

/// Eigenvectors of T for the given eigenvalues by inverse iteration, with
/// re-orthogonalisation inside clusters.
std::vector<std::vector<double>> tridiagonal_eigenvectors(const Tridiagonal& t, const std::vector<double>& values);

/// Solves (T - sigma I) x = b in place, Gaussian elimination with partial
/// pivoting. Zero pivots are replaced by eps * ||T||.
void solve_shifted_tridiagonal(const Tridiagonal& t, double sigma, std::vector<double>& b);

/// LU factorisation with partial pivoting of a general square matrix stored
/// row-major. Instantiated for double and long double.
template <typename T>
class BasicLu {
public:
  BasicLu(std::size_t n, std::vector<T> rows);
  /// Solves A x = b in place. Zero pivots are replaced by eps * max |a_ij|,
  /// so a singular A still yields a (large) solution; inverse iteration
  /// relies on this.
  void solve(std::vector<T>& b) const;
  /// det A, possibly after the pivot replacement above.
  T determinant() const;

private:
  std::size_t n_;
  std::vector<T> lu_;
  std::vector<std::size_t> perm_;
  int parity_ = 1;
};

using LuDecomposition = BasicLu<double>;
using WideLu = BasicLu<long double>;

/// The m algebraically largest eigenpairs of a symmetric matrix, descending.
Eigensystem largest_eigenpairs(const DenseMatrix& a, std::size_t m);

}  // namespace mgl
