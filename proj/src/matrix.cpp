#include "etf/matrix.hpp"

#include "etf/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace etf {

bool is_finite(const Matrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const Complex& z = A(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double max_abs(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().maxCoeff();
}

namespace {

void require_finite(const Matrix& A) {
  if (!is_finite(A)) throw NonFinite("matrix has a non-finite entry");
}

// Relative Hermitian gate: max |A - A*| <= 1e-12 * max |A|.
void require_hermitian(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw NotHermitian("matrix is " + std::to_string(A.rows()) + "x" +
                       std::to_string(A.cols()) + ", not square");
  }
  const double dev = max_abs(A - A.adjoint());
  if (dev > 1e-12 * max_abs(A)) {
    throw NotHermitian("max |A - A*| = " + std::to_string(dev) +
                       " exceeds the Hermitian tolerance");
  }
}

}  // namespace

Spectrum hermitian_eigen(const Matrix& A, bool want_vectors) {
  require_finite(A);
  require_hermitian(A);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      A, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NonFinite("eigensolver did not converge");
  }
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  if (want_vectors) s.eigenvectors = solver.eigenvectors();
  return s;
}

Matrix compression(const Matrix& A, const IndexSet& subset) {
  if (A.rows() != A.cols()) {
    throw BadConfig("compression requires a square matrix");
  }
  const int n = static_cast<int>(A.rows());
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int idx : subset) {
    if (idx < 0 || idx >= n) {
      throw IndexOutOfRange("index " + std::to_string(idx) +
                            " outside 0.." + std::to_string(n - 1));
    }
    if (seen[static_cast<size_t>(idx)]) {
      throw DuplicateIndex("index " + std::to_string(idx) + " repeated");
    }
    seen[static_cast<size_t>(idx)] = 1;
  }
  const int m = static_cast<int>(subset.size());
  Matrix out(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) out(i, j) = A(subset[i], subset[j]);
  }
  return out;
}

double operator_norm(const Matrix& A) {
  require_finite(A);
  if (A.size() == 0) return 0.0;
  if (A.rows() == A.cols() &&
      max_abs(A - A.adjoint()) <= 1e-12 * max_abs(A)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A, Eigen::EigenvaluesOnly);
    const RealVector& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

Complex determinant(const Matrix& A) {
  require_finite(A);
  if (A.rows() != A.cols()) {
    throw BadConfig("determinant requires a square matrix");
  }
  if (A.rows() == 0) return Complex(1.0, 0.0);
  return A.partialPivLu().determinant();
}

std::vector<std::pair<double, int>> cluster_eigenvalues(const RealVector& ev) {
  std::vector<std::pair<double, int>> out;
  const int n = static_cast<int>(ev.size());
  if (n == 0) return out;
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  const double tol = 1e-8 * (1.0 + scale);
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || ev(i) - ev(i - 1) > tol) {
      double sum = 0.0;
      for (int j = start; j < i; ++j) sum += ev(j);
      out.emplace_back(sum / (i - start), i - start);
      start = i;
    }
  }
  return out;
}

}  // namespace etf
