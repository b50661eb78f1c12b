#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "etf/types.hpp"

namespace etf {

struct Spectrum {
  RealVector eigenvalues;              // ascending
  std::optional<Matrix> eigenvectors;  // orthonormal columns, same order
};

// Full spectrum of a Hermitian matrix, sorted ascending; deterministic for
// identical input. Rejects NaN/Inf and matrices with max|A - A*| > 1e-12 * max|A|.
Spectrum hermitian_eigen(const Matrix& A, bool want_vectors = false);

// Principal submatrix on the given rows/columns, caller's index order preserved.
Matrix compression(const Matrix& A, const IndexSet& subset);

// Max |eigenvalue| for Hermitian input, largest singular value otherwise.
double operator_norm(const Matrix& A);

Complex determinant(const Matrix& A);

// Groups an ascending eigenvalue list into clusters; values within
// 1e-8 * (1 + max|eigenvalue|) of their neighbor share a cluster.
// Returns (cluster mean, multiplicity) pairs in ascending order.
std::vector<std::pair<double, int>> cluster_eigenvalues(const RealVector& eigenvalues);

bool is_finite(const Matrix& A);
double max_abs(const Matrix& A);

}  // namespace etf
