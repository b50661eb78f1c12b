#include "etf/etf.hpp"

#include "etf/errors.hpp"
#include "etf/matrix.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace etf {

EtfVerification verify_etf_seidel(const SeidelMatrix& Q) {
  const int n = Q.n();
  EtfVerification v;
  const RealVector ev = hermitian_eigen(Q.matrix()).eigenvalues;
  const auto clusters = cluster_eigenvalues(ev);
  v.cluster_count = static_cast<int>(clusters.size());

  double lambda1 = ev(0);
  double lambda2 = ev(n - 1);
  if (clusters.size() == 2) {
    lambda1 = clusters[0].first;
    lambda2 = clusters[1].first;
  }
  const double mu = lambda1 + lambda2;
  const Matrix residual_matrix = Q.matrix() * Q.matrix() -
                                 static_cast<double>(n - 1) * Matrix::Identity(n, n) -
                                 mu * Q.matrix();
  v.residual = residual_matrix.norm();

  if (clusters.size() != 2 || !(lambda1 < 0.0 && lambda2 > 0.0) ||
      v.residual > 1e-8 * n) {
    return v;
  }
  const double k_real =
      n / 2.0 - mu * n / (2.0 * std::sqrt(4.0 * (n - 1) + mu * mu));
  const long long k = std::llround(k_real);
  if (std::abs(k_real - static_cast<double>(k)) > 1e-6 || k < 1 || k > n - 1) {
    return v;
  }
  EtfParameters p;
  p.n = n;
  p.k = static_cast<int>(k);
  p.mu = mu;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.c = std::sqrt(p.k * static_cast<double>(n - p.k) /
                  (static_cast<double>(n) * n * (n - 1)));
  v.is_etf = true;
  v.params = p;
  return v;
}

std::optional<EtfParameters> is_etf_seidel(const SeidelMatrix& Q) {
  return verify_etf_seidel(Q).params;
}

EtfParameters params_from_n_mu(int n, double mu) {
  if (n < 2) throw BadConfig("parameters need n >= 2");
  const double k_real =
      n / 2.0 - mu * n / (2.0 * std::sqrt(4.0 * (n - 1) + mu * mu));
  const long long k = std::llround(k_real);
  if (std::abs(k_real - static_cast<double>(k)) > 1e-6 || k < 1 || k > n - 1) {
    throw NonIntegralK("mu = " + std::to_string(mu) + " gives k = " +
                       std::to_string(k_real) + ", not an integer in [1, n-1]");
  }
  EtfParameters p;
  p.n = n;
  p.k = static_cast<int>(k);
  p.mu = mu;
  p.lambda1 = -std::sqrt(p.k * static_cast<double>(n - 1) / (n - p.k));
  p.lambda2 = std::sqrt(static_cast<double>(n - 1) * (n - p.k) / p.k);
  p.c = std::sqrt(p.k * static_cast<double>(n - p.k) /
                  (static_cast<double>(n) * n * (n - 1)));
  return p;
}

Matrix gram_from_seidel(const SeidelMatrix& Q, const EtfParameters& p) {
  if (p.n != Q.n()) throw BadConfig("parameter n does not match the matrix");
  const int n = p.n;
  Matrix G = (static_cast<double>(p.k) / n) * Matrix::Identity(n, n) +
             p.c * Q.matrix();
  if (max_abs(G * G - G) > 1e-8 ||
      std::abs(G.trace().real() - p.k) > 1e-8) {
    throw NotProjection("G = (k/n)I + cQ is not a rank-k projection for these parameters");
  }
  return G;
}

AnalysisOperator AnalysisOperator::validate(const Matrix& V) {
  if (!is_finite(V)) throw NonFinite("operator has a non-finite entry");
  const int n = static_cast<int>(V.rows());
  const int k = static_cast<int>(V.cols());
  if (n < 1 || k < 1 || k > n) {
    throw BadConfig("analysis operator must be n x k with 1 <= k <= n");
  }
  if (max_abs(V.adjoint() * V - Matrix::Identity(k, k)) > 1e-9) {
    throw NotParseval("V*V differs from the identity");
  }
  const double rownorm = std::sqrt(static_cast<double>(k) / n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(V.row(i).norm() - rownorm) > 1e-9) {
      throw NonUniformRows("row " + std::to_string(i) +
                           " does not have norm sqrt(k/n)");
    }
  }
  AnalysisOperator out;
  out.n = n;
  out.k = k;
  out.entries = V;
  return out;
}

AnalysisOperator AnalysisOperator::from_columns_unchecked(Matrix V) {
  AnalysisOperator out;
  out.n = static_cast<int>(V.rows());
  out.k = static_cast<int>(V.cols());
  out.entries = std::move(V);
  return out;
}

AnalysisOperator frame_from_seidel(const SeidelMatrix& Q, const EtfParameters& p) {
  const Matrix G = gram_from_seidel(Q, p);
  const Spectrum s = hermitian_eigen(G, true);
  const int n = p.n;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(s.eigenvalues(i) - 1.0) <= 1e-6) ++ones;
  }
  if (ones != p.k) {
    throw RankMismatch("projection has " + std::to_string(ones) +
                       " unit eigenvalues, expected " + std::to_string(p.k));
  }
  // Ascending order puts the eigenvalue-1 block last.
  return AnalysisOperator::from_columns_unchecked(
      s.eigenvectors->rightCols(p.k));
}

std::pair<double, double> mutual_coherence(const AnalysisOperator& V) {
  const Matrix G = V.gram();
  const int n = V.n;
  if (n < 2) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = std::abs(G(i, j));
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  return {lo, hi};
}

}  // namespace etf
