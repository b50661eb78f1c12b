#pragma once

#include <optional>
#include <utility>

#include "etf/seidel.hpp"
#include "etf/types.hpp"

namespace etf {

// Tied together by mu = lambda1 + lambda2, n = 1 - lambda1*lambda2,
// lambda1 = -sqrt(k(n-1)/(n-k)), lambda2 = sqrt((n-1)(n-k)/k),
// c = sqrt(k(n-k) / (n^2 (n-1))).
struct EtfParameters {
  int n = 0;
  int k = 0;
  double mu = 0.0;
  double lambda1 = 0.0;  // negative
  double lambda2 = 0.0;  // positive
  double c = 0.0;
};

struct EtfVerification {
  bool is_etf = false;
  std::optional<EtfParameters> params;
  double residual = 0.0;  // ||Q^2 - (n-1)I - mu Q||_F, mu from the extreme eigenvalues
  int cluster_count = 0;
};

// A Seidel matrix carries an equiangular tight frame exactly when its spectrum
// has two values lambda1 < 0 < lambda2 and Q^2 = (n-1)I + mu Q. The residual
// gate is ||.||_F <= 1e-8 * n; k from the spectrum must be within 1e-6 of an
// integer in [1, n-1].
EtfVerification verify_etf_seidel(const SeidelMatrix& Q);
std::optional<EtfParameters> is_etf_seidel(const SeidelMatrix& Q);

// NonIntegralK when the k formula misses an integer in [1, n-1] by more than 1e-6.
EtfParameters params_from_n_mu(int n, double mu);

// G = (k/n) I + c Q, the rank-k Parseval Gram projection. NotProjection when
// G^2 = G or trace(G) = k fails at 1e-8 (inconsistent parameters).
Matrix gram_from_seidel(const SeidelMatrix& Q, const EtfParameters& p);

// n x k isometry; rows are adjoints of the frame vectors, so V V* is the Gram
// projection and V* V = I_k.
struct AnalysisOperator {
  int n = 0;
  int k = 0;
  Matrix entries;

  // NotParseval if ||V*V - I|| exceeds 1e-9; NonUniformRows if any row norm
  // differs from sqrt(k/n) by more than 1e-9.
  static AnalysisOperator validate(const Matrix& V);
  static AnalysisOperator from_columns_unchecked(Matrix V);

  Matrix gram() const { return entries * entries.adjoint(); }
};

// Columns are the eigenvalue-1 eigenvectors of the Gram projection, in the
// eigensolver's deterministic order. RankMismatch if that cluster is not k wide.
AnalysisOperator frame_from_seidel(const SeidelMatrix& Q, const EtfParameters& p);

// Extremes of |<f_j, f_i>| over i != j; both equal c for an ETF.
std::pair<double, double> mutual_coherence(const AnalysisOperator& V);

}  // namespace etf
