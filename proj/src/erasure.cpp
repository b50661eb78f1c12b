#include "etf/erasure.hpp"

#include "etf/errors.hpp"
#include "etf/matrix.hpp"
#include "etf/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace etf {

namespace {

constexpr std::uint64_t kSubsetGuard = 10000000;

void require_square_hermitian(const Matrix& G) {
  if (!is_finite(G)) throw NonFinite("matrix has a non-finite entry");
  if (G.rows() != G.cols()) throw NotHermitian("matrix is not square");
  if (max_abs(G - G.adjoint()) > 1e-12 * max_abs(G)) {
    throw NotHermitian("matrix is not Hermitian");
  }
}

double top_eigenvalue(const Matrix& sub) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sub, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(sub.rows() - 1);
}

// Exact for the sizes the guard admits; values stay far below 2^63.
std::uint64_t binom_u64(int n, int m) {
  if (m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t r = 1;
  for (int i = 1; i <= m; ++i) {
    r = r * static_cast<std::uint64_t>(n - m + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace

ErasurePattern ErasurePattern::make(int n, IndexSet erased) {
  if (n < 1) throw BadConfig("pattern needs n >= 1");
  if (erased.empty()) throw BadConfig("pattern needs at least one erased index");
  if (static_cast<int>(erased.size()) > n) {
    throw BadConfig("more erasures than coordinates");
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int idx : erased) {
    if (idx < 0 || idx >= n) {
      throw IndexOutOfRange("index " + std::to_string(idx) + " outside 0.." +
                            std::to_string(n - 1));
    }
    if (seen[static_cast<size_t>(idx)]) {
      throw DuplicateIndex("index " + std::to_string(idx) + " repeated");
    }
    seen[static_cast<size_t>(idx)] = 1;
  }
  ErasurePattern p;
  p.n = n;
  p.erased = std::move(erased);
  return p;
}

std::uint64_t binomial_guarded(int n, int m) {
  if (m < 0 || m > n) return 0;
  const int mm = std::min(m, n - m);
  std::uint64_t r = 1;
  // C(n, i) grows monotonically for i <= n/2, so the early abort is sound.
  for (int i = 1; i <= mm; ++i) {
    r = r * static_cast<std::uint64_t>(n - mm + i) / static_cast<std::uint64_t>(i);
    if (r > kSubsetGuard) {
      throw TooManySubsets("C(" + std::to_string(n) + "," + std::to_string(m) +
                           ") exceeds the 10^7 enumeration guard");
    }
  }
  return r;
}

IndexSet unrank_combination(std::uint64_t rank, int n, int m) {
  IndexSet out;
  out.reserve(static_cast<size_t>(m));
  int x = 0;
  for (int s = 0; s < m; ++s) {
    for (;;) {
      const std::uint64_t count = binom_u64(n - 1 - x, m - 1 - s);
      if (rank < count) {
        out.push_back(x);
        ++x;
        break;
      }
      rank -= count;
      ++x;
    }
  }
  return out;
}

bool next_combination(IndexSet& subset, int n) {
  const int m = static_cast<int>(subset.size());
  int i = m - 1;
  while (i >= 0 && subset[static_cast<size_t>(i)] == n - m + i) --i;
  if (i < 0) return false;
  ++subset[static_cast<size_t>(i)];
  for (int j = i + 1; j < m; ++j) {
    subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
  }
  return true;
}

double erasure_error(const Matrix& G, const ErasurePattern& pattern) {
  require_square_hermitian(G);
  if (pattern.n != static_cast<int>(G.rows())) {
    throw BadConfig("pattern size does not match the matrix");
  }
  return std::max(top_eigenvalue(compression(G, pattern.erased)), 0.0);
}

ErasureReport erasure_sweep(const Matrix& G, int m,
                            const std::optional<EtfParameters>& params,
                            int threads) {
  require_square_hermitian(G);
  const int n = static_cast<int>(G.rows());
  if (m < 1 || m > n) throw BadConfig("erasure level m must lie in 1..n");
  const std::uint64_t total = binomial_guarded(n, m);

  struct ChunkExtremes {
    double max = -std::numeric_limits<double>::infinity();
    double min = std::numeric_limits<double>::infinity();
    std::uint64_t argmax = 0;
    std::uint64_t argmin = 0;
  };
  std::vector<ChunkExtremes> chunks(static_cast<size_t>(chunk_count(total)));
  parallel_chunks(total, threads,
                  [&](std::uint64_t ci, std::uint64_t begin, std::uint64_t end) {
    ChunkExtremes ext;
    IndexSet subset = unrank_combination(begin, n, m);
    Matrix sub(m, m);
    for (std::uint64_t r = begin; r < end; ++r) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sub(i, j) = G(subset[static_cast<size_t>(i)], subset[static_cast<size_t>(j)]);
      }
      const double val = std::max(top_eigenvalue(sub), 0.0);
      // Strict comparisons keep the lexicographically least rank among ties.
      if (val > ext.max) {
        ext.max = val;
        ext.argmax = r;
      }
      if (val < ext.min) {
        ext.min = val;
        ext.argmin = r;
      }
      if (r + 1 < end) next_combination(subset, n);
    }
    chunks[static_cast<size_t>(ci)] = ext;
  });

  ChunkExtremes best;
  for (const ChunkExtremes& ext : chunks) {
    if (ext.max > best.max) {
      best.max = ext.max;
      best.argmax = ext.argmax;
    }
    if (ext.min < best.min) {
      best.min = ext.min;
      best.argmin = ext.argmin;
    }
  }

  ErasureReport rep;
  rep.m = m;
  rep.e_max = best.max;
  rep.e_min = best.min;
  rep.argmax_subset = unrank_combination(best.argmax, n, m);
  rep.argmin_subset = unrank_combination(best.argmin, n, m);
  if (params.has_value()) {
    rep.bound = erasure_bound(*params, m);
    rep.saturated = std::abs(rep.e_max - *rep.bound) <= 1e-9;
  }
  rep.uniform = (rep.e_max - rep.e_min) <= 1e-9 * (1.0 + rep.e_max);
  return rep;
}

std::vector<ErasureReport> classify_uniformity(const Matrix& G, int max_m,
                                               const std::optional<EtfParameters>& params,
                                               int threads) {
  require_square_hermitian(G);
  const int n = static_cast<int>(G.rows());
  if (max_m < 1 || max_m > n) throw BadConfig("max_m must lie in 1..n");
  std::vector<ErasureReport> reports;
  reports.reserve(static_cast<size_t>(max_m));
  for (int m = 1; m <= max_m; ++m) {
    reports.push_back(erasure_sweep(G, m, params, threads));
  }
  return reports;
}

double erasure_bound(const EtfParameters& p, int m) {
  if (m < 1) throw BadConfig("erasure level m must be positive");
  return static_cast<double>(p.k) / p.n + (m - 1) * p.c;
}

std::optional<IndexSet> saturation_witness(const SeidelMatrix& Q, int m) {
  const int n = Q.n();
  if (m < 1 || m > n) throw BadConfig("erasure level m must lie in 1..n");
  const std::uint64_t total = binomial_guarded(n, m);
  IndexSet subset = unrank_combination(0, n, m);
  Matrix sub(m, m);
  for (std::uint64_t r = 0; r < total; ++r) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) sub(i, j) = Q(subset[static_cast<size_t>(i)], subset[static_cast<size_t>(j)]);
    }
    if (top_eigenvalue(sub) >= m - 1 - 1e-9) return subset;
    next_combination(subset, n);
  }
  return std::nullopt;
}

double triple_norm(Complex alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
    throw NotUnimodular("triple norm needs |alpha| = 1");
  }
  const double t = std::clamp(alpha.real(), -1.0, 1.0);
  return 2.0 * std::cos(std::acos(t) / 3.0);
}

ThreeCVerdict check_3c_classification(const SeidelMatrix& Q) {
  if (!is_etf_seidel(Q).has_value()) {
    throw NotEtf("classification needs a verified equiangular tight frame");
  }
  const int n = Q.n();
  if (n <= 12) {
    if (switching_equivalent(Q, trivial_seidel(n, 1)).has_value()) {
      return ThreeCVerdict::trivial;
    }
    if (n > 2 && switching_equivalent(Q, trivial_seidel(n, n - 1)).has_value()) {
      return ThreeCVerdict::trivial;
    }
  }
  auto [R, t] = standard_form(Q);
  bool all_plus = true;
  bool all_minus = true;
  bool all_imag = true;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex v = R(i, j);
      if (std::abs(v - Complex(1, 0)) > 1e-9) all_plus = false;
      if (std::abs(v + Complex(1, 0)) > 1e-9) all_minus = false;
      if (std::abs(v.real()) > 1e-9 || std::abs(std::abs(v.imag()) - 1.0) > 1e-9) {
        all_imag = false;
      }
    }
  }
  if (n > 12 && (all_plus || all_minus)) return ThreeCVerdict::trivial;
  if (n >= 3 && all_imag) return ThreeCVerdict::skew_class;
  return ThreeCVerdict::not_3c;
}

FourCVerdict check_4c_exhaustive(const SeidelMatrix& Q) {
  auto p = is_etf_seidel(Q);
  if (!p.has_value()) {
    throw NotEtf("classification needs a verified equiangular tight frame");
  }
  if (Q.n() > 16) {
    throw TooLarge("exhaustive uniformity check supports n <= 16, got n = " +
                   std::to_string(Q.n()));
  }
  const Matrix G = gram_from_seidel(Q, *p);
  for (const ErasureReport& r : classify_uniformity(G, std::min(4, Q.n()), *p)) {
    if (!r.uniform) return FourCVerdict::not_four_c;
  }
  return FourCVerdict::four_c;
}

double parallelepiped_volume(const AnalysisOperator& V, const IndexSet& subset) {
  if (subset.size() != 3) {
    throw BadConfig("parallelepiped volume takes exactly three indices");
  }
  const double d = determinant(compression(V.gram(), subset)).real();
  return std::sqrt(std::max(d, 0.0));
}

}  // namespace etf
