#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etf/etf.hpp"
#include "etf/seidel.hpp"
#include "etf/types.hpp"

namespace etf {

struct ErasurePattern {
  int n = 0;
  IndexSet erased;  // distinct, in range, 1 <= |erased| <= n

  static ErasurePattern make(int n, IndexSet erased);
};

struct ErasureReport {
  int m = 0;
  double e_max = 0.0;
  double e_min = 0.0;
  IndexSet argmax_subset;  // lexicographically least among ties
  IndexSet argmin_subset;
  std::optional<double> bound;  // k/n + (m-1)c when parameters are known
  bool saturated = false;       // |e_max - bound| <= 1e-9
  bool uniform = false;         // e_max - e_min <= 1e-9 * (1 + e_max)
};

// C(n, m) with the enumeration guard: TooManySubsets past 10^7.
std::uint64_t binomial_guarded(int n, int m);

// Lexicographic combination of {0..n-1} at the given rank (combinatorial
// number system); rank < C(n, m).
IndexSet unrank_combination(std::uint64_t rank, int n, int m);
// Advances to the lexicographic successor; false after the last combination.
bool next_combination(IndexSet& subset, int n);

// Worst-case reconstruction error for one pattern: the top eigenvalue of the
// Gram compression on the erased indices (equals ||V* D V||).
double erasure_error(const Matrix& G, const ErasurePattern& pattern);

// Exact extremes over all C(n, m) patterns. Deterministic at any thread count:
// fixed chunking over combination ranks, per-chunk extremes merged in order.
ErasureReport erasure_sweep(const Matrix& G, int m,
                            const std::optional<EtfParameters>& params = std::nullopt,
                            int threads = 0);

// Reports for m = 1..max_m; a frame is completely m-uniform when every level
// up to m is uniform.
std::vector<ErasureReport> classify_uniformity(const Matrix& G, int max_m,
                                               const std::optional<EtfParameters>& params = std::nullopt,
                                               int threads = 0);

// k/n + (m-1) c.
double erasure_bound(const EtfParameters& p, int m);

// Lexicographically first m-subset whose Q-compression has top eigenvalue
// m - 1 (within 1e-9), i.e. a compression switching-equivalent to J - I;
// exactly the patterns attaining the erasure bound.
std::optional<IndexSet> saturation_witness(const SeidelMatrix& Q, int m);

// Top eigenvalue of [[0,1,1],[1,0,a],[1,conj(a),0]]: the largest root of
// x^3 - 3x = 2*Re(a), i.e. 2*cos(arccos(Re(a)) / 3). Strictly increasing in
// Re(a). NotUnimodular when ||a| - 1| > 1e-12.
double triple_norm(Complex alpha);

enum class ThreeCVerdict { trivial, skew_class, not_3c };
enum class FourCVerdict { four_c, not_four_c };

// Flat-through-triples classification. trivial: switching-equivalent to J - I
// or I - J (exhaustive witness for n <= 12, standard-form entry pattern above);
// skew_class: standard form is +-i off the first row/column; not_3c otherwise.
// NotEtf when the input fails ETF verification.
ThreeCVerdict check_3c_classification(const SeidelMatrix& Q);

// Uniformity at every m <= min(4, n), decided by exhaustive sweeps.
// NotEtf; TooLarge for n > 16.
FourCVerdict check_4c_exhaustive(const SeidelMatrix& Q);

// sqrt(det) of the 3x3 Gram on the chosen frame vectors.
double parallelepiped_volume(const AnalysisOperator& V, const IndexSet& subset);

}  // namespace etf
