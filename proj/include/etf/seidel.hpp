#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etf/types.hpp"

namespace etf {

// Hermitian, zero diagonal, unimodular off-diagonal. Storage is canonicalized
// on construction (upper triangle mirrored, diagonal zeroed) so Q = Q* holds
// exactly, not just to tolerance.
class SeidelMatrix {
 public:
  // Gates: NonFinite; NotHermitian (max|Q - Q*| > 1e-12 * max|Q|);
  // NonzeroDiagonal(i) (|q_ii| > 1e-12); NonUnimodular(i,j) (||q_ij| - 1| > 1e-12).
  static SeidelMatrix validate(const Matrix& Q);

  int n() const { return static_cast<int>(q_.rows()); }
  const Matrix& matrix() const { return q_; }
  Complex operator()(int i, int j) const { return q_(i, j); }

 private:
  explicit SeidelMatrix(Matrix q) : q_(std::move(q)) {}
  // For transforms of already-validated matrices; mirrors the upper triangle.
  static SeidelMatrix from_upper_unchecked(Matrix q);

  Matrix q_;

  friend SeidelMatrix apply_switching(const SeidelMatrix&, const struct SwitchingTransform&);
  friend std::pair<SeidelMatrix, SwitchingTransform> standard_form(const SeidelMatrix&);
};

// Realizes R = P D Q D^{-1} P^{-1}: R(i,j) = d[p[i]] * Q(p[i],p[j]) * conj(d[p[j]]).
// permutation[i] names the input index that lands at output index i; diagonal
// is indexed by input positions.
struct SwitchingTransform {
  std::vector<int> permutation;
  Vector diagonal;

  static SwitchingTransform identity(int n);
  SwitchingTransform inverse() const;
};

SeidelMatrix apply_switching(const SeidelMatrix& Q, const SwitchingTransform& t);

// Exact root-of-unity encoding: entry (i,j) = exp(2*pi*i*e/order), diagonal absent.
struct RootOfUnityGrid {
  int n = 0;
  int order = 1;
  std::vector<std::vector<std::optional<int>>> exponents;
};

Matrix matrix_from_grid(const RootOfUnityGrid& grid);
// Inverse of matrix_from_grid when every off-diagonal entry is within 1e-9 of
// a root of unity of the given order; absence otherwise.
std::optional<RootOfUnityGrid> grid_from_matrix(const Matrix& Q, int order);

// Switching representative whose first row and column are all ones off the
// diagonal; the returned transform maps the input onto the result.
std::pair<SeidelMatrix, SwitchingTransform> standard_form(const SeidelMatrix& Q);

// Backtracking search over permutations with the diagonal forced from the
// first assigned row; spectra compared up front (switching preserves them).
// Returns t with apply_switching(Q, t) == S entrywise to 1e-9, or absence.
// TooLarge for n > 12.
std::optional<SwitchingTransform> switching_equivalent(const SeidelMatrix& Q,
                                                       const SeidelMatrix& S);

// k = 1 -> J - I, k = n-1 -> I - J. BadK otherwise.
SeidelMatrix trivial_seidel(int n, int k);

// Q = iA for the bordered quadratic-residue skew conference matrix of prime
// q = 3 (mod 4); n = q + 1. A^T = -A and A A^T = (n-1) I are checked on
// construction. BadPrime; NotThreeModFour.
SeidelMatrix paley_skew_seidel(int q);

// Built-in matrices: bp-9-3-F, bp-9-3-G (9x9, sixth roots of unity),
// skew-4, skew-8 (+-i off the first row/column). UnknownFixture otherwise.
SeidelMatrix fixture(const std::string& name);
RootOfUnityGrid fixture_grid(const std::string& name);
const std::vector<std::string>& fixture_names();

// A = (Q - I + J) / 2 for real +-1 Seidel matrices; 0/1 symmetric, zero diagonal.
// NotReal if any entry has an imaginary part.
Matrix adjacency_from_real_seidel(const SeidelMatrix& Q);

// Per-row entry sums. For the standard form of a nontrivial Seidel matrix
// whose erasure behavior is flat up to triples, rows past the first sum to 1.
std::vector<Complex> row_sum_check(const SeidelMatrix& Q);

}  // namespace etf
