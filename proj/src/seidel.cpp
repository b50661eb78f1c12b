#include "etf/seidel.hpp"

#include "etf/errors.hpp"
#include "etf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace etf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Twelfth roots of unity, exact where the coordinates have closed forms.
// All fixture alphabets (sixth and fourth roots) embed here.
const Complex* order12_table() {
  static const double h = 0.5;
  static const double s = std::sqrt(3.0) / 2.0;
  static const Complex table[12] = {
      {1, 0},  {s, h},   {h, s},   {0, 1},  {-h, s},  {-s, h},
      {-1, 0}, {-s, -h}, {-h, -s}, {0, -1}, {h, -s},  {s, -h},
  };
  return table;
}

Complex root_of_unity(int exponent, int order) {
  const int e = ((exponent % order) + order) % order;
  if ((e * 12) % order == 0) {
    return order12_table()[(e * 12 / order) % 12];
  }
  return std::polar(1.0, kTwoPi * e / order);
}

RootOfUnityGrid grid_from_table(const int* data, int n) {
  RootOfUnityGrid g;
  g.n = n;
  g.order = 12;
  g.exponents.assign(static_cast<size_t>(n),
                     std::vector<std::optional<int>>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int e = data[i * n + j];
      if (i != j) g.exponents[i][j] = e;
    }
  }
  return g;
}

// clang-format off
constexpr int kGridF9[81] = {
  -1, 0, 0,  0,  0,  0,  0,  0,  0,
   0,-1, 6, 10, 10, 10,  2,  2,  2,
   0, 6,-1,  2,  2,  2, 10, 10, 10,
   0, 2,10, -1, 10,  2,  6, 10,  2,
   0, 2,10,  2, -1, 10, 10,  2,  6,
   0, 2,10, 10,  2, -1,  2,  6, 10,
   0,10, 2,  6,  2, 10, -1,  2, 10,
   0,10, 2,  2, 10,  6, 10, -1,  2,
   0,10, 2, 10,  6,  2,  2, 10, -1,
};

constexpr int kGridG9[81] = {
  -1, 0, 0,  0,  0,  0,  0,  0,  0,
   0,-1, 6, 10, 10, 10,  2,  2,  2,
   0, 6,-1,  2,  2,  2, 10, 10, 10,
   0, 2,10, -1, 10,  2,  0,  8,  4,
   0, 2,10,  2, -1, 10,  4,  0,  8,
   0, 2,10, 10,  2, -1,  8,  4,  0,
   0,10, 2,  0,  8,  4, -1, 10,  2,
   0,10, 2,  4,  0,  8,  2, -1, 10,
   0,10, 2,  8,  4,  0, 10,  2, -1,
};

constexpr int kGridSkew4[16] = {
  -1, 0, 0, 0,
   0,-1, 9, 3,
   0, 3,-1, 9,
   0, 9, 3,-1,
};

constexpr int kGridSkew8[64] = {
  -1, 0, 0, 0, 0, 0, 0, 0,
   0,-1, 9, 9, 9, 3, 3, 3,
   0, 3,-1, 9, 3, 9, 9, 3,
   0, 3, 3,-1, 9, 9, 3, 9,
   0, 3, 9, 3,-1, 3, 9, 9,
   0, 9, 3, 3, 9,-1, 9, 3,
   0, 9, 3, 9, 3, 3,-1, 9,
   0, 9, 9, 3, 3, 9, 3,-1,
};
// clang-format on

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void require_transform_shape(int n, const SwitchingTransform& t) {
  if (static_cast<int>(t.permutation.size()) != n ||
      static_cast<int>(t.diagonal.size()) != n) {
    throw BadConfig("switching transform size does not match the matrix");
  }
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int p : t.permutation) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)]) {
      throw BadConfig("switching permutation is not a bijection");
    }
    seen[static_cast<size_t>(p)] = 1;
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(std::abs(t.diagonal(i)) - 1.0) > 1e-12) {
      throw BadConfig("switching diagonal entry is not unimodular");
    }
  }
}

}  // namespace

SeidelMatrix SeidelMatrix::validate(const Matrix& Q) {
  if (!is_finite(Q)) throw NonFinite("matrix has a non-finite entry");
  if (Q.rows() != Q.cols()) {
    throw NotHermitian("matrix is " + std::to_string(Q.rows()) + "x" +
                       std::to_string(Q.cols()) + ", not square");
  }
  const int n = static_cast<int>(Q.rows());
  const double dev = max_abs(Q - Q.adjoint());
  if (dev > 1e-12 * max_abs(Q)) {
    throw NotHermitian("max |Q - Q*| = " + std::to_string(dev) +
                       " exceeds the Hermitian tolerance");
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(Q(i, i)) > 1e-12) {
      throw NonzeroDiagonal("entry (" + std::to_string(i) + "," +
                            std::to_string(i) + ") is not zero");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(std::abs(Q(i, j)) - 1.0) > 1e-12) {
        throw NonUnimodular("entry (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is off the unit circle");
      }
    }
  }
  Matrix canon = Q;
  for (int i = 0; i < n; ++i) {
    canon(i, i) = Complex(0, 0);
    for (int j = i + 1; j < n; ++j) canon(j, i) = std::conj(canon(i, j));
  }
  return SeidelMatrix(std::move(canon));
}

SeidelMatrix SeidelMatrix::from_upper_unchecked(Matrix q) {
  const int n = static_cast<int>(q.rows());
  for (int i = 0; i < n; ++i) {
    q(i, i) = Complex(0, 0);
    for (int j = i + 1; j < n; ++j) q(j, i) = std::conj(q(i, j));
  }
  return SeidelMatrix(std::move(q));
}

SwitchingTransform SwitchingTransform::identity(int n) {
  SwitchingTransform t;
  t.permutation.resize(static_cast<size_t>(n));
  std::iota(t.permutation.begin(), t.permutation.end(), 0);
  t.diagonal = Vector::Ones(n);
  return t;
}

SwitchingTransform SwitchingTransform::inverse() const {
  const int n = static_cast<int>(permutation.size());
  SwitchingTransform inv;
  inv.permutation.resize(static_cast<size_t>(n));
  inv.diagonal = Vector(n);
  for (int a = 0; a < n; ++a) inv.permutation[static_cast<size_t>(permutation[a])] = a;
  for (int a = 0; a < n; ++a) inv.diagonal(a) = std::conj(diagonal(permutation[a]));
  return inv;
}

SeidelMatrix apply_switching(const SeidelMatrix& Q, const SwitchingTransform& t) {
  const int n = Q.n();
  require_transform_shape(n, t);
  Matrix R(n, n);
  for (int i = 0; i < n; ++i) {
    R(i, i) = Complex(0, 0);
    for (int j = i + 1; j < n; ++j) {
      R(i, j) = t.diagonal(t.permutation[i]) * Q(t.permutation[i], t.permutation[j]) *
                std::conj(t.diagonal(t.permutation[j]));
    }
  }
  return SeidelMatrix::from_upper_unchecked(std::move(R));
}

Matrix matrix_from_grid(const RootOfUnityGrid& grid) {
  if (grid.order < 1) throw BadConfig("root-of-unity order must be positive");
  const int n = grid.n;
  if (static_cast<int>(grid.exponents.size()) != n) {
    throw BadConfig("exponent grid size does not match n");
  }
  Matrix M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(grid.exponents[i].size()) != n) {
      throw BadConfig("exponent grid row " + std::to_string(i) + " has the wrong length");
    }
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!grid.exponents[i][j].has_value()) {
        throw BadConfig("exponent missing at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
      M(i, j) = root_of_unity(*grid.exponents[i][j], grid.order);
    }
  }
  return M;
}

std::optional<RootOfUnityGrid> grid_from_matrix(const Matrix& Q, int order) {
  if (Q.rows() != Q.cols() || order < 1) return std::nullopt;
  const int n = static_cast<int>(Q.rows());
  RootOfUnityGrid g;
  g.n = n;
  g.order = order;
  g.exponents.assign(static_cast<size_t>(n),
                     std::vector<std::optional<int>>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        if (std::abs(Q(i, j)) > 1e-9) return std::nullopt;
        continue;
      }
      bool found = false;
      for (int e = 0; e < order; ++e) {
        if (std::abs(Q(i, j) - root_of_unity(e, order)) <= 1e-9) {
          g.exponents[i][j] = e;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
  }
  return g;
}

std::pair<SeidelMatrix, SwitchingTransform> standard_form(const SeidelMatrix& Q) {
  const int n = Q.n();
  SwitchingTransform t = SwitchingTransform::identity(n);
  for (int j = 1; j < n; ++j) t.diagonal(j) = Q(0, j);
  Matrix R(n, n);
  for (int i = 0; i < n; ++i) R(i, i) = Complex(0, 0);
  for (int j = 1; j < n; ++j) {
    R(0, j) = Complex(1, 0);  // snapped: |Q(0,j)|^2 only up to rounding
    R(j, 0) = Complex(1, 0);
  }
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      R(i, j) = t.diagonal(i) * Q(i, j) * std::conj(t.diagonal(j));
      R(j, i) = std::conj(R(i, j));
    }
  }
  return {SeidelMatrix(std::move(R)), std::move(t)};
}

namespace {

// Depth-first assignment of the permutation; the phase of each newly placed
// index is forced by the first assigned row, so only rows 1..i-1 need checking.
bool extend_assignment(const SeidelMatrix& Q, const SeidelMatrix& S, int level,
                       std::vector<int>& perm, std::vector<Complex>& phase,
                       std::vector<char>& used) {
  const int n = Q.n();
  if (level == n) return true;
  for (int c = 0; c < n; ++c) {
    if (used[static_cast<size_t>(c)]) continue;
    Complex e;
    if (level == 0) {
      e = Complex(1, 0);  // global phase gauge
    } else {
      e = std::conj(S(0, level)) * Q(perm[0], c);
    }
    bool ok = true;
    for (int j = 1; j < level && ok; ++j) {
      const Complex predicted = phase[static_cast<size_t>(j)] * Q(perm[static_cast<size_t>(j)], c) * std::conj(e);
      if (std::abs(predicted - S(j, level)) > 1e-9) ok = false;
    }
    if (!ok) continue;
    perm[static_cast<size_t>(level)] = c;
    phase[static_cast<size_t>(level)] = e;
    used[static_cast<size_t>(c)] = 1;
    if (extend_assignment(Q, S, level + 1, perm, phase, used)) return true;
    used[static_cast<size_t>(c)] = 0;
  }
  return false;
}

}  // namespace

std::optional<SwitchingTransform> switching_equivalent(const SeidelMatrix& Q,
                                                       const SeidelMatrix& S) {
  if (Q.n() != S.n()) throw BadConfig("matrices must share a size");
  const int n = Q.n();
  if (n > 12) {
    throw TooLarge("equivalence search supports n <= 12, got n = " + std::to_string(n));
  }
  const RealVector evQ = hermitian_eigen(Q.matrix()).eigenvalues;
  const RealVector evS = hermitian_eigen(S.matrix()).eigenvalues;
  if ((evQ - evS).cwiseAbs().maxCoeff() > 1e-7) return std::nullopt;

  std::vector<int> perm(static_cast<size_t>(n), -1);
  std::vector<Complex> phase(static_cast<size_t>(n));
  std::vector<char> used(static_cast<size_t>(n), 0);
  if (!extend_assignment(Q, S, 0, perm, phase, used)) return std::nullopt;

  SwitchingTransform t;
  t.permutation = perm;
  t.diagonal = Vector(n);
  for (int i = 0; i < n; ++i) t.diagonal(perm[static_cast<size_t>(i)]) = phase[static_cast<size_t>(i)];
  return t;
}

SeidelMatrix trivial_seidel(int n, int k) {
  if (n < 2) throw BadConfig("Seidel matrices need n >= 2");
  Matrix M;
  if (k == 1) {
    M = Matrix::Ones(n, n) - Matrix::Identity(n, n);
  } else if (k == n - 1) {
    M = Matrix::Identity(n, n) - Matrix::Ones(n, n);
  } else {
    throw BadK("trivial frames exist only for k = 1 and k = n-1, got k = " +
               std::to_string(k));
  }
  return SeidelMatrix::validate(M);
}

SeidelMatrix paley_skew_seidel(int q) {
  if (!is_prime(q)) throw BadPrime(std::to_string(q) + " is not prime");
  if (q % 4 != 3) {
    throw NotThreeModFour(std::to_string(q) + " is not 3 mod 4");
  }
  std::vector<char> residue(static_cast<size_t>(q), 0);
  for (int x = 1; x < q; ++x) {
    residue[static_cast<size_t>((x * x) % q)] = 1;
  }
  const int n = q + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int t = 1; t < n; ++t) {
    A(0, t) = 1.0;
    A(t, 0) = -1.0;
  }
  for (int s = 1; s < n; ++s) {
    for (int t = 1; t < n; ++t) {
      if (s == t) continue;
      const int d = ((t - s) % q + q) % q;
      A(s, t) = residue[static_cast<size_t>(d)] ? 1.0 : -1.0;
    }
  }
  if ((A + A.transpose()).cwiseAbs().maxCoeff() != 0.0 ||
      (A * A.transpose() - q * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() != 0.0) {
    throw std::logic_error("skew conference construction failed its invariants");
  }
  Matrix Q = Complex(0, 1) * A.cast<Complex>();
  return SeidelMatrix::validate(Q);
}

namespace {

const std::map<std::string, RootOfUnityGrid>& fixture_table() {
  static const std::map<std::string, RootOfUnityGrid> table = [] {
    std::map<std::string, RootOfUnityGrid> t;
    t.emplace("bp-9-3-F", grid_from_table(kGridF9, 9));
    t.emplace("bp-9-3-G", grid_from_table(kGridG9, 9));
    t.emplace("skew-4", grid_from_table(kGridSkew4, 4));
    t.emplace("skew-8", grid_from_table(kGridSkew8, 8));
    return t;
  }();
  return table;
}

}  // namespace

SeidelMatrix fixture(const std::string& name) {
  return SeidelMatrix::validate(matrix_from_grid(fixture_grid(name)));
}

RootOfUnityGrid fixture_grid(const std::string& name) {
  const auto& table = fixture_table();
  auto it = table.find(name);
  if (it == table.end()) {
    throw UnknownFixture("no fixture named '" + name + "'");
  }
  return it->second;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, grid] : fixture_table()) v.push_back(name);
    return v;
  }();
  return names;
}

Matrix adjacency_from_real_seidel(const SeidelMatrix& Q) {
  const int n = Q.n();
  Matrix A = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Complex q = Q(i, j);
      if (std::abs(q.imag()) > 1e-12) {
        throw NotReal("entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") has an imaginary part");
      }
      A(i, j) = q.real() > 0 ? Complex(1, 0) : Complex(0, 0);
    }
  }
  return A;
}

std::vector<Complex> row_sum_check(const SeidelMatrix& Q) {
  const int n = Q.n();
  std::vector<Complex> sums(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) sums[static_cast<size_t>(i)] = Q.matrix().row(i).sum();
  return sums;
}

}  // namespace etf
