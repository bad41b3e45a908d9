#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace ijt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;
using Mat = std::vector<std::vector<Int>>;

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Mat transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat r(a[0].size(), std::vector<Int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
  return r;
}

// Rank over Q (= rank over Z) by fraction-free elimination.
inline int rank_of(Mat a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Int f = a[r][c], p = a[rank][c];
      for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * p - a[rank][j] * f;
    }
    ++rank;
  }
  return rank;
}

// Determinant of a square integer matrix (Bareiss).
inline Int det_of(Mat a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) { pivot = r; break; }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

// Row Hermite-style echelon form H = U*A with U unimodular.
struct HnfResult {
  Mat h;
  Mat u;
  int rank = 0;
};

inline HnfResult hnf_transform(const Mat& a_in) {
  int rows = static_cast<int>(a_in.size());
  int cols = rows ? static_cast<int>(a_in[0].size()) : 0;
  Mat h = a_in;
  Mat u(rows, std::vector<Int>(rows, 0));
  for (int i = 0; i < rows; ++i) u[i][i] = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // Euclidean elimination within the column.
    while (true) {
      int best = -1;
      for (int i = r; i < rows; ++i) {
        if (h[i][c] == 0) continue;
        if (best < 0 || int_abs(h[i][c]) < int_abs(h[best][c])) best = i;
      }
      if (best < 0) break;
      std::swap(h[r], h[best]);
      std::swap(u[r], u[best]);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (h[i][c] == 0) continue;
        Int q = h[i][c] / h[r][c];
        for (int j = 0; j < cols; ++j) h[i][j] -= q * h[r][j];
        for (int j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
        if (h[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[r][c] == 0) continue;
    if (h[r][c] < 0) {
      for (auto& x : h[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

// Basis of {y in Z^rows : y*A = 0}; the result is a saturated lattice.
inline Mat left_kernel(const Mat& a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return {};
  HnfResult res = hnf_transform(a);
  Mat k;
  for (int i = res.rank; i < rows; ++i) k.push_back(res.u[i]);
  return k;
}

// Basis of span(rows) ∩ Z^cols, i.e. the saturation of the row lattice.
inline Mat saturated_basis(const Mat& rows, int cols) {
  if (rows.empty()) return {};
  // Orthogonal complement first, then its integer kernel.
  Mat n = left_kernel(transpose(rows));  // basis of {y : A y = 0}
  if (n.empty()) {
    Mat id(cols, std::vector<Int>(cols, 0));
    for (int i = 0; i < cols; ++i) id[i][i] = 1;
    return id;
  }
  return left_kernel(transpose(n));
}

// Solve x * basis = v exactly; returns the (rational) solution only when it
// is integral.
inline std::optional<std::vector<Int>> in_lattice_coords(const Mat& basis,
                                                         const std::vector<Int>& v) {
  int d = static_cast<int>(basis.size());
  int m = d ? static_cast<int>(basis[0].size()) : static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != m) throw std::invalid_argument("dimension mismatch");
  // Gaussian elimination on the transposed system basis^T * x^T = v^T.
  std::vector<std::vector<Rat>> aug(m, std::vector<Rat>(d + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) aug[i][j] = Rat(basis[j][i]);
    aug[i][d] = Rat(v[i]);
  }
  int row = 0;
  std::vector<int> pivot_col(d, -1);
  for (int c = 0; c < d && row < m; ++c) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (aug[i][c] != Rat(0)) { p = i; break; }
    if (p < 0) continue;
    std::swap(aug[row], aug[p]);
    for (int i = 0; i < m; ++i) {
      if (i == row || aug[i][c] == Rat(0)) continue;
      Rat f = aug[i][c] / aug[row][c];
      for (int j = c; j <= d; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col[c] = row;
    ++row;
  }
  std::vector<Int> out(d, 0);
  for (int c = 0; c < d; ++c) {
    if (pivot_col[c] < 0) continue;
    Rat val = aug[pivot_col[c]][d] / aug[pivot_col[c]][c];
    if (val.denominator() != 1) return std::nullopt;
    out[c] = val.numerator();
  }
  // Consistency: rows without pivots must have zero rhs.
  for (int i = row; i < m; ++i)
    if (aug[i][d] != Rat(0)) return std::nullopt;
  // Verify (guards against free variables that were silently zeroed).
  for (int i = 0; i < m; ++i) {
    Int s = 0;
    for (int j = 0; j < d; ++j) s += out[j] * basis[j][i];
    if (s != v[i]) return std::nullopt;
  }
  return out;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace ijt
