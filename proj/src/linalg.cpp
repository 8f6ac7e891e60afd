#include "discrim/linalg.hpp"

#include <algorithm>

namespace discrim {

Mat mat_from_rows(std::vector<Vec> rows, std::size_t cols_if_empty) {
  Mat m;
  m.rows = rows.size();
  m.cols = rows.empty() ? cols_if_empty : rows.front().size();
  for (const Vec& r : rows)
    if (r.size() != m.cols) throw error("shape", "ragged rows in matrix");
  m.a = std::move(rows);
  return m;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.a[j][i] = m.a[i][j];
  return t;
}

namespace {

// Integer echelon form produced by Bareiss elimination, plus the pivot
// structure needed for back-substitution.
struct Echelon {
  std::vector<std::vector<Int>> m;
  std::vector<std::size_t> pivot_cols;  // strictly increasing
};

// Clear denominators row by row (multiplying a row by a positive constant
// changes neither rank, nullspace, nor the solution set of [M | b]).
std::vector<std::vector<Int>> integer_rows(const Mat& mat, const Vec* rhs) {
  std::vector<std::vector<Int>> out(mat.rows);
  for (std::size_t i = 0; i < mat.rows; ++i) {
    Int lcm = 1;
    auto fold = [&lcm](const Rat& x) {
      Int d = x.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    };
    for (const Rat& x : mat.a[i]) fold(x);
    if (rhs) fold((*rhs)[i]);
    std::vector<Int>& row = out[i];
    row.reserve(mat.cols + (rhs ? 1 : 0));
    auto scaled = [&lcm](const Rat& x) {
      Rat y = x * Rat(lcm);
      return Int(y.get_num());  // exact: lcm kills the denominator
    };
    for (const Rat& x : mat.a[i]) row.push_back(scaled(x));
    if (rhs) row.push_back(scaled((*rhs)[i]));
  }
  return out;
}

// Fraction-free elimination.  Pivots are searched in the first `pivot_width`
// columns only (so an augmented right-hand side column is never chosen as a
// pivot).  After the sweep, every row below the last pivot is zero throughout
// the pivot-eligible columns.
Echelon bareiss(std::vector<std::vector<Int>> m, std::size_t pivot_width) {
  Echelon e;
  const std::size_t R = m.size();
  const std::size_t C = R ? m[0].size() : 0;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_width && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < R; ++i) {
      for (std::size_t j = c + 1; j < C; ++j) {
        Int t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.m = std::move(m);
  return e;
}

}  // namespace

std::size_t rank(const Mat& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return bareiss(integer_rows(m, nullptr), m.cols).pivot_cols.size();
}

std::vector<Vec> nullspace(const Mat& m) {
  std::vector<Vec> basis;
  if (m.cols == 0) return basis;
  if (m.rows == 0) {
    // Kernel of an empty system is everything: standard basis of Q^cols.
    for (std::size_t j = 0; j < m.cols; ++j) {
      Vec e(m.cols, Rat(0));
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  Echelon e = bareiss(integer_rows(m, nullptr), m.cols);
  const std::size_t t = e.pivot_cols.size();
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(m.cols, Rat(0));
    x[f] = 1;
    for (std::size_t ii = t; ii-- > 0;) {
      std::size_t c = e.pivot_cols[ii];
      Rat acc = 0;
      for (std::size_t j = c + 1; j < m.cols; ++j)
        if (x[j] != 0) acc += Rat(e.m[ii][j]) * x[j];
      x[c] = -acc / Rat(e.m[ii][c]);
    }
    basis.push_back(canonical_scaled(x));
  }
  return basis;
}

SolveResult solve(const Mat& m, const Vec& b) {
  if (b.size() != m.rows) throw error("shape", "rhs length does not match rows");
  SolveResult res;
  if (m.rows == 0) {
    res.consistent = true;
    res.x.assign(m.cols, Rat(0));
    return res;
  }
  Echelon e = bareiss(integer_rows(m, &b), m.cols);
  const std::size_t t = e.pivot_cols.size();
  // Rows below the pivots are zero in the coefficient part; a nonzero
  // right-hand side there certifies inconsistency.
  for (std::size_t i = t; i < m.rows; ++i)
    if (e.m[i][m.cols] != 0) return res;  // res.consistent == false
  res.consistent = true;
  res.x.assign(m.cols, Rat(0));
  for (std::size_t ii = t; ii-- > 0;) {
    std::size_t c = e.pivot_cols[ii];
    Rat acc = Rat(e.m[ii][m.cols]);
    for (std::size_t j = c + 1; j < m.cols; ++j)
      if (res.x[j] != 0) acc -= Rat(e.m[ii][j]) * res.x[j];
    res.x[c] = acc / Rat(e.m[ii][c]);
  }
  return res;
}

Vec canonical_scaled(const Vec& v) {
  if (is_zero(v)) return Vec(v.size(), Rat(0));
  Int lcm = 1;
  for (const Rat& x : v) {
    Int d = x.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Int> w;
  w.reserve(v.size());
  for (const Rat& x : v) {
    Rat y = x * Rat(lcm);
    w.push_back(Int(y.get_num()));
  }
  Int g = 0;
  for (const Int& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  int lead_sign = 0;
  for (const Int& x : w) {
    if (x != 0) {
      lead_sign = sgn(x);
      break;
    }
  }
  if (lead_sign < 0) g = -g;
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(w[i] / g);
  return out;
}

}  // namespace discrim
