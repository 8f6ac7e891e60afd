#pragma once
// Exact rational linear algebra on small dense matrices.
//
// Rank, nullspace and linear solving all run through fraction-free Bareiss
// elimination: rows are first scaled to integers, then eliminated with the
// two-step determinant identity, which keeps every intermediate entry a minor
// of the input and bounds coefficient growth far better than naive rational
// Gaussian elimination.  Back-substitution afterwards is done in rationals,
// which is cheap because only the echelon rows remain.
#include <cstddef>
#include <vector>

#include "discrim/rat.hpp"

namespace discrim {

// Dense row-major matrix.  `cols` is carried explicitly so a matrix with zero
// rows still knows its width (the nullspace of a 0 x c matrix is all of Q^c).
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Vec> a;  // a.size() == rows, each entry of size cols

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r, Vec(c, Rat(0))) {}
};

// Build a matrix from a list of equally sized rows.  `cols_if_empty` supplies
// the width when the list is empty.
Mat mat_from_rows(std::vector<Vec> rows, std::size_t cols_if_empty = 0);

Mat transpose(const Mat& m);

std::size_t rank(const Mat& m);

// Canonical basis of the right nullspace: one basis vector per free column in
// ascending column order, each vector having coordinate 1 at its free column
// and 0 at the other free columns, then canonically scaled.  This
// parameterization is unique, so results are independent of elimination
// details.  Empty basis means the kernel is trivial.
std::vector<Vec> nullspace(const Mat& m);

struct SolveResult {
  bool consistent = false;
  Vec x;  // pivot solution with all free variables set to 0 (minimal support)
};

// Solve m * x = b exactly.  When the system is consistent the returned vector
// is the unique solution with every free variable equal to zero.
SolveResult solve(const Mat& m, const Vec& b);

// Scale a rational vector to the canonical integer representative of its ray:
// all entries integral, gcd of entries 1, first nonzero entry positive.  The
// zero vector maps to itself.
Vec canonical_scaled(const Vec& v);

}  // namespace discrim
