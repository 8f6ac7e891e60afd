#include "discrim/arrangement.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discrim {

void validate_arrangement(const Arrangement& A) {
  if (A.k == 0) throw error("shape", "ambient dimension must be positive");
  if (A.normals.size() != A.n) throw error("shape", "normal count does not match n");
  for (std::size_t i = 0; i < A.n; ++i) {
    if (A.normals[i].size() != A.k)
      throw error("shape", "normal has wrong dimension");
    if (is_zero(A.normals[i])) throw error("shape", "zero normal vector");
  }
}

void validate_index_set(const Arrangement& A, const IndexSet& S) {
  int prev = 0;
  for (int i : S) {
    if (i <= prev) throw error("shape", "index set must be sorted and distinct");
    if (i < 1 || static_cast<std::size_t>(i) > A.n)
      throw error("shape", "hyperplane index out of range");
    prev = i;
  }
}

Mat normals_of(const Arrangement& A, const IndexSet& S) {
  std::vector<Vec> rows;
  rows.reserve(S.size());
  for (int p : S) rows.push_back(A.normal(p));
  return mat_from_rows(std::move(rows), A.k);
}

IndexSet first_subset(std::size_t m) {
  IndexSet s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<int>(i + 1);
  return s;
}

bool advance_subset(IndexSet& s, std::size_t n) {
  const int m = static_cast<int>(s.size());
  for (int i = m - 1; i >= 0; --i) {
    if (s[static_cast<std::size_t>(i)] < static_cast<int>(n) - (m - 1 - i)) {
      ++s[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j)
        s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

namespace {

// Shared scaffolding for the serial and parallel genericity kernels: the
// enumeration stays serial (cheap) while the rank tests, the expensive part,
// run over fixed blocks.  Blocks are processed in lexicographic order and the
// first block containing a failure decides, so the parallel kernel returns
// the same witness as the serial one.
GenericityReport generic_scan(const Arrangement& A, bool parallel) {
  validate_arrangement(A);
  GenericityReport rep;
  rep.generic = true;
  if (A.n < A.k) {
    // Fewer than k normals cannot span Q^k; flag the full set.
    rep.generic = false;
    rep.witness = first_subset(A.n);
    return rep;
  }
  constexpr std::size_t kBlock = 2048;
  IndexSet cur = first_subset(A.k);
  bool more = true;
  std::vector<IndexSet> block;
  block.reserve(kBlock);
  while (more) {
    block.clear();
    while (more && block.size() < kBlock) {
      block.push_back(cur);
      more = advance_subset(cur, A.n);
    }
    const std::ptrdiff_t none = static_cast<std::ptrdiff_t>(block.size());
    std::ptrdiff_t hit = none;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(min : hit)
#endif
      for (std::ptrdiff_t b = 0; b < none; ++b) {
        if (rank(normals_of(A, block[static_cast<std::size_t>(b)])) < A.k)
          hit = std::min(hit, b);
      }
    } else {
      for (std::ptrdiff_t b = 0; b < none; ++b) {
        if (rank(normals_of(A, block[static_cast<std::size_t>(b)])) < A.k) {
          hit = b;
          break;
        }
      }
    }
    if (hit < none) {
      rep.generic = false;
      rep.witness = block[static_cast<std::size_t>(hit)];
      return rep;
    }
  }
  return rep;
}

}  // namespace

GenericityReport is_central_generic_serial(const Arrangement& A) {
  return generic_scan(A, false);
}

GenericityReport is_central_generic(const Arrangement& A) {
  return generic_scan(A, true);
}

std::vector<Vec> flat_direction(const Arrangement& A, const IndexSet& P) {
  validate_arrangement(A);
  validate_index_set(A, P);
  return nullspace(normals_of(A, P));
}

std::optional<Vec> point_of(const Arrangement& A, const Vec& t, const IndexSet& P) {
  validate_arrangement(A);
  validate_index_set(A, P);
  if (t.size() != A.n) throw error("shape", "translate has wrong length");
  Mat M = normals_of(A, P);
  Vec b;
  b.reserve(P.size());
  for (int p : P) b.push_back(t[static_cast<std::size_t>(p - 1)]);
  SolveResult s = solve(M, b);
  if (!s.consistent) return std::nullopt;
  if (rank(M) < A.k)
    throw error("not a point", "the hyperplanes meet in a positive-dimensional flat");
  return s.x;
}

std::vector<Vec> center_basis(const Arrangement& A) {
  validate_arrangement(A);
  // Columns of the stacked normal matrix: image of c |-> (a_i . c)_i.
  std::vector<Vec> cols;
  cols.reserve(A.k);
  for (std::size_t j = 0; j < A.k; ++j) {
    Vec col(A.n);
    for (std::size_t i = 0; i < A.n; ++i) col[i] = A.normals[i][j];
    cols.push_back(canonical_scaled(col));
  }
  return cols;
}

IndexSet hyperplanes_through(const Arrangement& A, const Vec& t, const Vec& p) {
  validate_arrangement(A);
  if (t.size() != A.n) throw error("shape", "translate has wrong length");
  if (p.size() != A.k) throw error("shape", "point has wrong dimension");
  IndexSet out;
  for (std::size_t i = 0; i < A.n; ++i)
    if (dot(A.normals[i], p) == t[i]) out.push_back(static_cast<int>(i + 1));
  return out;
}

}  // namespace discrim
