#pragma once
// Central essential arrangements of n hyperplanes in Q^k and their generic
// translates.
//
// The base arrangement is stored as its list of normals a_1, ..., a_n.  A
// translate vector t in Q^n moves hyperplane i to { p : a_i . p = t_i }
// (t = 0 recovers the central arrangement).  All indices crossing the API are
// 1-based; internal storage is 0-based.
#include <cstddef>
#include <optional>
#include <vector>

#include "discrim/linalg.hpp"

namespace discrim {

// Sorted, distinct, 1-based hyperplane indices.
using IndexSet = std::vector<int>;

struct Arrangement {
  std::size_t k = 0;  // ambient dimension
  std::size_t n = 0;  // number of hyperplanes
  std::vector<Vec> normals;  // n vectors in Q^k

  const Vec& normal(int i) const { return normals[static_cast<std::size_t>(i - 1)]; }
};

// Throws error("shape", ...) when sizes are inconsistent, an index is out of
// range, a set has duplicates or is unsorted, or a normal is zero.
void validate_arrangement(const Arrangement& A);
void validate_index_set(const Arrangement& A, const IndexSet& S);

// Rows {a_p : p in S} stacked as a |S| x k matrix.
Mat normals_of(const Arrangement& A, const IndexSet& S);

struct GenericityReport {
  bool generic = false;
  IndexSet witness;  // lexicographically first dependent k-subset when not generic
};

// Central genericity: every k of the n normals are linearly independent.
// The parallel kernel enumerates k-subsets in lexicographic order in blocks
// and ranks each block concurrently, so the reported witness is always the
// lexicographically first failure regardless of worker count.
GenericityReport is_central_generic(const Arrangement& A);
GenericityReport is_central_generic_serial(const Arrangement& A);

// Directions of the flat cut out by the hyperplanes indexed by P in the
// central arrangement: a canonical basis of the intersection of the kernels
// ker(a_p).  Empty P yields the standard basis of Q^k.
std::vector<Vec> flat_direction(const Arrangement& A, const IndexSet& P);

// The common point of the translated hyperplanes {H_p^{t_p} : p in P}, if
// any.  Returns nothing when the system is inconsistent; throws
// error("not a point", ...) when it is consistent but not zero-dimensional.
std::optional<Vec> point_of(const Arrangement& A, const Vec& t, const IndexSet& P);

// Basis of the center: the image of c |-> (a_1 . c, ..., a_n . c), i.e. the
// translates that merely shift the whole picture by an ambient translation.
// Exactly k vectors for an essential arrangement.
std::vector<Vec> center_basis(const Arrangement& A);

// All i with a_i . p = t_i, ascending.
IndexSet hyperplanes_through(const Arrangement& A, const Vec& t, const Vec& p);

// Lexicographic enumeration of size-m subsets of {1, ..., n}.  `first` writes
// the initial subset; `advance` steps to the successor and reports whether one
// exists.  Used by every exhaustive kernel in the toolkit.
IndexSet first_subset(std::size_t m);
bool advance_subset(IndexSet& s, std::size_t n);

}  // namespace discrim
