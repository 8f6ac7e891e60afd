#pragma once
// The discriminantal arrangement of a central essential generic arrangement.
//
// For every (k+1)-subset L of hyperplanes, the translates t for which the
// hyperplanes {H_p^{t_p} : p in L} share a point form a hyperplane D_L in the
// translate space Q^n; its normal w_L is the (unique up to scale) left kernel
// vector of the stacked normals of L, embedded in Q^n with support exactly L.
// A family T = {L_1, ..., L_r} cuts out the flat D_{L_1} cap ... cap D_{L_r};
// when that flat is "simple" (it coincides with no single D_S for |S| > k+1,
// on any subfamily) and its codimension is smaller than r, the base
// arrangement cannot be very generic.  This header provides the exact
// machinery for those checks plus an exhaustive scanner.
#include <cstddef>
#include <optional>
#include <vector>

#include "discrim/arrangement.hpp"
#include "discrim/rng.hpp"

namespace discrim {

struct DiscHyperplane {
  IndexSet L;  // the defining (k+1)-subset
  Vec w;       // canonical integer normal in Q^n, support(w) = L
};

// Normal of D_L.  Throws error("arity", ...) when |L| != k+1 and
// error("not generic", ...) when the normals of L do not have full rank k
// with every k-subset independent (detected as nullspace dimension != 1 or a
// vanishing coordinate on L).
DiscHyperplane disc_normal(const Arrangement& A, const IndexSet& L);

// Memoized table of all C(n, k+1) discriminantal normals in lexicographic
// order.  Subsets whose normals are degenerate (disc_normal would throw) are
// kept as empty optionals and skipped by the scanner.
struct DiscTable {
  std::vector<IndexSet> subsets;
  std::vector<std::optional<Vec>> w;

  std::optional<std::size_t> index_of(const IndexSet& L) const;
};
DiscTable build_disc_table(const Arrangement& A, bool parallel = true);

struct Flat {
  std::vector<DiscHyperplane> generators;
  std::size_t rank = 0;    // codimension of the flat in Q^n
  std::vector<Vec> basis;  // canonical basis of the flat itself
};

// The flat cut out by the given family of (k+1)-subsets, with its rank.
Flat flat_of(const Arrangement& A, const std::vector<IndexSet>& members);

// A generic point of the flat: a translate t lying on the flat and on no
// discriminantal hyperplane other than the forced ones (those containing the
// whole flat, equivalently whose normals lie in the row span of the
// generators).  Sampling is seeded and retried with a doubling coordinate
// bound; throws error("no generic point found", ...) once the budget is
// exhausted.
Vec generic_point_of_flat(const Arrangement& A, const std::vector<IndexSet>& members,
                          const RunConfig& cfg);

struct PointAudit {
  Vec point;        // a point of the translated arrangement
  IndexSet through; // every hyperplane index passing through it
};

// All concurrencies of the translated arrangement A^t: each maximal point
// lying on at least k+1 hyperplanes, plus any positive-dimensional
// intersections of that many hyperplanes (possible only for degenerate
// normal content).
struct Concurrency {
  std::vector<PointAudit> points;
  std::vector<IndexSet> degenerate;  // through-sets of non-point concurrencies
};
Concurrency audit_concurrencies(const Arrangement& A, const Vec& t);

// Exact simplicity check for the flat of T: for every subfamily I of at
// least two members, the intersection of the D_{L_i} (i in I) must differ
// from every single D_S with |S| > k+1.  A generic sample of each subflat is
// audited; a clean audit (no point on more than k+1 hyperplanes) certifies
// the condition outright, and any fat incidence falls back to an exact
// subspace-equality test over the candidate sets S it exposes.
struct SimplicityCheck {
  bool simple = false;
  Vec sample;                      // generic point of the full flat
  std::vector<PointAudit> audit;   // audit[i] describes P_{i+1} at the sample
  std::vector<int> violating_members;  // 1-based indices into T, empty if simple
  IndexSet violating_S;
};
SimplicityCheck is_simple(const Arrangement& A, const std::vector<IndexSet>& T,
                          const RunConfig& cfg);

struct WitnessReport {
  std::vector<IndexSet> T;
  std::size_t multiplicity = 0;  // r, the number of members
  std::size_t rank = 0;          // rank of the flat of T
  bool simple = false;
  bool non_very_generic = false;  // simple && rank < multiplicity
  Vec sample_translate;
  std::vector<IndexSet> audit;  // audit[i] = hyperplanes through P_{i+1}
};

// Full witness evaluation of a family: flat rank, simplicity, verdict.
WitnessReport detect_nonverygeneric(const Arrangement& A,
                                    const std::vector<IndexSet>& T,
                                    const RunConfig& cfg);

// rank of the span of the given translates modulo the center, i.e.
// rank(translates together with a center basis) - k.
std::size_t translate_rank_mod_center(const Arrangement& A,
                                      const std::vector<Vec>& translates);

struct ScanOptions {
  std::size_t r_max = 3;
  // Keep only families meeting the full r-set conditions (pairwise nonempty
  // intersections, union stable under deleting any member).  Turning this off
  // widens the search to all pairwise-intersecting families.
  bool rset_only = true;
  // Restrict candidates to complement families of equal-block partitions of
  // {1..n} (block size n-k-1) instead of enumerating all families.
  bool partition_complement = false;
  std::size_t max_candidates = 500000;
};

struct ScanResult {
  std::vector<WitnessReport> witnesses;  // sorted by family, lexicographically
  bool truncated = false;                // candidate budget exceeded
  std::size_t candidates = 0;
  std::size_t survivors = 0;  // families passing the rank filter
};

// Exhaustive witness scan: enumerate candidate families in lexicographic
// order (pairwise-intersecting members, rank filter first, exact simplicity
// last).  The parallel kernel distributes the rank filter over blocks and
// derives per-candidate sub-seeds from the candidate's position, so output is
// independent of worker count.
ScanResult scan(const Arrangement& A, const ScanOptions& opts, const RunConfig& cfg);
ScanResult scan_serial(const Arrangement& A, const ScanOptions& opts, const RunConfig& cfg);

}  // namespace discrim
