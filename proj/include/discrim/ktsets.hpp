#pragma once
// r-sets, K_T-translates, K_T-configurations and K_T-vector sets.
//
// A family T = {L_1, ..., L_r} of (k+1)-subsets is an r-set when its members
// pairwise intersect and the union is unchanged by deleting any single
// member.  A K_T-translate is a translate t for which each P_i, the common
// point of the hyperplanes of L_i, exists and lies on exactly those k+1
// hyperplanes.  The edge vectors v_{i,j} = P_j - P_i of the resulting point
// configuration, collected out of a base vertex i0, form the K_T-vector set
// of t; families of such sets are compared by the rank of their concatenated
// coordinate rows ("weak" linear independence).
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "discrim/discriminantal.hpp"

namespace discrim {

struct RSetCheck {
  bool valid = false;
  std::string violation;  // empty when valid
};

// Both r-set conditions, with a description of the first violation found.
RSetCheck validate_rset(const std::vector<IndexSet>& members, std::size_t n);

struct KTConfiguration {
  std::size_t k = 0;
  std::vector<Vec> points;  // P_1, ..., P_r

  // v_{i,j} = P_j - P_i (1-based endpoints).
  Vec edge(int i, int j) const;
};

struct KTVectorSet {
  int i0 = 1;           // base vertex
  std::size_t r = 0;    // number of configuration points
  std::vector<Vec> vecs;  // v_{i0,j} for j != i0, ascending j

  // v_{i0,j}; j = i0 yields the zero vector.
  Vec vec_to(int j) const;
};

// The translates realizing valid K_T data for T, parameterized by the
// concatenated base vectors (v_{1,2}, ..., v_{1,r}): the exact constraint
// space cut out by a_p . v_{i,j} = 0 for every pair i < j and every
// p in L_i intersect L_j whose normal appears in `normals`.  Returns a basis,
// each element reshaped into a KTVectorSet with i0 = 1.  Passing only the
// fixed normals of a partially specified arrangement yields the space the
// completion machinery samples from.
std::vector<KTVectorSet> vector_set_space(const std::map<int, Vec>& normals,
                                          const std::vector<IndexSet>& T,
                                          std::size_t k);

// A K_T-translate for T, sampled generically within the flat of T.  Returns
// nothing when no such translate exists at all (proved exactly: some
// hyperplane incidence beyond the L_i is forced on the entire flat, detected
// as a linear functional vanishing identically on the realizable vector-set
// space).  Throws error("undecided", ...) when sampling exhausts its budget
// without either finding a translate or proving absence.
std::optional<Vec> kt_translate(const Arrangement& A, const std::vector<IndexSet>& T,
                                const RunConfig& cfg);

// Points and edges at a translate where every P_i exists and is a point.
// Throws error("not a K_T translate", ...) naming the failing L_i otherwise.
KTConfiguration kt_configuration(const Arrangement& A, const std::vector<IndexSet>& T,
                                 const Vec& t);

KTVectorSet kt_vector_set(const KTConfiguration& cfg, int i0 = 1);

KTVectorSet vs_scale(const Rat& a, const KTVectorSet& V);
KTVectorSet vs_add(const KTVectorSet& V, const KTVectorSet& W);

// Rank of the d x (r-1)k matrix whose h-th row concatenates the h-th set's
// vectors; the sets are weakly linearly independent iff this equals d.
std::size_t weak_rank(const std::vector<KTVectorSet>& sets);

// Runtime assertion of the rank equivalence: the rank of the translates
// modulo the center must equal the weak rank of their extracted vector sets
// whenever the members of T cover all hyperplane indices.
bool independence_equivalence_check(const Arrangement& A,
                                    const std::vector<IndexSet>& T,
                                    const std::vector<Vec>& translates);

}  // namespace discrim
