#include "discrim/ktsets.hpp"

#include <algorithm>
#include <set>

namespace discrim {

namespace {

std::string join_indices(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

IndexSet union_of(const std::vector<IndexSet>& members) {
  std::set<int> u;
  for (const IndexSet& L : members) u.insert(L.begin(), L.end());
  return IndexSet(u.begin(), u.end());
}

void basic_family_checks(const Arrangement& A, const std::vector<IndexSet>& T) {
  if (T.size() < 2) throw error("shape", "family needs at least two members");
  for (const IndexSet& L : T) {
    validate_index_set(A, L);
    if (L.size() != A.k + 1)
      throw error("arity", "family member " + join_indices(L) + " is not a (k+1)-subset");
  }
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size(); ++j)
      if (T[i] == T[j]) throw error("shape", "family members must be pairwise distinct");
}

}  // namespace

RSetCheck validate_rset(const std::vector<IndexSet>& members, std::size_t n) {
  RSetCheck out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    int prev = 0;
    for (int p : members[i]) {
      if (p <= prev || p < 1 || static_cast<std::size_t>(p) > n) {
        out.violation = "member " + std::to_string(i + 1) +
                        " is not a sorted subset of {1..n}";
        return out;
      }
      prev = p;
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) {
        out.violation = "members " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " are equal";
        return out;
      }
      IndexSet meet;
      std::set_intersection(members[i].begin(), members[i].end(),
                            members[j].begin(), members[j].end(),
                            std::back_inserter(meet));
      if (meet.empty()) {
        out.violation = "members " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " are disjoint";
        return out;
      }
    }
  // Union stability: deleting any single member must not change the union,
  // i.e. every index of the union is covered by at least two members.
  IndexSet full = union_of(members);
  for (std::size_t drop = 0; drop < members.size(); ++drop) {
    std::vector<IndexSet> rest;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (i != drop) rest.push_back(members[i]);
    if (union_of(rest) != full) {
      out.violation =
          "union changes when member " + std::to_string(drop + 1) + " is removed";
      return out;
    }
  }
  out.valid = true;
  return out;
}

Vec KTConfiguration::edge(int i, int j) const {
  return vsub(points[static_cast<std::size_t>(j - 1)],
              points[static_cast<std::size_t>(i - 1)]);
}

Vec KTVectorSet::vec_to(int j) const {
  if (j == i0) return Vec(vecs.empty() ? 0 : vecs[0].size(), Rat(0));
  std::size_t pos = static_cast<std::size_t>(j - 1);
  if (j > i0) --pos;
  return vecs[pos];
}

std::vector<KTVectorSet> vector_set_space(const std::map<int, Vec>& normals,
                                          const std::vector<IndexSet>& T,
                                          std::size_t k) {
  const std::size_t r = T.size();
  if (r < 2) throw error("shape", "family needs at least two members");
  const std::size_t width = (r - 1) * k;
  // Unknown x = (v_{1,2}, ..., v_{1,r}); block j-2 holds v_{1,j}.
  std::vector<Vec> rows;
  auto add_row = [&](const Vec& a, int jpos, int ipos) {
    // a . (v_{1,j} - v_{1,i}) = 0, with v_{1,1} = 0 encoded as block -1.
    Vec row(width, Rat(0));
    if (jpos >= 0)
      for (std::size_t c = 0; c < k; ++c) row[static_cast<std::size_t>(jpos) * k + c] = a[c];
    if (ipos >= 0)
      for (std::size_t c = 0; c < k; ++c) row[static_cast<std::size_t>(ipos) * k + c] -= a[c];
    rows.push_back(std::move(row));
  };
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = i + 1; j <= r; ++j) {
      IndexSet meet;
      std::set_intersection(T[i - 1].begin(), T[i - 1].end(), T[j - 1].begin(),
                            T[j - 1].end(), std::back_inserter(meet));
      for (int p : meet) {
        auto it = normals.find(p);
        if (it == normals.end()) continue;  // unspecified normal: no constraint yet
        if (it->second.size() != k) throw error("shape", "normal has wrong dimension");
        add_row(it->second, static_cast<int>(j) - 2, static_cast<int>(i) - 2);
      }
    }
  std::vector<Vec> basis = nullspace(mat_from_rows(std::move(rows), width));
  std::vector<KTVectorSet> out;
  for (const Vec& b : basis) {
    KTVectorSet V;
    V.i0 = 1;
    V.r = r;
    for (std::size_t j = 0; j + 1 < r; ++j)
      V.vecs.emplace_back(b.begin() + static_cast<std::ptrdiff_t>(j * k),
                          b.begin() + static_cast<std::ptrdiff_t>((j + 1) * k));
    out.push_back(std::move(V));
  }
  return out;
}

std::optional<Vec> kt_translate(const Arrangement& A, const std::vector<IndexSet>& T,
                                const RunConfig& cfg) {
  basic_family_checks(A, T);
  const std::size_t r = T.size();
  Flat flat = flat_of(A, T);

  std::map<int, Vec> all;
  for (std::size_t i = 1; i <= A.n; ++i) all[static_cast<int>(i)] = A.normal(static_cast<int>(i));
  std::vector<KTVectorSet> space = vector_set_space(all, T, A.k);

  // Forced-incidence analysis: P_i lands on H_q (q in some L_j, q not in L_i)
  // exactly when a_q . v_{i,j} = 0.  If that functional vanishes on the whole
  // realizable vector-set space, every translate of the flat carries the
  // extra incidence and no K_T-translate can exist -- the absence is proved,
  // not merely unobserved.  (Indices outside every L_j have a free translate
  // coordinate, so they never force anything.)
  IndexSet uni = union_of(T);
  for (std::size_t i = 1; i <= r; ++i) {
    for (int q : uni) {
      const IndexSet& Li = T[i - 1];
      if (std::binary_search(Li.begin(), Li.end(), q)) continue;
      std::size_t j = 0;
      for (std::size_t jj = 1; jj <= r; ++jj)
        if (jj != i && std::binary_search(T[jj - 1].begin(), T[jj - 1].end(), q)) {
          j = jj;
          break;
        }
      if (j == 0) continue;
      bool vanishes_everywhere = true;
      for (const KTVectorSet& B : space) {
        Vec vij = vsub(B.vec_to(static_cast<int>(j)), B.vec_to(static_cast<int>(i)));
        if (dot(A.normal(q), vij) != 0) {
          vanishes_everywhere = false;
          break;
        }
      }
      if (vanishes_everywhere) return std::nullopt;
    }
  }

  // No obstruction: strict translates are generic in the flat; sample one.
  Rng rng(cfg.seed);
  std::int64_t bound = cfg.coordinate_bound;
  for (unsigned attempt = 0; attempt < cfg.sample_budget; ++attempt, bound *= 2) {
    Vec t(A.n, Rat(0));
    for (const Vec& b : flat.basis) {
      std::int64_t c = rng.uniform(-bound, bound);
      if (c == 0) continue;
      Rat cr(c);
      for (std::size_t x = 0; x < A.n; ++x) t[x] += cr * b[x];
    }
    bool ok = true;
    for (std::size_t i = 1; i <= r && ok; ++i) {
      std::optional<Vec> p;
      try {
        p = point_of(A, t, T[i - 1]);
      } catch (const error& e) {
        if (e.kind != "not a point") throw;
        ok = false;
        break;
      }
      ok = p && hyperplanes_through(A, t, *p) == T[i - 1];
    }
    if (ok) return t;
  }
  throw error("undecided", "sampling budget exhausted before finding a K_T-translate");
}

KTConfiguration kt_configuration(const Arrangement& A, const std::vector<IndexSet>& T,
                                 const Vec& t) {
  basic_family_checks(A, T);
  if (t.size() != A.n) throw error("shape", "translate has wrong length");
  KTConfiguration cfg;
  cfg.k = A.k;
  for (const IndexSet& L : T) {
    std::optional<Vec> p;
    try {
      p = point_of(A, t, L);
    } catch (const error& e) {
      if (e.kind != "not a point") throw;
      throw error("not a K_T translate",
                  "hyperplanes of " + join_indices(L) + " meet in a positive-dimensional set");
    }
    if (!p)
      throw error("not a K_T translate",
                  "hyperplanes of " + join_indices(L) + " have no common point");
    cfg.points.push_back(std::move(*p));
  }
  return cfg;
}

KTVectorSet kt_vector_set(const KTConfiguration& cfg, int i0) {
  const std::size_t r = cfg.points.size();
  if (i0 < 1 || static_cast<std::size_t>(i0) > r)
    throw error("shape", "base index out of range");
  KTVectorSet V;
  V.i0 = i0;
  V.r = r;
  for (std::size_t j = 1; j <= r; ++j) {
    if (static_cast<int>(j) == i0) continue;
    V.vecs.push_back(vsub(cfg.points[j - 1], cfg.points[static_cast<std::size_t>(i0 - 1)]));
  }
  return V;
}

KTVectorSet vs_scale(const Rat& a, const KTVectorSet& V) {
  KTVectorSet out = V;
  for (Vec& v : out.vecs) v = vscale(a, v);
  return out;
}

KTVectorSet vs_add(const KTVectorSet& V, const KTVectorSet& W) {
  if (V.i0 != W.i0 || V.r != W.r || V.vecs.size() != W.vecs.size())
    throw error("shape", "vector sets have mismatched base index or arity");
  KTVectorSet out = V;
  for (std::size_t i = 0; i < out.vecs.size(); ++i)
    out.vecs[i] = vadd(out.vecs[i], W.vecs[i]);
  return out;
}

std::size_t weak_rank(const std::vector<KTVectorSet>& sets) {
  if (sets.empty()) return 0;
  const int i0 = sets.front().i0;
  const std::size_t r = sets.front().r;
  std::size_t width = 0;
  for (const Vec& v : sets.front().vecs) width += v.size();
  std::vector<Vec> rows;
  for (const KTVectorSet& V : sets) {
    if (V.i0 != i0 || V.r != r)
      throw error("shape", "vector sets must share base index and arity");
    Vec row;
    row.reserve(width);
    for (const Vec& v : V.vecs) row.insert(row.end(), v.begin(), v.end());
    if (row.size() != width) throw error("shape", "vector sets have ragged dimensions");
    rows.push_back(std::move(row));
  }
  return rank(mat_from_rows(std::move(rows), width));
}

bool independence_equivalence_check(const Arrangement& A,
                                    const std::vector<IndexSet>& T,
                                    const std::vector<Vec>& translates) {
  basic_family_checks(A, T);
  IndexSet uni = union_of(T);
  if (uni.size() != A.n)
    throw error("shape", "the members of T must cover every hyperplane index");
  std::vector<KTVectorSet> sets;
  for (const Vec& t : translates)
    sets.push_back(kt_vector_set(kt_configuration(A, T, t), 1));
  return translate_rank_mod_center(A, translates) == weak_rank(sets);
}

}  // namespace discrim
