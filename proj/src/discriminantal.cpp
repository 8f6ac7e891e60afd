#include "discrim/discriminantal.hpp"

#include <algorithm>
#include <map>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

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

Vec restrict_to(const Vec& t, const IndexSet& S) {
  Vec b;
  b.reserve(S.size());
  for (int p : S) b.push_back(t[static_cast<std::size_t>(p - 1)]);
  return b;
}

// Is the translate t on D_M, i.e. do the translated hyperplanes of M share a
// point?  Decided by direct consistency, which stays meaningful even when the
// normal content of M is degenerate and w_M does not exist.
bool concurrent_at(const Arrangement& A, const Vec& t, const IndexSet& M) {
  return solve(normals_of(A, M), restrict_to(t, M)).consistent;
}

// Does the whole flat (given by a basis of translates) lie inside D_S?  D_S
// is a linear subspace of the translate space, so it suffices to test the
// basis vectors.
bool flat_within(const Arrangement& A, const std::vector<Vec>& flat_basis,
                 const IndexSet& S) {
  Mat M = normals_of(A, S);
  for (const Vec& b : flat_basis)
    if (!solve(M, restrict_to(b, S)).consistent) return false;
  return true;
}

void validate_family(const Arrangement& A, const std::vector<IndexSet>& T) {
  if (T.size() < 2) throw error("shape", "family needs at least two members");
  for (const IndexSet& L : T) {
    validate_index_set(A, L);
    if (L.size() != A.k + 1)
      throw error("arity", "family member " + join_indices(L) + " is not a (k+1)-subset");
  }
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size(); ++j)
      if (T[i] == T[j])
        throw error("shape", "family members must be pairwise distinct");
}

}  // namespace

DiscHyperplane disc_normal(const Arrangement& A, const IndexSet& L) {
  validate_arrangement(A);
  validate_index_set(A, L);
  if (L.size() != A.k + 1)
    throw error("arity", "expected a (k+1)-subset, got " + join_indices(L));
  // Left kernel of the stacked normals = right kernel of their transpose.
  std::vector<Vec> ns = nullspace(transpose(normals_of(A, L)));
  if (ns.size() != 1)
    throw error("not generic", "normals of " + join_indices(L) + " have deficient rank");
  for (const Rat& c : ns[0])
    if (c == 0)
      throw error("not generic",
                  "a k-subset of " + join_indices(L) + " is linearly dependent");
  DiscHyperplane D;
  D.L = L;
  D.w.assign(A.n, Rat(0));
  for (std::size_t j = 0; j < L.size(); ++j)
    D.w[static_cast<std::size_t>(L[j] - 1)] = ns[0][j];
  D.w = canonical_scaled(D.w);
  return D;
}

std::optional<std::size_t> DiscTable::index_of(const IndexSet& L) const {
  auto it = std::lower_bound(subsets.begin(), subsets.end(), L);
  if (it == subsets.end() || *it != L) return std::nullopt;
  return static_cast<std::size_t>(it - subsets.begin());
}

DiscTable build_disc_table(const Arrangement& A, bool parallel) {
  validate_arrangement(A);
  DiscTable table;
  if (A.n < A.k + 1) return table;
  IndexSet cur = first_subset(A.k + 1);
  do {
    table.subsets.push_back(cur);
  } while (advance_subset(cur, A.n));
  table.w.resize(table.subsets.size());
  auto fill = [&](std::size_t i) {
    try {
      table.w[i] = disc_normal(A, table.subsets[i]).w;
    } catch (const error& e) {
      if (e.kind != "not generic") throw;
      table.w[i] = std::nullopt;  // degenerate content: skipped by consumers
    }
  };
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(table.subsets.size()); ++i)
      fill(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < table.subsets.size(); ++i) fill(i);
  }
  return table;
}

Flat flat_of(const Arrangement& A, const std::vector<IndexSet>& members) {
  validate_arrangement(A);
  Flat f;
  std::vector<Vec> rows;
  for (const IndexSet& L : members) {
    f.generators.push_back(disc_normal(A, L));
    rows.push_back(f.generators.back().w);
  }
  Mat W = mat_from_rows(std::move(rows), A.n);
  f.rank = rank(W);
  f.basis = nullspace(W);
  return f;
}

namespace {

// Indices of every (k+1)-subset whose discriminantal hyperplane contains the
// whole flat.  Where w exists this is exactly row-span membership of w in the
// generators; degenerate-content subsets fall back to the basis test so that
// nothing is silently misclassified.
std::vector<bool> forced_mask(const Arrangement& A, const Flat& flat,
                              const DiscTable& table) {
  std::vector<Vec> gen_rows;
  for (const DiscHyperplane& g : flat.generators) gen_rows.push_back(g.w);
  const std::size_t base_rank = flat.rank;
  std::vector<bool> forced(table.subsets.size(), false);
  for (std::size_t i = 0; i < table.subsets.size(); ++i) {
    if (table.w[i]) {
      std::vector<Vec> rows = gen_rows;
      rows.push_back(*table.w[i]);
      forced[i] = rank(mat_from_rows(std::move(rows), A.n)) == base_rank;
    } else {
      forced[i] = flat_within(A, flat.basis, table.subsets[i]);
    }
  }
  return forced;
}

Vec sample_flat_point(const Arrangement& A, const Flat& flat, const DiscTable& table,
                      const std::vector<bool>& forced, const RunConfig& cfg,
                      std::string* last_extras) {
  Rng rng(cfg.seed);
  std::int64_t bound = cfg.coordinate_bound;
  for (unsigned attempt = 0; attempt < cfg.sample_budget; ++attempt) {
    Vec t(A.n, Rat(0));
    for (const Vec& b : flat.basis) {
      std::int64_t c = rng.uniform(-bound, bound);
      if (c == 0) continue;
      Rat cr(c);
      for (std::size_t j = 0; j < A.n; ++j) t[j] += cr * b[j];
    }
    bool clean = true;
    std::string extras;
    for (std::size_t i = 0; i < table.subsets.size(); ++i) {
      if (forced[i]) continue;
      bool incident = table.w[i] ? (dot(*table.w[i], t) == 0)
                                 : concurrent_at(A, t, table.subsets[i]);
      if (incident) {
        clean = false;
        if (last_extras) extras += (extras.empty() ? "" : " ") + join_indices(table.subsets[i]);
        if (!last_extras) break;
      }
    }
    if (clean) return t;
    if (last_extras) *last_extras = extras;
    bound *= 2;
  }
  throw error("no generic point found",
              "sampling budget exhausted; extra incidences of last sample: " +
                  (last_extras && !last_extras->empty() ? *last_extras : "(none)"));
}

Vec generic_point_impl(const Arrangement& A, const std::vector<IndexSet>& members,
                       const RunConfig& cfg, const DiscTable& table) {
  Flat flat = flat_of(A, members);
  if (flat.basis.empty()) throw error("shape", "flat is zero-dimensional");
  std::vector<bool> forced = forced_mask(A, flat, table);
  std::string extras;
  Vec t = sample_flat_point(A, flat, table, forced, cfg, &extras);
  // Exact a-posteriori membership check: the sample must lie on every
  // generator (defensive; linearity guarantees it).
  for (const DiscHyperplane& g : flat.generators)
    if (dot(g.w, t) != 0) throw error("internal", "sample fell off the flat");
  return t;
}

}  // namespace

Vec generic_point_of_flat(const Arrangement& A, const std::vector<IndexSet>& members,
                          const RunConfig& cfg) {
  DiscTable table = build_disc_table(A, false);
  return generic_point_impl(A, members, cfg, table);
}

Concurrency audit_concurrencies(const Arrangement& A, const Vec& t) {
  validate_arrangement(A);
  if (t.size() != A.n) throw error("shape", "translate has wrong length");
  Concurrency out;
  if (A.n < A.k + 1) return out;
  std::map<std::string, PointAudit> points;
  std::vector<IndexSet> degenerate;
  IndexSet M = first_subset(A.k + 1);
  do {
    Mat N = normals_of(A, M);
    SolveResult s = solve(N, restrict_to(t, M));
    if (!s.consistent) continue;
    std::vector<Vec> dirs = nullspace(N);
    if (dirs.empty()) {
      std::string key;
      for (const Rat& c : s.x) key += format_rat(c) + ",";
      if (!points.count(key))
        points[key] = PointAudit{s.x, hyperplanes_through(A, t, s.x)};
    } else {
      // Positive-dimensional concurrency (degenerate normal content): record
      // the set of hyperplanes containing the whole affine piece.
      IndexSet through;
      for (std::size_t q = 0; q < A.n; ++q) {
        if (dot(A.normals[q], s.x) != t[q]) continue;
        bool contains = true;
        for (const Vec& d : dirs)
          if (dot(A.normals[q], d) != 0) {
            contains = false;
            break;
          }
        if (contains) through.push_back(static_cast<int>(q + 1));
      }
      if (std::find(degenerate.begin(), degenerate.end(), through) == degenerate.end())
        degenerate.push_back(through);
    }
  } while (advance_subset(M, A.n));
  for (auto& [key, audit] : points) out.points.push_back(std::move(audit));
  std::sort(out.points.begin(), out.points.end(),
            [](const PointAudit& a, const PointAudit& b) { return a.through < b.through; });
  std::sort(degenerate.begin(), degenerate.end());
  out.degenerate = std::move(degenerate);
  return out;
}

namespace {

// The exact simplicity verdict for one subfamily: any point (or degenerate
// piece) of the sampled translate lying on more than k+1 hyperplanes yields
// candidate sets S; the subflat equals D_S only if the dimensions agree and
// every basis translate of the subflat keeps S concurrent.  Both checks are
// exact, so a fat incidence that does not produce an equal D_S is tolerated
// (the flat merely sits inside a thicker stratum, which the definition
// allows).
std::optional<IndexSet> equality_violation(const Arrangement& A, const Flat& flat,
                                           const Concurrency& conc) {
  std::vector<IndexSet> fat_sets;
  for (const PointAudit& p : conc.points)
    if (p.through.size() > A.k + 1) fat_sets.push_back(p.through);
  for (const IndexSet& d : conc.degenerate)
    if (d.size() > A.k + 1) fat_sets.push_back(d);
  for (const IndexSet& F : fat_sets) {
    const std::size_t lo = A.k + 2;
    const std::size_t hi = std::min(F.size(), A.k + flat.rank);
    for (std::size_t s = lo; s <= hi; ++s) {
      if (s <= flat.rank) continue;  // rank(a_S) = s - flat.rank >= 1 is needed
      IndexSet pick = first_subset(s);  // positions into F
      do {
        IndexSet S;
        S.reserve(s);
        for (int pos : pick) S.push_back(F[static_cast<std::size_t>(pos - 1)]);
        if (rank(normals_of(A, S)) != s - flat.rank) continue;  // dim D_S mismatch
        if (flat_within(A, flat.basis, S)) return S;
      } while (advance_subset(pick, F.size()));
    }
  }
  return std::nullopt;
}

SimplicityCheck is_simple_impl(const Arrangement& A, const std::vector<IndexSet>& T,
                               const RunConfig& cfg, const DiscTable& table) {
  validate_family(A, T);
  const std::size_t r = T.size();
  SimplicityCheck chk;
  chk.simple = true;
  std::size_t task_index = 0;
  for (std::size_t size = 2; size <= r; ++size) {
    IndexSet I = first_subset(size);  // 1-based positions into T
    do {
      std::vector<IndexSet> members;
      for (int i : I) members.push_back(T[static_cast<std::size_t>(i - 1)]);
      Flat flat = flat_of(A, members);
      RunConfig sub = cfg;
      sub.seed = cfg.seed + task_index;
      Vec t;
      try {
        t = generic_point_impl(A, members, sub, table);
      } catch (const error& e) {
        if (e.kind == "no generic point found")
          throw error("undecided", "no generic sample for subfamily " +
                                        join_indices(I) + ": " + e.what());
        throw;
      }
      Concurrency conc = audit_concurrencies(A, t);
      if (size == r) {
        chk.sample = t;
        for (const IndexSet& L : T) {
          Vec p = point_of(A, t, L).value();
          chk.audit.push_back(PointAudit{p, hyperplanes_through(A, t, p)});
        }
      }
      if (chk.simple) {
        if (std::optional<IndexSet> S = equality_violation(A, flat, conc)) {
          chk.simple = false;
          chk.violating_members.assign(I.begin(), I.end());
          chk.violating_S = *S;
        }
      }
      ++task_index;
    } while (advance_subset(I, r));
  }
  return chk;
}

}  // namespace

SimplicityCheck is_simple(const Arrangement& A, const std::vector<IndexSet>& T,
                          const RunConfig& cfg) {
  DiscTable table = build_disc_table(A, false);
  return is_simple_impl(A, T, cfg, table);
}

WitnessReport detect_nonverygeneric(const Arrangement& A,
                                    const std::vector<IndexSet>& T,
                                    const RunConfig& cfg) {
  validate_family(A, T);
  WitnessReport rep;
  rep.T = T;
  rep.multiplicity = T.size();
  rep.rank = flat_of(A, T).rank;
  SimplicityCheck chk = is_simple(A, T, cfg);
  rep.simple = chk.simple;
  rep.non_very_generic = chk.simple && rep.rank < rep.multiplicity;
  rep.sample_translate = chk.sample;
  for (const PointAudit& p : chk.audit) rep.audit.push_back(p.through);
  return rep;
}

std::size_t translate_rank_mod_center(const Arrangement& A,
                                      const std::vector<Vec>& translates) {
  validate_arrangement(A);
  std::vector<Vec> rows;
  for (const Vec& t : translates) {
    if (t.size() != A.n) throw error("shape", "translate has wrong length");
    rows.push_back(t);
  }
  for (const Vec& c : center_basis(A)) rows.push_back(c);
  return rank(mat_from_rows(std::move(rows), A.n)) - A.k;
}

namespace {

bool pairwise_intersecting(const std::vector<IndexSet>& T) {
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size(); ++j) {
      IndexSet tmp;
      std::set_intersection(T[i].begin(), T[i].end(), T[j].begin(), T[j].end(),
                            std::back_inserter(tmp));
      if (tmp.empty()) return false;
    }
  return true;
}

// Both Eq.-1 style r-set conditions: pairwise nonempty intersections, and the
// union unchanged by deleting any single member (equivalently: every index of
// the union is covered by at least two members).
bool rset_conditions(const std::vector<IndexSet>& T) {
  if (!pairwise_intersecting(T)) return false;
  std::map<int, int> cover;
  for (const IndexSet& L : T)
    for (int p : L) ++cover[p];
  for (const auto& [p, c] : cover)
    if (c < 2) return false;
  return true;
}

// Canonical enumeration of partitions of {1..n} into equal blocks of size b:
// the smallest unassigned element anchors each block.  Families are the
// complements of the blocks.
void partitions_rec(std::size_t b, std::vector<int>& pool,
                    std::vector<IndexSet>& blocks,
                    std::vector<std::vector<IndexSet>>& out) {
  if (pool.empty()) {
    out.push_back(blocks);
    return;
  }
  int anchor = pool.front();
  std::vector<int> rest(pool.begin() + 1, pool.end());
  if (rest.size() + 1 < b) return;
  IndexSet pick = first_subset(b - 1);  // positions into rest
  do {
    IndexSet block{anchor};
    std::vector<bool> used(rest.size(), false);
    for (int pos : pick) {
      block.push_back(rest[static_cast<std::size_t>(pos - 1)]);
      used[static_cast<std::size_t>(pos - 1)] = true;
    }
    std::vector<int> next_pool;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!used[i]) next_pool.push_back(rest[i]);
    blocks.push_back(block);
    partitions_rec(b, next_pool, blocks, out);
    blocks.pop_back();
  } while (advance_subset(pick, rest.size()));
}

ScanResult scan_impl(const Arrangement& A, const ScanOptions& opts,
                     const RunConfig& cfg, bool parallel) {
  if (opts.r_max < 3) throw error("shape", "r_max must be at least 3");
  validate_arrangement(A);
  ScanResult result;
  DiscTable table = build_disc_table(A, parallel);

  // Indices into the table with a defined normal; degenerate-content subsets
  // cannot carry a discriminantal hyperplane and are skipped.
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < table.w.size(); ++i)
    if (table.w[i]) live.push_back(i);

  // Stage 1: enumerate candidate families in deterministic order.
  std::vector<std::vector<std::size_t>> fams;
  auto push_family = [&](std::vector<std::size_t> fam) {
    if (fams.size() >= opts.max_candidates) {
      result.truncated = true;
      return false;
    }
    fams.push_back(std::move(fam));
    return true;
  };
  if (opts.partition_complement) {
    const std::size_t b = A.n - A.k - 1;
    if (b >= 1 && A.n % b == 0) {
      const std::size_t r = A.n / b;
      if (r >= 3 && r <= opts.r_max) {
        std::vector<int> pool;
        for (std::size_t i = 1; i <= A.n; ++i) pool.push_back(static_cast<int>(i));
        std::vector<IndexSet> blocks;
        std::vector<std::vector<IndexSet>> parts;
        partitions_rec(b, pool, blocks, parts);
        for (const std::vector<IndexSet>& blocks_of : parts) {
          std::vector<IndexSet> members;
          for (const IndexSet& blk : blocks_of) {
            IndexSet L;
            std::size_t bi = 0;
            for (int p = 1; p <= static_cast<int>(A.n); ++p) {
              if (bi < blk.size() && blk[bi] == p) {
                ++bi;
                continue;
              }
              L.push_back(p);
            }
            members.push_back(std::move(L));
          }
          std::sort(members.begin(), members.end());
          std::vector<std::size_t> fam;
          bool ok = true;
          for (const IndexSet& L : members) {
            std::optional<std::size_t> idx = table.index_of(L);
            if (!idx || !table.w[*idx]) {
              ok = false;  // degenerate member: no discriminantal hyperplane
              break;
            }
            fam.push_back(*idx);
          }
          if (ok && !push_family(std::move(fam))) break;
        }
      }
    }
  } else {
    for (std::size_t r = 3; r <= opts.r_max && !result.truncated; ++r) {
      if (live.size() < r) break;
      IndexSet pick = first_subset(r);  // positions into live
      do {
        std::vector<std::size_t> fam;
        std::vector<IndexSet> members;
        fam.reserve(r);
        for (int pos : pick) {
          fam.push_back(live[static_cast<std::size_t>(pos - 1)]);
          members.push_back(table.subsets[fam.back()]);
        }
        if (opts.rset_only ? rset_conditions(members) : pairwise_intersecting(members)) {
          if (!push_family(std::move(fam))) break;
        }
      } while (advance_subset(pick, live.size()));
    }
  }
  result.candidates = fams.size();

  // Stage 2: cheap exact rank filter, parallel over candidates.  Every entry
  // is independent, so scheduling cannot change the outcome.
  std::vector<char> passes(fams.size(), 0);
  auto rank_filter = [&](std::size_t i) {
    std::vector<Vec> rows;
    for (std::size_t idx : fams[i]) rows.push_back(*table.w[idx]);
    passes[i] = rank(mat_from_rows(std::move(rows), A.n)) < fams[i].size() ? 1 : 0;
  };
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fams.size()); ++i)
      rank_filter(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < fams.size(); ++i) rank_filter(i);
  }

  // Stage 3: exact simplicity on the survivors, each with a sub-seed keyed to
  // its position in the deterministic enumeration.
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (!passes[i]) continue;
    ++result.survivors;
    std::vector<IndexSet> members;
    for (std::size_t idx : fams[i]) members.push_back(table.subsets[idx]);
    RunConfig sub = cfg;
    sub.seed = cfg.seed + i;
    WitnessReport rep;
    rep.T = members;
    rep.multiplicity = members.size();
    rep.rank = flat_of(A, members).rank;
    SimplicityCheck chk;
    try {
      chk = is_simple_impl(A, members, sub, table);
    } catch (const error& e) {
      if (e.kind == "undecided") {
        result.truncated = true;  // partial results: this family stays open
        continue;
      }
      throw;
    }
    rep.simple = chk.simple;
    rep.non_very_generic = chk.simple && rep.rank < rep.multiplicity;
    rep.sample_translate = chk.sample;
    for (const PointAudit& p : chk.audit) rep.audit.push_back(p.through);
    if (rep.non_very_generic) result.witnesses.push_back(std::move(rep));
  }
  std::sort(result.witnesses.begin(), result.witnesses.end(),
            [](const WitnessReport& a, const WitnessReport& b) { return a.T < b.T; });
  return result;
}

}  // namespace

ScanResult scan(const Arrangement& A, const ScanOptions& opts, const RunConfig& cfg) {
  return scan_impl(A, opts, cfg, true);
}

ScanResult scan_serial(const Arrangement& A, const ScanOptions& opts,
                       const RunConfig& cfg) {
  return scan_impl(A, opts, cfg, false);
}

}  // namespace discrim
