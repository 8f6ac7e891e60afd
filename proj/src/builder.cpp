#include "discrim/builder.hpp"

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

IndexSet core_of(const std::vector<IndexSet>& members) {
  IndexSet core = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) {
    IndexSet next;
    std::set_intersection(core.begin(), core.end(), members[i].begin(),
                          members[i].end(), std::back_inserter(next));
    core = std::move(next);
  }
  return core;
}

// Pairs (i, j), i < j, of member positions whose intersection contains q.
std::vector<std::pair<int, int>> pairs_through(const std::vector<IndexSet>& T, int q) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (!std::binary_search(T[i].begin(), T[i].end(), q)) continue;
    for (std::size_t j = i + 1; j < T.size(); ++j)
      if (std::binary_search(T[j].begin(), T[j].end(), q))
        out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
  }
  return out;
}

std::size_t ambient_index_count(const std::vector<IndexSet>& T,
                                const std::map<int, Vec>& free_normals) {
  int n = 0;
  for (const IndexSet& L : T) n = std::max(n, L.back());
  for (const auto& [q, v] : free_normals) n = std::max(n, q);
  return static_cast<std::size_t>(n);
}

void check_sets_shape(const BuildSpec& spec, const std::vector<KTVectorSet>& sets) {
  if (sets.size() != spec.d)
    throw error("shape", "expected " + std::to_string(spec.d) + " vector sets, got " +
                             std::to_string(sets.size()));
  for (const KTVectorSet& V : sets) {
    if (V.r != spec.T.size() || V.i0 < 1 || static_cast<std::size_t>(V.i0) > V.r ||
        V.vecs.size() + 1 != V.r)
      throw error("shape", "vector set arity does not match the family");
    for (const Vec& v : V.vecs)
      if (v.size() != spec.k) throw error("shape", "vector set entry has wrong dimension");
  }
}

}  // namespace

BuildSpec plan_build(std::size_t k, const std::vector<IndexSet>& T,
                     const std::map<int, Vec>& free_normals, std::size_t r_prime) {
  if (k == 0) throw error("shape", "ambient dimension must be positive");
  if (T.size() < 2) throw error("shape", "family needs at least two members");
  const std::size_t n = ambient_index_count(T, free_normals);
  RSetCheck rc = validate_rset(T, n);
  if (!rc.valid) throw error("rset", rc.violation);
  for (const IndexSet& L : T)
    if (L.size() != k + 1)
      throw error("arity", "family member " + join_indices(L) + " is not a (k+1)-subset");
  if (r_prime >= T.size())
    throw error("shape", "r_prime must be smaller than the number of members");
  for (const auto& [q, v] : free_normals) {
    if (q < 1) throw error("shape", "normal index must be positive");
    if (v.size() != k) throw error("shape", "fixed normal has wrong dimension");
    if (is_zero(v)) throw error("shape", "fixed normal is zero");
  }

  BuildSpec spec;
  spec.k = k;
  spec.T = T;
  spec.r_prime = r_prime;
  spec.free_normals = free_normals;

  IndexSet uni = union_of(T);
  spec.m = uni.size();
  for (int q : uni)
    if (!free_normals.count(q)) spec.constrained.push_back(q);
  // Every ambient index must be accounted for: fixed, or constrained (in the
  // union, where the construction can solve for it).
  for (int q = 1; q <= static_cast<int>(n); ++q)
    if (!free_normals.count(q) && !std::binary_search(uni.begin(), uni.end(), q))
      throw error("shape", "normal " + std::to_string(q) +
                               " is neither specified nor solvable from the family");

  IndexSet core = core_of(T);
  if (core.empty()) {
    spec.y = 0;
  } else {
    // y is the rank of the intersection of the core hyperplanes, which only
    // the fixed normals can determine.
    std::vector<Vec> rows;
    for (int q : core) {
      auto it = free_normals.find(q);
      if (it == free_normals.end())
        throw error("core must be fully specified",
                    "normal " + std::to_string(q) + " lies in the common core of T");
      rows.push_back(it->second);
    }
    std::size_t dim = nullspace(mat_from_rows(std::move(rows), k)).size();
    spec.y = k - dim;
  }

  long d = static_cast<long>(spec.m) - static_cast<long>(spec.y) -
           static_cast<long>(k) - static_cast<long>(r_prime);
  if (d <= 0)
    throw error("no construction needed",
                "m - y - k - r' = " + std::to_string(d) + " demands no vector sets");
  spec.d = static_cast<std::size_t>(d);

  for (int q : spec.constrained) spec.constraints[q] = pairs_through(T, q);
  return spec;
}

std::map<std::pair<int, int>, Vec> derived_edges(const KTVectorSet& V) {
  std::map<std::pair<int, int>, Vec> out;
  for (std::size_t i = 1; i <= V.r; ++i)
    for (std::size_t j = i + 1; j <= V.r; ++j)
      out[{static_cast<int>(i), static_cast<int>(j)}] =
          vsub(V.vec_to(static_cast<int>(j)), V.vec_to(static_cast<int>(i)));
  return out;
}

std::map<int, std::vector<Vec>> solution_spaces_for(
    const BuildSpec& spec, const std::vector<KTVectorSet>& sets) {
  check_sets_shape(spec, sets);
  std::map<int, std::vector<Vec>> spaces;
  for (int q : spec.constrained) {
    std::vector<Vec> rows;
    for (const KTVectorSet& V : sets) {
      std::map<std::pair<int, int>, Vec> edges = derived_edges(V);
      for (const std::pair<int, int>& ij : spec.constraints.at(q))
        rows.push_back(edges.at(ij));
    }
    std::vector<Vec> basis = nullspace(mat_from_rows(std::move(rows), spec.k));
    if (basis.empty())
      throw error("over-constrained",
                  "no admissible normal for index " + std::to_string(q));
    spaces[q] = std::move(basis);
  }
  return spaces;
}

BuildResult complete_arrangement(const BuildSpec& spec,
                                 const std::vector<KTVectorSet>& sets,
                                 const RunConfig& cfg,
                                 const std::map<int, Vec>& preferred) {
  check_sets_shape(spec, sets);
  // The supplied data must already respect every fixed normal: each edge
  // v_{i,j} has to lie inside the hyperplanes indexed by L_i intersect L_j
  // whose normals are known.
  for (std::size_t h = 0; h < sets.size(); ++h) {
    std::map<std::pair<int, int>, Vec> edges = derived_edges(sets[h]);
    for (const auto& [ij, edge] : edges) {
      IndexSet meet;
      const IndexSet& Li = spec.T[static_cast<std::size_t>(ij.first - 1)];
      const IndexSet& Lj = spec.T[static_cast<std::size_t>(ij.second - 1)];
      std::set_intersection(Li.begin(), Li.end(), Lj.begin(), Lj.end(),
                            std::back_inserter(meet));
      for (int p : meet) {
        auto it = spec.free_normals.find(p);
        if (it == spec.free_normals.end()) continue;
        if (dot(it->second, edge) != 0)
          throw error("constraint violated",
                      "edge v_{" + std::to_string(ij.first) + "," +
                          std::to_string(ij.second) + "} of set " +
                          std::to_string(h + 1) + " is not orthogonal to normal " +
                          std::to_string(p));
      }
    }
  }

  BuildResult result;
  result.vector_sets = sets;
  result.solution_spaces = solution_spaces_for(spec, sets);
  for (const auto& [q, v] : preferred) {
    if (!spec.constraints.count(q))
      throw error("shape", "preferred normal given for unconstrained index " +
                               std::to_string(q));
    if (v.size() != spec.k || is_zero(v))
      throw error("shape", "preferred normal for index " + std::to_string(q) +
                               " must be a nonzero k-vector");
    for (const KTVectorSet& V : sets) {
      std::map<std::pair<int, int>, Vec> edges = derived_edges(V);
      for (const std::pair<int, int>& ij : spec.constraints.at(q))
        if (dot(v, edges.at(ij)) != 0)
          throw error("constraint violated",
                      "preferred normal for index " + std::to_string(q) +
                          " is not orthogonal to edge v_{" + std::to_string(ij.first) +
                          "," + std::to_string(ij.second) + "}");
    }
  }

  const std::size_t n = ambient_index_count(spec.T, spec.free_normals);
  Rng rng(cfg.seed);
  GenericityReport report;
  Arrangement arr;
  arr.k = spec.k;
  arr.n = n;
  bool any_freedom = false;
  for (int q : spec.constrained)
    if (!preferred.count(q) && result.solution_spaces.at(q).size() > 1) any_freedom = true;
  const unsigned tries = std::max(cfg.sample_budget, 8u);
  for (unsigned attempt = 0; attempt < tries; ++attempt) {
    arr.normals.assign(n, Vec());
    for (const auto& [q, v] : spec.free_normals)
      arr.normals[static_cast<std::size_t>(q - 1)] = v;
    for (int q : spec.constrained) {
      auto pref = preferred.find(q);
      if (pref != preferred.end()) {
        arr.normals[static_cast<std::size_t>(q - 1)] = pref->second;
        continue;
      }
      const std::vector<Vec>& basis = result.solution_spaces.at(q);
      Vec choice = basis[0];  // canonical pick
      if (attempt > 0) {
        // Genericity repair: shift by small random combinations of the other
        // basis vectors; the leading coefficient stays 1, so the choice stays
        // inside the solution space and nonzero.
        for (std::size_t i = 1; i < basis.size(); ++i) {
          std::int64_t c = rng.uniform(-3, 3);
          if (c != 0) choice = vadd(choice, vscale(Rat(c), basis[i]));
        }
      }
      arr.normals[static_cast<std::size_t>(q - 1)] = canonical_scaled(choice);
    }
    report = is_central_generic(arr);
    if (report.generic) break;
    if (!any_freedom) break;  // nothing to vary: retrying cannot help
  }
  if (!report.generic)
    throw error("degenerate choice",
                "dependent k-subset " + join_indices(report.witness) +
                    " survives every admissible choice tried");
  result.arrangement = arr;
  result.witness = detect_nonverygeneric(arr, spec.T, cfg);
  return result;
}

namespace {

Vec iv(std::initializer_list<long> xs) {
  Vec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

Rat frac(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

IndexSet complement_of(const IndexSet& block, int n) {
  IndexSet s;
  std::size_t bi = 0;
  for (int i = 1; i <= n; ++i) {
    if (bi < block.size() && block[bi] == i) {
      ++bi;
      continue;
    }
    s.push_back(i);
  }
  return s;
}

KTVectorSet make_set(std::size_t r, std::vector<Vec> vecs) {
  KTVectorSet V;
  V.i0 = 1;
  V.r = r;
  V.vecs = std::move(vecs);
  return V;
}

Vec unit(std::size_t k, std::size_t pos) {
  Vec v(k, Rat(0));
  v[pos] = 1;
  return v;
}

WitnessReport expectation(const std::vector<IndexSet>& T, std::size_t rank) {
  WitnessReport w;
  w.T = T;
  w.multiplicity = T.size();
  w.rank = rank;
  w.simple = true;
  w.non_very_generic = true;
  return w;
}

BuiltinExample make_ex12_8() {
  BuiltinExample ex;
  ex.name = "ex12_8";
  ex.arrangement.k = 8;
  ex.arrangement.n = 12;
  ex.arrangement.normals = {
      iv({0, 0, 1, 1, 0, 1, -1, 1}),  iv({0, 0, 0, 1, 1, 1, 1, -1}),
      iv({0, 0, 1, 0, 0, 0, 1, 1}),   iv({0, 1, 0, 1, 1, 1, 0, 1}),
      iv({0, 2, 0, -1, -1, 0, 1, -1}), iv({0, -1, 0, 2, 1, -1, -1, 1}),
      iv({1, 0, 0, 1, 0, -1, -1, 1}), iv({-1, 0, 0, 0, 2, 1, 1, 1}),
      iv({-4, 0, 0, 0, 1, -1, 1, 1}), iv({1, 1, 1, -1, -1, -1, -1, 1}),
      iv({1, 1, 1, 2, 2, 2, 0, 3}),   iv({-2, -2, -2, 3, 4, -5, 6, 7})};
  ex.T = {complement_of({10, 11, 12}, 12), complement_of({7, 8, 9}, 12),
          complement_of({4, 5, 6}, 12), complement_of({1, 2, 3}, 12)};
  ex.expected = expectation(ex.T, 3);
  // Base vectors e1, e2, e3 of Q^8.  The orientation of the third one is
  // fixed by the derived-edge identity v_{2,4} = v_{1,4} - v_{1,2} =
  // (-1,0,1,0,...): the constrained normal below is orthogonal to that value.
  ex.vector_sets = {make_set(4, {unit(8, 0), unit(8, 1), unit(8, 2)})};
  for (int q = 1; q <= 11; ++q)
    ex.free_normals[q] = ex.arrangement.normal(q);
  ex.constrained = {12};
  ex.r_prime = 3;
  return ex;
}

BuiltinExample make_ex16_11() {
  BuiltinExample ex;
  ex.name = "ex16_11";
  ex.arrangement.k = 11;
  ex.arrangement.n = 16;
  ex.arrangement.normals = {
      iv({0, 0, 1, 0, 0, 1, 0, 0, 0, 1, -1}),
      iv({0, 0, -1, 0, 0, 1, 1, 1, 1, -1, 0}),
      iv({0, 0, 2, 0, 0, 1, 1, 0, 1, 1, 0}),
      iv({0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1}),
      iv({0, -1, 0, 0, 1, 0, 1, 1, 1, -1, 0}),
      iv({0, 1, 0, 0, 2, 0, 0, -1, -1, 0, 1}),
      iv({0, 2, 0, 0, -1, 0, -1, 0, 0, 1, 1}),
      iv({0, -1, 0, 0, 2, 0, 1, 1, 1, 0, 0}),
      iv({1, 0, 0, -3, 0, 0, -1, -1, 1, 1, 1}),
      iv({2, 0, 0, 5, 0, 0, 1, -1, -1, 1, 1}),
      iv({3, 0, 0, 1, 0, 0, 1, -1, 2, 0, 1}),
      iv({1, 0, 0, 5, 0, 0, 1, 0, 1, 1, 0}),
      iv({1, 1, 1, -3, -3, -3, -1, -3, 2, -2, -1}),
      iv({1, 1, 1, 0, 0, 0, -2, 1, -8, 1, 1}),
      iv({0, 0, 0, -5, -5, -5, 1, 2, -3, -4, 7}),
      iv({1, 1, 1, -2, -2, -2, 5, 6, 7, 8, 9})};
  ex.T = {complement_of({13, 14, 15, 16}, 16), complement_of({9, 10, 11, 12}, 16),
          complement_of({5, 6, 7, 8}, 16), complement_of({1, 2, 3, 4}, 16)};
  ex.expected = expectation(ex.T, 3);
  ex.vector_sets = {make_set(4, {unit(11, 0), unit(11, 1), unit(11, 2)}),
                    make_set(4, {unit(11, 3), unit(11, 4), unit(11, 5)})};
  for (int q = 1; q <= 15; ++q)
    ex.free_normals[q] = ex.arrangement.normal(q);
  ex.constrained = {16};
  ex.r_prime = 3;
  return ex;
}

BuiltinExample make_ex10_3() {
  BuiltinExample ex;
  ex.name = "ex10_3";
  ex.arrangement.k = 3;
  ex.arrangement.n = 10;
  ex.arrangement.normals = {iv({0, 10, 3}),  iv({20, 0, -9}), iv({2, -3, 0}),
                            iv({3, 1, 0}),   iv({0, 0, 1}),   iv({1, -1, 1}),
                            iv({1, 2, 2}),   iv({4, -1, -3}), iv({314, -40, -197}),
                            iv({139, 30, -43})};
  ex.T = {{1, 2, 3, 4}, {1, 5, 6, 7}, {2, 5, 8, 9}, {3, 6, 8, 10}, {4, 7, 9, 10}};
  ex.expected = expectation(ex.T, 4);
  ex.vector_sets = {
      make_set(5, {iv({1, -3, 10}),
                   Vec{frac(9, 2), frac(21, 2), Rat(10)},
                   Vec{frac(9, 2), Rat(3), frac(25, 2)},
                   Vec{frac(-77, 9), frac(77, 3), frac(-125, 9)}}),
      make_set(5, {iv({-2, 6, -20}), iv({-9, -47, -20}), iv({-3, -2, -27}),
                   Vec{frac(-2, 3), Rat(2), frac(-50, 3)}}),
      make_set(5, {iv({-3, 3, -10}),
                   Vec{frac(-9, 2), frac(-2391, 80), Rat(-10)},
                   Vec{frac(-1467, 1040), frac(-489, 520), frac(-16151, 1040)},
                   Vec{frac(-4, 3), Rat(4), frac(-71, 6)}})};
  for (int q = 1; q <= 8; ++q)
    ex.free_normals[q] = ex.arrangement.normal(q);
  ex.constrained = {9, 10};
  ex.r_prime = 4;
  return ex;
}

BuiltinExample make_cyclic(const Rat& a, const Rat& b) {
  std::vector<Rat> ts = {Rat(1), Rat(-1), a, -a, b, -b};
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (ts[i] == ts[j])
        throw error("input",
                    "cyclic parameters must keep 1, -1, a, -a, b, -b pairwise "
                    "distinct; got a=" +
                        format_rat(a) + ", b=" + format_rat(b));
  BuiltinExample ex;
  ex.name = "cyclic(" + format_rat(a) + "," + format_rat(b) + ")";
  ex.arrangement.k = 3;
  ex.arrangement.n = 6;
  for (const Rat& t : ts) ex.arrangement.normals.push_back(Vec{Rat(1), t, t * t});
  ex.T = {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}};
  ex.expected = expectation(ex.T, 2);
  for (int q = 1; q <= 6; ++q)
    ex.free_normals[q] = ex.arrangement.normal(q);
  ex.r_prime = 2;
  return ex;
}

}  // namespace

BuiltinExample builtin_example(const std::string& name) {
  if (name == "ex12_8") return make_ex12_8();
  if (name == "ex16_11") return make_ex16_11();
  if (name == "ex10_3") return make_ex10_3();
  if (name == "cyclic") return make_cyclic(Rat(2), Rat(3));
  if (name.rfind("cyclic(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(7, name.size() - 8);
    std::size_t comma = inner.find(',');
    if (comma != std::string::npos) {
      std::optional<Rat> a = parse_rat(inner.substr(0, comma));
      std::optional<Rat> b = parse_rat(inner.substr(comma + 1));
      if (a && b) return make_cyclic(*a, *b);
    }
    throw error("input", "malformed cyclic parameters in '" + name + "'");
  }
  throw error("input", "unknown example '" + name +
                           "' (available: ex12_8, ex16_11, ex10_3, cyclic(a,b))");
}

namespace {

// Exact realization of a vector set: put P_{i0} at the origin, the other
// points at the base vectors, and read the translate off the incidences.
// Fails (returns nothing) only if the data is inconsistent on some shared
// hyperplane.
std::optional<Vec> realize_translate(const Arrangement& A,
                                     const std::vector<IndexSet>& T,
                                     const KTVectorSet& V) {
  std::vector<Vec> points;
  for (std::size_t i = 1; i <= V.r; ++i) points.push_back(V.vec_to(static_cast<int>(i)));
  Vec t(A.n, Rat(0));
  std::vector<bool> set_already(A.n, false);
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (int p : T[i]) {
      Rat val = dot(A.normal(p), points[i]);
      std::size_t idx = static_cast<std::size_t>(p - 1);
      if (!set_already[idx]) {
        t[idx] = val;
        set_already[idx] = true;
      } else if (t[idx] != val) {
        return std::nullopt;
      }
    }
  }
  return t;
}

}  // namespace

VerifyOutcome verify_build(const BuildResult& result) {
  VerifyOutcome out;
  const Arrangement& A = result.arrangement;
  const std::vector<IndexSet>& T = result.witness.T;
  const std::size_t r = T.size();
  const std::size_t d = result.vector_sets.size();

  // Constraint orthogonality first: it is the cheapest exact check and the
  // most direct way a tampered normal shows up.
  for (const auto& [q, basis] : result.solution_spaces) {
    for (const KTVectorSet& V : result.vector_sets) {
      std::map<std::pair<int, int>, Vec> edges = derived_edges(V);
      for (const std::pair<int, int>& ij : pairs_through(T, q)) {
        if (dot(A.normal(q), edges.at(ij)) != 0) {
          out.reason = "constraint violated: normal " + std::to_string(q) +
                       " is not orthogonal to edge v_{" + std::to_string(ij.first) +
                       "," + std::to_string(ij.second) + "}";
          return out;
        }
      }
    }
  }

  GenericityReport rep = is_central_generic(A);
  if (!rep.generic) {
    out.reason = "non-generic: dependent k-subset " + join_indices(rep.witness);
    return out;
  }

  if (weak_rank(result.vector_sets) != d) {
    out.reason = "weak rank " + std::to_string(weak_rank(result.vector_sets)) +
                 " does not match the " + std::to_string(d) + " vector sets";
    return out;
  }

  // Each vector set must be realized by an exact translate whose
  // configuration returns the very same vectors.
  for (std::size_t h = 0; h < result.vector_sets.size(); ++h) {
    const KTVectorSet& V = result.vector_sets[h];
    std::optional<Vec> t = realize_translate(A, T, V);
    if (!t) {
      out.reason = "realization failed for set " + std::to_string(h + 1) +
                   ": inconsistent incidences";
      return out;
    }
    KTVectorSet back;
    try {
      back = kt_vector_set(kt_configuration(A, T, *t), V.i0);
    } catch (const error& e) {
      out.reason = "realization failed for set " + std::to_string(h + 1) + ": " + e.what();
      return out;
    }
    if (back.vecs != V.vecs) {
      out.reason = "realization round-trip mismatch for set " + std::to_string(h + 1);
      return out;
    }
  }

  if (!result.witness.simple || result.witness.rank >= r) {
    out.reason = "witness does not certify: simple=" +
                 std::string(result.witness.simple ? "true" : "false") +
                 ", rank=" + std::to_string(result.witness.rank) +
                 ", multiplicity=" + std::to_string(r);
    return out;
  }

  // Dimension count: the essentialized flat must leave room for the d sets.
  IndexSet uni = union_of(T);
  IndexSet core = core_of(T);
  std::size_t y = 0;
  if (!core.empty()) {
    std::vector<Vec> rows;
    for (int q : core) rows.push_back(A.normal(q));
    y = A.k - nullspace(mat_from_rows(std::move(rows), A.k)).size();
  }
  long slack = static_cast<long>(uni.size()) - static_cast<long>(y) -
               static_cast<long>(A.k) - static_cast<long>(result.witness.rank);
  if (slack < static_cast<long>(d)) {
    out.reason = "dimension count violated: (m - y - k) - rank = " +
                 std::to_string(slack) + " < d = " + std::to_string(d);
    return out;
  }

  out.ok = true;
  return out;
}

}  // namespace discrim
