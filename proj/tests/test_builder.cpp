#include <doctest.h>

#include "discrim/builder.hpp"
#include "discrim/json_io.hpp"

using namespace discrim;

namespace {

Vec rv(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Vec rq(std::initializer_list<const char*> xs) {
  Vec v;
  for (const char* x : xs) {
    std::optional<Rat> r = parse_rat(x);
    REQUIRE(r.has_value());
    v.push_back(*r);
  }
  return v;
}

BuildSpec plan_of(const BuiltinExample& ex) {
  return plan_build(ex.arrangement.k, ex.T, ex.free_normals, ex.r_prime);
}

bool in_span(const std::vector<Vec>& basis, const Vec& v, std::size_t dim) {
  std::vector<Vec> rows = basis;
  rows.push_back(v);
  return rank(mat_from_rows(rows, v.size())) == dim;
}

}  // namespace

TEST_CASE("plan_build on the 12-hyperplane family") {
  BuildSpec spec = plan_of(builtin_example("ex12_8"));
  CHECK(spec.m == 12);
  CHECK(spec.y == 0);
  CHECK(spec.d == 1);
  CHECK(spec.constrained == IndexSet{12});
  using P = std::vector<std::pair<int, int>>;
  CHECK(spec.constraints.at(12) == P{{2, 3}, {2, 4}, {3, 4}});
}

TEST_CASE("plan_build on the 10-hyperplane family") {
  BuildSpec spec = plan_of(builtin_example("ex10_3"));
  CHECK(spec.m == 10);
  CHECK(spec.y == 0);
  CHECK(spec.d == 3);
  CHECK(spec.constrained == IndexSet{9, 10});
  using P = std::vector<std::pair<int, int>>;
  CHECK(spec.constraints.at(9) == P{{3, 5}});
  CHECK(spec.constraints.at(10) == P{{4, 5}});
}

TEST_CASE("plan_build rejections") {
  // all 4-subsets of {1..5}: m=5, y=0, k=3, r'=4 gives d=-2
  std::vector<IndexSet> T5 = {
      {1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}};
  std::map<int, Vec> fr;
  for (int q = 1; q <= 5; ++q) fr[q] = rv({1, q, q * q});
  CHECK_THROWS_WITH_AS((void)plan_build(3, T5, fr, 4),
                       doctest::Contains("m - y - k - r' = -2"), error);

  // index 1 lies in every member; leaving it unspecified is an error
  std::vector<IndexSet> Tc = {{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}};
  std::map<int, Vec> no1 = fr;
  no1.erase(1);
  try {
    (void)plan_build(3, Tc, no1, 1);
    FAIL("expected a core error");
  } catch (const error& e) {
    CHECK(std::string(e.kind) == "core must be fully specified");
  }

  CHECK_THROWS_AS((void)plan_build(3, T5, fr, 5), error);  // r' >= r
  std::vector<IndexSet> bad = {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 5}};
  CHECK_THROWS_AS((void)plan_build(3, bad, fr, 1), error);  // not an r-set
}

TEST_CASE("solution spaces of the built-in specs") {
  BuiltinExample e12 = builtin_example("ex12_8");
  BuildSpec s12 = plan_of(e12);
  auto sp12 = solution_spaces_for(s12, e12.vector_sets);
  REQUIRE(sp12.count(12));
  CHECK(sp12.at(12).size() == 6);
  CHECK(in_span(sp12.at(12), e12.arrangement.normal(12), 6));

  BuiltinExample e16 = builtin_example("ex16_11");
  BuildSpec s16 = plan_of(e16);
  auto sp16 = solution_spaces_for(s16, e16.vector_sets);
  CHECK(sp16.at(16).size() == 7);
  CHECK(in_span(sp16.at(16), e16.arrangement.normal(16), 7));

  BuiltinExample e10 = builtin_example("ex10_3");
  BuildSpec s10 = plan_of(e10);
  auto sp10 = solution_spaces_for(s10, e10.vector_sets);
  REQUIRE(sp10.at(9).size() == 1);
  REQUIRE(sp10.at(10).size() == 1);
  // one-dimensional spaces pin the expected normals exactly
  CHECK(sp10.at(9)[0] == rv({314, -40, -197}));
  CHECK(sp10.at(10)[0] == rv({139, 30, -43}));
}

TEST_CASE("completion reproduces the 10-hyperplane arrangement bit-exactly") {
  RunConfig cfg;
  cfg.seed = 1;
  BuiltinExample ex = builtin_example("ex10_3");
  BuildResult res = complete_arrangement(plan_of(ex), ex.vector_sets, cfg);
  CHECK(res.arrangement.normals == ex.arrangement.normals);
  CHECK(res.witness.rank == 4);
  CHECK(res.witness.multiplicity == 5);
  CHECK(res.witness.non_very_generic);
  VerifyOutcome v = verify_build(res);
  CHECK(v.ok);
  CHECK(v.reason.empty());
}

TEST_CASE("completion honors a preferred admissible normal") {
  RunConfig cfg;
  cfg.seed = 1;
  BuiltinExample ex = builtin_example("ex16_11");
  std::map<int, Vec> pref = {{16, ex.arrangement.normal(16)}};
  BuildResult res = complete_arrangement(plan_of(ex), ex.vector_sets, cfg, pref);
  CHECK(res.arrangement.normals == ex.arrangement.normals);
  CHECK(res.witness.rank == 3);
  CHECK(res.witness.multiplicity == 4);
  CHECK(verify_build(res).ok);

  // a preferred normal violating its constraints is rejected up front
  std::map<int, Vec> bad = {{16, rq({"1", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"})}};
  CHECK_THROWS_AS((void)complete_arrangement(plan_of(ex), ex.vector_sets, cfg, bad),
                  error);
}

TEST_CASE("the 12-hyperplane data cannot be completed generically") {
  // Every admissible choice of the last normal keeps some 8-subset dependent;
  // the builder reports that honestly instead of returning a bad arrangement.
  RunConfig cfg;
  cfg.seed = 3;
  cfg.sample_budget = 24;
  BuiltinExample ex = builtin_example("ex12_8");
  for (int with_pref = 0; with_pref < 2; ++with_pref) {
    std::map<int, Vec> pref;
    if (with_pref) pref[12] = ex.arrangement.normal(12);
    try {
      (void)complete_arrangement(plan_of(ex), ex.vector_sets, cfg, pref);
      FAIL("expected a degenerate-choice error");
    } catch (const error& e) {
      CHECK(std::string(e.kind) == "degenerate choice");
    }
  }
}

TEST_CASE("verify_build pinpoints tampering") {
  RunConfig cfg;
  cfg.seed = 1;
  BuiltinExample ex = builtin_example("ex10_3");
  BuildResult res = complete_arrangement(plan_of(ex), ex.vector_sets, cfg);

  BuildResult bent = res;
  bent.arrangement.normals[8] = rv({1, 0, 0});
  VerifyOutcome v = verify_build(bent);
  CHECK(!v.ok);
  CHECK(v.reason.rfind("constraint violated: normal 9", 0) == 0);

  BuildResult lied = res;
  lied.witness.rank = 5;
  v = verify_build(lied);
  CHECK(!v.ok);
  CHECK(v.reason.rfind("witness does not certify", 0) == 0);
}

TEST_CASE("cyclic parameter validation") {
  for (const char* name : {"cyclic(1,3)", "cyclic(2,2)", "cyclic(0,5)",
                           "cyclic(2,-2)", "cyclic(2;3)", "mystery"}) {
    try {
      (void)builtin_example(name);
      FAIL("expected an input error for " << name);
    } catch (const error& e) {
      CHECK(std::string(e.kind) == "input");
    }
  }
  RunConfig cfg;
  cfg.seed = 8;
  BuiltinExample ex = builtin_example("cyclic(1/2,3/4)");
  WitnessReport w = detect_nonverygeneric(ex.arrangement, ex.T, cfg);
  CHECK(w.rank == 2);
  CHECK(w.multiplicity == 3);
  CHECK(w.non_very_generic);
}

TEST_CASE("derived edges satisfy the cocycle identity") {
  BuiltinExample ex = builtin_example("ex12_8");
  auto edges = derived_edges(ex.vector_sets[0]);
  CHECK(edges.size() == 6);
  CHECK(edges.at({1, 2}) == rv({1, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(edges.at({2, 3}) == rv({-1, 1, 0, 0, 0, 0, 0, 0}));
  CHECK(edges.at({2, 4}) == rv({-1, 0, 1, 0, 0, 0, 0, 0}));
  CHECK(edges.at({3, 4}) == rv({0, -1, 1, 0, 0, 0, 0, 0}));
}

TEST_CASE("derived edges of the built-in rational sets") {
  BuiltinExample ex = builtin_example("ex10_3");
  auto e1 = derived_edges(ex.vector_sets[0]);
  auto e2 = derived_edges(ex.vector_sets[1]);
  auto e3 = derived_edges(ex.vector_sets[2]);
  CHECK(e1.at({2, 3}) == rq({"7/2", "27/2", "0"}));
  CHECK(e1.at({2, 5}) == rq({"-86/9", "86/3", "-215/9"}));
  CHECK(e1.at({4, 5}) == rq({"-235/18", "68/3", "-475/18"}));
  CHECK(e2.at({3, 4}) == rq({"6", "45", "-7"}));
  CHECK(e2.at({4, 5}) == rq({"7/3", "4", "31/3"}));
  CHECK(e3.at({2, 4}) == rq({"1653/1040", "-2049/520", "-5751/1040"}));
  CHECK(e3.at({4, 5}) == rq({"241/3120", "2569/520", "11533/3120"}));
}

TEST_CASE("build specs round-trip through JSON") {
  for (const char* name : {"ex12_8", "ex10_3"}) {
    BuildSpec spec = plan_of(builtin_example(name));
    Json j = build_spec_to_json(spec);
    BuildSpec back = build_spec_from_json(j);
    CHECK(dump_json(build_spec_to_json(back), true) == dump_json(j, true));
  }
}
