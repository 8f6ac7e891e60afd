#include <doctest.h>

#include "discrim/arrangement.hpp"
#include "discrim/builder.hpp"
#include "oracles.hpp"

using namespace discrim;

namespace {

Vec rv(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Arrangement make(std::size_t k, std::vector<Vec> normals) {
  Arrangement A;
  A.k = k;
  A.n = normals.size();
  A.normals = std::move(normals);
  return A;
}

}  // namespace

TEST_CASE("arrangement validation rejects malformed data") {
  Arrangement A = make(3, {rv({1, 0, 0}), rv({0, 1, 0})});
  CHECK_NOTHROW(validate_arrangement(A));
  A.normals[1] = rv({0, 1});  // wrong dimension
  CHECK_THROWS_AS(validate_arrangement(A), error);
  A.normals[1] = rv({0, 0, 0});  // zero normal
  CHECK_THROWS_AS(validate_arrangement(A), error);
  A.normals[1] = rv({0, 1, 0});
  A.n = 5;  // count mismatch
  CHECK_THROWS_AS(validate_arrangement(A), error);
}

TEST_CASE("index set validation") {
  Arrangement A = make(2, {rv({1, 0}), rv({0, 1}), rv({1, 1})});
  CHECK_NOTHROW(validate_index_set(A, {1, 3}));
  CHECK_THROWS_AS(validate_index_set(A, {3, 1}), error);   // unsorted
  CHECK_THROWS_AS(validate_index_set(A, {1, 1}), error);   // repeated
  CHECK_THROWS_AS(validate_index_set(A, {0, 1}), error);   // out of range
  CHECK_THROWS_AS(validate_index_set(A, {1, 4}), error);   // out of range
}

TEST_CASE("cyclic arrangement is centrally generic") {
  Arrangement A = builtin_example("cyclic").arrangement;
  GenericityReport rep = is_central_generic(A);
  CHECK(rep.generic);
  CHECK(rep.witness.empty());
}

TEST_CASE("duplicate normals produce the first failing subset as witness") {
  Arrangement A = make(3, {rv({1, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}),
                           rv({0, 0, 1}), rv({1, 1, 1})});
  GenericityReport rep = is_central_generic(A);
  CHECK(!rep.generic);
  CHECK(rep.witness == IndexSet{1, 2, 3});
}

TEST_CASE("the ex12_8 normals are not centrally generic") {
  Arrangement A = builtin_example("ex12_8").arrangement;
  GenericityReport rep = is_central_generic(A);
  CHECK(!rep.generic);
  // lexicographically first dependent 8-subset
  CHECK(rep.witness == IndexSet{1, 3, 4, 5, 6, 7, 8, 10});
}

TEST_CASE("parallel and serial genericity kernels agree") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    Arrangement A = oracle::random_generic_arrangement(6, 3, rng);
    GenericityReport a = is_central_generic(A);
    GenericityReport b = is_central_generic_serial(A);
    CHECK(a.generic == b.generic);
    CHECK(a.witness == b.witness);
  }
  Arrangement bad = builtin_example("ex12_8").arrangement;
  GenericityReport a = is_central_generic(bad);
  GenericityReport b = is_central_generic_serial(bad);
  CHECK(a.generic == b.generic);
  CHECK(a.witness == b.witness);
}

TEST_CASE("flat directions") {
  Arrangement A = builtin_example("cyclic").arrangement;
  std::vector<Vec> all = flat_direction(A, {});
  REQUIRE(all.size() == 3);
  std::vector<Vec> one = flat_direction(A, {1});
  REQUIRE(one.size() == 2);
  for (const Vec& v : one) CHECK(dot(A.normal(1), v) == 0);
  std::vector<Vec> two = flat_direction(A, {1, 2});
  REQUIRE(two.size() == 1);
  CHECK(dot(A.normal(1), two[0]) == 0);
  CHECK(dot(A.normal(2), two[0]) == 0);
}

TEST_CASE("point_of solves translated incidences") {
  Arrangement A = builtin_example("cyclic").arrangement;
  Vec t(A.n, Rat(0));
  std::optional<Vec> p = point_of(A, t, {1, 2, 3});
  REQUIRE(p.has_value());
  CHECK(is_zero(*p));
  // under-determined: a 2-subset cuts a line, not a point
  CHECK_THROWS_AS((void)point_of(A, t, {1, 2}), error);
  // over-determined and inconsistent for a random right-hand side
  Vec t2(A.n, Rat(0));
  t2[3] = 1;  // move H_4 only: {1,2,3,4} no longer concurrent
  CHECK(!point_of(A, t2, {1, 2, 3, 4}).has_value());
}

TEST_CASE("center consists of whole-space translations") {
  Arrangement A = builtin_example("cyclic").arrangement;
  std::vector<Vec> C = center_basis(A);
  REQUIRE(C.size() == A.k);
  for (const Vec& c : C) {
    // a center translate leaves all n hyperplanes concurrent through a point
    std::optional<Vec> p = point_of(A, c, {1, 2, 3});
    REQUIRE(p.has_value());
    CHECK(hyperplanes_through(A, c, *p) == IndexSet{1, 2, 3, 4, 5, 6});
  }
  Vec shift = {Rat(2), Rat(-1), Rat(5)};
  Vec t(A.n);
  for (std::size_t i = 1; i <= A.n; ++i)
    t[i - 1] = dot(A.normal(static_cast<int>(i)), shift);
  CHECK(hyperplanes_through(A, t, shift) == IndexSet{1, 2, 3, 4, 5, 6});
}

TEST_CASE("subset enumeration is lexicographic and complete") {
  IndexSet s = first_subset(3);
  std::vector<IndexSet> all;
  do {
    all.push_back(s);
  } while (advance_subset(s, 5));
  REQUIRE(all.size() == 10);
  CHECK(all.front() == IndexSet{1, 2, 3});
  CHECK(all[1] == IndexSet{1, 2, 4});
  CHECK(all.back() == IndexSet{3, 4, 5});
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}
