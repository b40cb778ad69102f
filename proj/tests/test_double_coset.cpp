#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "belitskii/coset.hpp"
#include "belitskii/errors.hpp"
#include "test_util.hpp"

using namespace belitskii;
using testutil::rng;

namespace {

SquareMatrix shift3(Field f) {
  SquareMatrix a(3, f);
  a.at(1, 2) = FieldScalar::one(f);
  a.at(2, 3) = FieldScalar::one(f);
  return a;
}

/// a12 = a13 = a25 = a34 = 1: subpermutation 1->2, 2->5, 3->4 plus one extra.
SquareMatrix five_by_five_with_extra(Field f) {
  SquareMatrix a(5, f);
  a.at(1, 2) = a.at(1, 3) = a.at(2, 5) = a.at(3, 4) = FieldScalar::one(f);
  return a;
}

}  // namespace

TEST_CASE("subpermutation basics") {
  Subpermutation q(5);
  q.set(1, 2);
  q.set(2, 5);
  q.set(3, 4);
  CHECK(q.size() == 5);
  CHECK(q.arc_count() == 3);
  CHECK(q.image(1) == 2);
  CHECK(q.image(4) == 0);
  CHECK(!q.defined(4));
  CHECK(q.preimage(5) == 2);
  CHECK(q.preimage(1) == 0);
  const Field f = Field::rationals();
  const SquareMatrix m = q.to_matrix(f);
  CHECK(m.at(1, 2).is_one());
  CHECK(m.at(2, 5).is_one());
  CHECK(m.at(3, 4).is_one());
  CHECK(m.at(1, 3).is_zero());
  CHECK_THROWS_AS(q.set(1, 3), InternalError);   // row reused
  CHECK_THROWS_AS(q.set(4, 5), InternalError);   // column reused
  Subpermutation p(3);
  CHECK_THROWS_AS(p.set(2, 2), InternalError);   // not strictly upper
  CHECK_THROWS_AS(p.set(2, 4), InternalError);   // out of range
}

TEST_CASE("rank profile of the 3x3 shift") {
  const RankProfile p = rank_profile(shift3(Field::rationals()));
  CHECK(p.entry(0, 3) == 0);
  CHECK(p.entry(3, 0) == 0);
  CHECK(p.entry(1, 3) == 0);   // last row is zero
  CHECK(p.entry(2, 2) == 0);
  CHECK(p.entry(2, 3) == 1);
  CHECK(p.entry(3, 2) == 1);
  CHECK(p.entry(3, 3) == 2);
}

TEST_CASE("subpermutation_of on fixed matrices") {
  const Field f = Field::rationals();
  const Subpermutation q = subpermutation_of(shift3(f));
  CHECK(q.image(1) == 2);
  CHECK(q.image(2) == 3);
  CHECK(q.arc_count() == 2);

  const Subpermutation q5 = subpermutation_of(five_by_five_with_extra(f));
  CHECK(q5.image(1) == 2);
  CHECK(q5.image(2) == 5);
  CHECK(q5.image(3) == 4);
  CHECK(q5.arc_count() == 3);

  CHECK(subpermutation_of(SquareMatrix(4, f)).arc_count() == 0);

  SquareMatrix diag(2, f);
  diag.at(1, 1) = FieldScalar::one(f);
  CHECK_THROWS_AS(subpermutation_of(diag), NotStrictlyUpper);
}

TEST_CASE("subpermutation_of is invariant under two-sided triangular scaling") {
  for (Field f : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    for (int iter = 0; iter < 80; ++iter) {
      const unsigned n = 2 + rng()() % 4;
      const SquareMatrix a = testutil::random_strictly_upper(n, f, rng());
      const SquareMatrix t = testutil::random_invertible_upper(n, f, rng());
      const SquareMatrix u = testutil::random_invertible_upper(n, f, rng());
      const SquareMatrix b = multiply(multiply(t, a), u);
      CHECK(subpermutation_of(b) == subpermutation_of(a));
    }
  }
}

TEST_CASE("is_in_QUn") {
  const Field f = Field::rationals();
  Subpermutation q(5);
  q.set(1, 2);
  q.set(2, 5);
  q.set(3, 4);
  CHECK(is_in_QUn(q.to_matrix(f), q));
  CHECK(is_in_QUn(five_by_five_with_extra(f), q));

  SquareMatrix bad = five_by_five_with_extra(f);
  bad.at(1, 2) = FieldScalar(f, 2);          // leading entry not 1
  CHECK(!is_in_QUn(bad, q));

  SquareMatrix lead = five_by_five_with_extra(f);
  lead.at(1, 1) = FieldScalar::one(f);       // leading entry left of image(1)
  CHECK(!is_in_QUn(lead, q));

  SquareMatrix extra_row = five_by_five_with_extra(f);
  extra_row.at(4, 5) = FieldScalar::one(f);  // row 4 should be zero
  CHECK(!is_in_QUn(extra_row, q));

  Subpermutation small(4);
  CHECK(!is_in_QUn(five_by_five_with_extra(f), small));
}

TEST_CASE("transform log replay") {
  const Field f = Field::rationals();
  TransformLog log(3, f);
  CHECK(log.transform() == SquareMatrix::identity(3, f));
  SquareMatrix g = SquareMatrix::identity(3, f);
  g.at(1, 2) = FieldScalar(f, 3);
  SquareMatrix h = SquareMatrix::identity(3, f);
  h.at(2, 2) = FieldScalar(f, -2);
  log.push(g);
  log.push(h);
  REQUIRE(log.factors().size() == 2);
  CHECK(log.transform() == multiply(h, g));
  const SquareMatrix a = shift3(f);
  CHECK(log.replay(a) ==
        multiply(multiply(log.transform(), a), invert_triangular(log.transform())));
}

TEST_CASE("reduce_to_coset_rep on fixed matrices") {
  const Field f = Field::rationals();
  const SquareMatrix a = five_by_five_with_extra(f);
  TransformLog log(5, f);
  const CosetReduction r = reduce_to_coset_rep(a, &log);
  CHECK(r.q == subpermutation_of(a));
  CHECK(is_in_QUn(r.representative, r.q));
  CHECK(r.representative == multiply(multiply(r.transform, a), invert_triangular(r.transform)));
  CHECK(log.replay(a) == r.representative);
  CHECK(r.transform.is_upper_triangular());

  // Already a coset representative: unchanged up to the identity transform.
  Subpermutation q(5);
  q.set(1, 2);
  q.set(2, 5);
  q.set(3, 4);
  const CosetReduction rq = reduce_to_coset_rep(q.to_matrix(f));
  CHECK(rq.q == q);
  CHECK(rq.representative == q.to_matrix(f));

  SquareMatrix diag(2, f);
  diag.at(1, 1) = FieldScalar::one(f);
  CHECK_THROWS_AS(reduce_to_coset_rep(diag), NotStrictlyUpper);
}

TEST_CASE("reduce_to_coset_rep randomized properties") {
  for (Field f : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    for (int iter = 0; iter < 120; ++iter) {
      const unsigned n = 2 + rng()() % 5;
      const SquareMatrix a = testutil::random_strictly_upper(n, f, rng());
      const CosetReduction r = reduce_to_coset_rep(a);
      CHECK(r.q == subpermutation_of(a));
      CHECK(is_in_QUn(r.representative, r.q));
      CHECK(r.representative ==
            multiply(multiply(r.transform, a), invert_triangular(r.transform)));
      CHECK(r.transform.is_upper_triangular());
    }
  }
}

TEST_CASE("split_upper_triangular worked example") {
  const Field f = Field::rationals();
  SquareMatrix a(3, f);
  a.at(1, 1) = a.at(2, 2) = FieldScalar::one(f);
  a.at(3, 3) = FieldScalar(f, 2);
  a.at(1, 2) = FieldScalar(f, 3);
  a.at(1, 3) = FieldScalar(f, 4);
  a.at(2, 3) = FieldScalar(f, 5);
  const auto blocks = split_upper_triangular(a);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].eigenvalue == FieldScalar::one(f));
  CHECK(blocks[0].indices == std::vector<unsigned>{1, 2});
  CHECK(blocks[0].block.at(1, 2) == FieldScalar(f, 3));
  CHECK(blocks[0].block.at(1, 1).is_zero() == false);  // diagonal kept
  CHECK(blocks[0].block.at(1, 1) == FieldScalar::one(f));
  CHECK(blocks[1].eigenvalue == FieldScalar(f, 2));
  CHECK(blocks[1].indices == std::vector<unsigned>{2 + 1});
  CHECK(blocks[1].block.size() == 1);
  CHECK(blocks[1].block.at(1, 1) == FieldScalar(f, 2));
}

TEST_CASE("split_upper_triangular properties") {
  const Field f = Field::rationals();

  // Nilpotent input: a single block equal to the input.
  const SquareMatrix nil = shift3(f);
  const auto single = split_upper_triangular(nil);
  REQUIRE(single.size() == 1);
  CHECK(single[0].block == nil);
  CHECK(single[0].indices == std::vector<unsigned>{1, 2, 3});

  // Interleaved diagonal: groups follow first occurrence, cross entries vanish.
  SquareMatrix a(4, f);
  a.at(1, 1) = FieldScalar(f, 2);
  a.at(2, 2) = FieldScalar::one(f);
  a.at(3, 3) = FieldScalar(f, 2);
  a.at(4, 4) = FieldScalar::one(f);
  for (unsigned i = 1; i <= 4; ++i)
    for (unsigned j = i + 1; j <= 4; ++j) a.at(i, j) = FieldScalar(f, static_cast<long long>(i + j));
  TransformLog log(4, f);
  const auto blocks = split_upper_triangular(a, &log);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].eigenvalue == FieldScalar(f, 2));
  CHECK(blocks[0].indices == std::vector<unsigned>{1, 3});
  CHECK(blocks[1].indices == std::vector<unsigned>{2, 4});
  const SquareMatrix c = log.replay(a);
  for (const auto& bi : blocks)
    for (const auto& bj : blocks)
      if (&bi != &bj)
        for (unsigned r : bi.indices)
          for (unsigned s : bj.indices)
            if (r < s) CHECK(c.at(r, s).is_zero());
  for (unsigned r = 1; r <= 2; ++r)
    for (unsigned s = 1; s <= 2; ++s)
      CHECK(blocks[0].block.at(r, s) == c.at(blocks[0].indices[r - 1], blocks[0].indices[s - 1]));

  SquareMatrix lower(2, f);
  lower.at(2, 1) = FieldScalar::one(f);
  CHECK_THROWS_AS(split_upper_triangular(lower), NotUpperTriangular);

  // Random upper triangular matrices: replayed matrix never links distinct
  // diagonal values.
  for (int iter = 0; iter < 60; ++iter) {
    const unsigned n = 2 + rng()() % 4;
    const SquareMatrix rnd = testutil::random_invertible_upper(n, f, rng());
    TransformLog rlog(n, f);
    const auto bl = split_upper_triangular(rnd, &rlog);
    const SquareMatrix rc = rlog.replay(rnd);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = i + 1; j <= n; ++j)
        if (!(rc.at(i, i) == rc.at(j, j))) CHECK(rc.at(i, j).is_zero());
    size_t total = 0;
    for (const auto& b : bl) total += b.indices.size();
    CHECK(total == n);
  }
}
