#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "belitskii/canonize.hpp"
#include "belitskii/errors.hpp"
#include "test_util.hpp"

using namespace belitskii;
using testutil::rng;

namespace {

GraphType type_of(const std::string& s) { return parse_graph_type(s); }

/// Weight-1 matrix for a graph type, optionally with chosen extra weights.
SquareMatrix realize(const GraphType& t, Field f,
                     const std::map<Arc, FieldScalar>& weights = {}) {
  const Subpermutation q = partition_to_subpermutation(t.partition);
  SquareMatrix m = q.to_matrix(f);
  for (const MarkedArc& e : t.extras) {
    const auto it = weights.find(e.arc);
    m.at(e.arc.from, e.arc.to) = it == weights.end() ? FieldScalar::one(f) : it->second;
  }
  return m;
}

/// The 7x7 running example: chains 124|37|56 with extras
/// (1,4)=3, (1,5)=-2, (1,7)=1, (2,5)=-1.
SquareMatrix running_example(Field f) {
  SquareMatrix a(7, f);
  a.at(1, 2) = FieldScalar::one(f);
  a.at(1, 4) = FieldScalar(f, 3);
  a.at(1, 5) = FieldScalar(f, -2);
  a.at(1, 7) = FieldScalar::one(f);
  a.at(2, 4) = FieldScalar::one(f);
  a.at(2, 5) = FieldScalar(f, -1);
  a.at(3, 7) = FieldScalar::one(f);
  a.at(5, 6) = FieldScalar::one(f);
  return a;
}

}  // namespace

TEST_CASE("mark_parameters marks exactly the cycle-closing arcs") {
  CHECK(print_graph_type(mark_parameters(type_of("1256|3478: 57|13"))) == "1256|3478: 57|_13_");
  CHECK(print_graph_type(mark_parameters(type_of("1256|34: 35|13"))) == "1256|34: 35|_13_");
  CHECK(print_graph_type(mark_parameters(type_of("12|34: 13"))) == "12|34: 13");
  CHECK(print_graph_type(mark_parameters(type_of("123678|45: 46|24|14"))) ==
        "123678|45: 46|_24_|_14_");
  CHECK(print_graph_type(mark_parameters(type_of("1256|3478: 57|35|13"))) ==
        "1256|3478: 57|_35_|_13_");
  CHECK(print_graph_type(mark_parameters(type_of("12345: empty"))) == "12345: empty");
  CHECK_THROWS_AS(mark_parameters(type_of("1256|34: 35|_13_")), InternalError);
}

TEST_CASE("component and parameter counts") {
  CHECK(component_count(type_of("124|37|56: 25")) == 2);
  CHECK(parameter_count(type_of("124|37|56: 25")) == 0);
  CHECK(component_count(type_of("1234567: empty")) == 1);
  CHECK(parameter_count(type_of("1234567: empty")) == 0);
  CHECK(component_count(type_of("1256|3478: 57|_35_|_13_")) == 1);
  CHECK(parameter_count(type_of("1256|3478: 57|_35_|_13_")) == 2);
  CHECK(component_count(type_of("1|2|3: empty")) == 3);
  CHECK(parameter_count(type_of("123678|45: 46|24|14")) == 2);

  // |marks| always equals the count formula.
  for (const char* s :
       {"1256|3478: 57|35|13", "123678|45: 46|24|14", "123|478|56: 57|24|25", "12|34: 13",
        "1256|34: 35|13", "14|23|56: 25|15", "135|246: 36|25|14", "12345678: empty"}) {
    const GraphType marked = mark_parameters(type_of(s));
    unsigned marks = 0;
    for (const MarkedArc& e : marked.extras) marks += e.marked ? 1 : 0;
    CHECK(marks == parameter_count(marked));
  }
}

TEST_CASE("removability depends on the kept prefix") {
  const Subpermutation q =
      partition_to_subpermutation(SetPartition({{1, 2, 3}, {4, 7, 8}, {5, 6}}));
  const RemovalOracle oracle(q);

  CHECK(!oracle.removable({{5, 7}}, {5, 7}, {}));
  CHECK(!oracle.removable({{1, 4}}, {1, 4}, {}));
  CHECK(oracle.removable({{5, 7}, {1, 4}}, {1, 4}, {{5, 7}}));
  CHECK(!oracle.removable({{2, 4}}, {2, 4}, {}));
  CHECK(oracle.removable({{2, 4}, {2, 5}}, {2, 5}, {{2, 4}}) ==
        oracle.removable({{2, 4}, {2, 5}}, {2, 5}, {{2, 4}}));  // deterministic

  const auto plan = oracle.plan({{5, 7}, {1, 4}}, {1, 4}, {{5, 7}});
  REQUIRE(plan.has_value());
  CHECK(!plan->empty());
  for (const ESOMove& m : *plan) {
    CHECK(m.target.has_value());
    CHECK(!m.lambda.has_value());
  }
  CHECK(*(*plan)[0].target == Arc{1, 4});

  CHECK_THROWS_AS(oracle.plan({{5, 7}}, {1, 4}, {}), InternalError);
}

TEST_CASE("reduce_in_coset on the worked examples") {
  const Field f = Field::rationals();

  // Bare subpermutations stay put.
  for (unsigned n = 2; n <= 5; ++n)
    for (const Subpermutation& q : testutil::all_subpermutations(n)) {
      const CosetScan scan = reduce_in_coset(q.to_matrix(f), q);
      CHECK(scan.matrix == q.to_matrix(f));
      CHECK(scan.log.factors().empty());
    }

  // The running example collapses to chains plus a single (2,5) entry.
  const SquareMatrix a = running_example(f);
  const Subpermutation q = subpermutation_of(a);
  const CosetScan scan = reduce_in_coset(a, q);
  SquareMatrix expect = q.to_matrix(f);
  expect.at(2, 5) = FieldScalar(f, -1);
  CHECK(scan.matrix == expect);
  CHECK(scan.log.replay(a) == scan.matrix);

  // A type whose three extras all survive: nothing moves.
  const GraphType stuck = type_of("123678|45: 46|24|14");
  const SquareMatrix m = realize(stuck, f,
                                 {{Arc{4, 6}, FieldScalar(f, 5)},
                                  {Arc{2, 4}, FieldScalar(f, 7)},
                                  {Arc{1, 4}, FieldScalar(f, -3)}});
  const CosetScan frozen = reduce_in_coset(m, partition_to_subpermutation(stuck.partition));
  CHECK(frozen.matrix == m);

  CHECK_THROWS_AS(reduce_in_coset(SquareMatrix(3, f), Subpermutation(2)), InternalError);
}

TEST_CASE("dn_normalize scales unmarked arcs to one") {
  const Field f = Field::rationals();

  // Tree of ones: nothing to do.
  const GraphType tree = type_of("12|34: 13");
  const SquareMatrix ones = realize(tree, f);
  const CanonicalForm cf = dn_normalize(ones, tree);
  CHECK(cf.matrix == ones);
  CHECK(cf.param_values.empty());

  // One cycle: the marked value is the product of the cycle's forward weights
  // over its backward weights (chain arcs contribute 1).
  const GraphType cyc = mark_parameters(type_of("1256|34: 35|13"));
  for (int iter = 0; iter < 40; ++iter) {
    const FieldScalar w35 = testutil::random_scalar(f, rng(), true);
    const FieldScalar w13 = testutil::random_scalar(f, rng(), true);
    const SquareMatrix m = realize(cyc, f, {{Arc{3, 5}, w35}, {Arc{1, 3}, w13}});
    const CanonicalForm cf2 = dn_normalize(m, cyc);
    REQUIRE(cf2.param_values.size() == 1);
    // d3 = d5/w35 = 1/w35, so the (1,3) value is w13*w35.
    CHECK(cf2.param_values.at({1, 3}) == w13 * w35);
    CHECK(cf2.matrix.at(1, 3) == w13 * w35);
    CHECK(cf2.matrix.at(3, 5) == FieldScalar::one(f));
    CHECK(cf2.witness.replay(m) == cf2.matrix);
  }

  // Forgetting the mark turns the cycle into a propagation conflict.
  SquareMatrix bad = realize(type_of("1256|34: 35|13"), f);
  bad.at(1, 3) = FieldScalar(f, 2);
  CHECK_THROWS_AS(dn_normalize(bad, type_of("1256|34: 35|13")), InternalError);

  // Arc-set mismatch is rejected.
  CHECK_THROWS_AS(dn_normalize(ones, type_of("12|34: empty")), InternalError);
}

TEST_CASE("canon of the running example") {
  const Field f = Field::rationals();
  const SquareMatrix a = running_example(f);
  const CanonicalForm cf = canon(a);
  CHECK(print_graph_type(cf.graph_type) == "124|37|56: 25");
  CHECK(cf.param_values.empty());
  const Subpermutation q = partition_to_subpermutation(cf.graph_type.partition);
  SquareMatrix expect = q.to_matrix(f);
  expect.at(2, 5) = FieldScalar::one(f);
  CHECK(cf.matrix == expect);

  // Witness: upper triangular, invertible, conjugates input to output.
  CHECK(cf.witness.transform().is_upper_triangular());
  const SquareMatrix t = cf.witness.transform();
  CHECK(multiply(multiply(t, a), invert_triangular(t)) == cf.matrix);
}

TEST_CASE("canon distinguishes a coset-equal pair") {
  const Field f = Field::rationals();
  SquareMatrix a(5, f);
  a.at(1, 2) = a.at(1, 3) = a.at(2, 5) = a.at(3, 4) = FieldScalar::one(f);
  SquareMatrix b(5, f);
  b.at(1, 2) = b.at(2, 5) = b.at(3, 4) = FieldScalar::one(f);
  CHECK(subpermutation_of(a) == subpermutation_of(b));
  const CanonicalForm ca = canon(a);
  const CanonicalForm cb = canon(b);
  CHECK(print_graph_type(ca.graph_type) == "125|34: 13");
  CHECK(print_graph_type(cb.graph_type) == "125|34: empty");
  CHECK(!(ca.graph_type == cb.graph_type));
}

TEST_CASE("canon fixes subpermutations and rejects non-nilpotent input") {
  const Field f = Field::gf(3);
  for (unsigned n = 1; n <= 5; ++n)
    for (const Subpermutation& q : testutil::all_subpermutations(n)) {
      const CanonicalForm cf = canon(q.to_matrix(f));
      CHECK(cf.matrix == q.to_matrix(f));
      CHECK(cf.graph_type.extras.empty());
    }
  SquareMatrix diag = SquareMatrix::identity(3, Field::rationals());
  CHECK_THROWS_AS(canon(diag), NotStrictlyUpper);
}

TEST_CASE("canon is conjugation invariant and idempotent") {
  for (Field f : {Field::rationals(), Field::gf(2), Field::gf(3)}) {
    for (int iter = 0; iter < 60; ++iter) {
      const unsigned n = 3 + rng()() % 4;
      const SquareMatrix a = testutil::random_strictly_upper(n, f, rng());
      const SquareMatrix t = testutil::random_invertible_upper(n, f, rng());
      const SquareMatrix conj = multiply(multiply(t, a), invert_triangular(t));

      const CanonicalForm ca = canon(a);
      const CanonicalForm cc = canon(conj);
      CHECK(ca.graph_type == cc.graph_type);
      CHECK(ca.param_values == cc.param_values);
      CHECK(ca.matrix == cc.matrix);

      const CanonicalForm again = canon(ca.matrix);
      CHECK(again.graph_type == ca.graph_type);
      CHECK(again.matrix == ca.matrix);

      CHECK(is_in_QUn(ca.matrix, subpermutation_of(a)));
      const SquareMatrix w = ca.witness.transform();
      CHECK(multiply(multiply(w, a), invert_triangular(w)) == ca.matrix);
    }
  }
}

TEST_CASE("canon keeps parameter values in the marked positions") {
  const Field f = Field::rationals();
  const GraphType marked = mark_parameters(type_of("123678|45: 46|24|14"));
  const SquareMatrix m = realize(type_of("123678|45: 46|24|14"), f,
                                 {{Arc{4, 6}, FieldScalar(f, 5)},
                                  {Arc{2, 4}, FieldScalar(f, 7)},
                                  {Arc{1, 4}, FieldScalar(f, -3)}});
  const CanonicalForm cf = canon(m);
  CHECK(cf.graph_type == marked);
  CHECK(cf.param_values.size() == 2);
  CHECK(cf.param_values.count({2, 4}) == 1);
  CHECK(cf.param_values.count({1, 4}) == 1);
  for (const auto& [arc, v] : cf.param_values) CHECK(!v.is_zero());
}
