#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "belitskii/errors.hpp"
#include "belitskii/field.hpp"
#include "belitskii/matrix.hpp"

using namespace belitskii;

TEST_CASE("rational scalar arithmetic") {
  const Field q = Field::rationals();
  const FieldScalar third = FieldScalar::parse(q, "1/3");
  const FieldScalar sixth = FieldScalar::parse(q, "1/6");
  CHECK((third + sixth) == FieldScalar::parse(q, "1/2"));
  CHECK((third - sixth) == sixth);
  CHECK((third * sixth).to_string() == "1/18");
  CHECK((third / sixth) == FieldScalar(q, 2));
  CHECK((-third).to_string() == "-1/3");
  CHECK(FieldScalar(q, -4).to_string() == "-4");
  CHECK(FieldScalar::parse(q, "-7") == FieldScalar(q, -7));
  CHECK(FieldScalar(q).is_zero());
  CHECK(FieldScalar::one(q).is_one());
  CHECK_THROWS_AS(third / FieldScalar(q), SingularError);
  CHECK_THROWS_AS(FieldScalar(q).inverse(), SingularError);
  CHECK_THROWS_AS(FieldScalar::parse(q, "abc"), ParseError);
  CHECK_THROWS_AS(FieldScalar::parse(q, ""), ParseError);
}

TEST_CASE("prime field scalar arithmetic") {
  const Field f5 = Field::gf(5);
  CHECK((FieldScalar(f5, 3) + FieldScalar(f5, 4)) == FieldScalar(f5, 2));
  CHECK((FieldScalar(f5, 3) * FieldScalar(f5, 4)) == FieldScalar(f5, 2));
  CHECK(FieldScalar(f5, 3).inverse() == FieldScalar(f5, 2));
  CHECK((FieldScalar(f5, 1) / FieldScalar(f5, 4)) == FieldScalar(f5, 4));
  CHECK(FieldScalar(f5, -1) == FieldScalar(f5, 4));
  CHECK(FieldScalar::parse(f5, "-1").to_string() == "4");
  CHECK(FieldScalar::parse(f5, "1/2") == FieldScalar(f5, 3));
  CHECK(FieldScalar(f5, 10).is_zero());
  const Field f2 = Field::gf(2);
  CHECK((FieldScalar(f2, 1) + FieldScalar(f2, 1)).is_zero());
  CHECK_THROWS_AS(Field::gf(4), ParseError);
  CHECK_THROWS_AS(Field::gf(1), ParseError);
  CHECK_NOTHROW(Field::gf(97));
  CHECK_THROWS_AS(FieldScalar::parse(f5, "1/5"), SingularError);
}

TEST_CASE("matrix multiply") {
  const Field q = Field::rationals();
  SquareMatrix a(2, q), b(2, q);
  a.at(1, 1) = FieldScalar(q, 1);
  a.at(1, 2) = FieldScalar(q, 2);
  a.at(2, 2) = FieldScalar(q, 3);
  b.at(1, 1) = FieldScalar(q, 4);
  b.at(1, 2) = FieldScalar::parse(q, "1/2");
  b.at(2, 1) = FieldScalar(q, 1);
  b.at(2, 2) = FieldScalar(q, 1);
  const SquareMatrix c = multiply(a, b);
  CHECK(c.at(1, 1) == FieldScalar(q, 6));
  CHECK(c.at(1, 2) == FieldScalar::parse(q, "5/2"));
  CHECK(c.at(2, 1) == FieldScalar(q, 3));
  CHECK(c.at(2, 2) == FieldScalar(q, 3));
  const SquareMatrix id = SquareMatrix::identity(2, q);
  CHECK(multiply(a, id) == a);
  CHECK(multiply(id, a) == a);
}

TEST_CASE("invert_triangular") {
  const Field q = Field::rationals();
  SquareMatrix a(3, q);
  a.at(1, 1) = FieldScalar(q, 2);
  a.at(1, 2) = FieldScalar(q, -3);
  a.at(1, 3) = FieldScalar::parse(q, "1/5");
  a.at(2, 2) = FieldScalar::parse(q, "1/2");
  a.at(2, 3) = FieldScalar(q, 7);
  a.at(3, 3) = FieldScalar(q, -1);
  const SquareMatrix inv = invert_triangular(a);
  CHECK(multiply(a, inv) == SquareMatrix::identity(3, q));
  CHECK(multiply(inv, a) == SquareMatrix::identity(3, q));

  const Field f3 = Field::gf(3);
  SquareMatrix g(3, f3);
  g.at(1, 1) = FieldScalar(f3, 1);
  g.at(1, 2) = FieldScalar(f3, 2);
  g.at(1, 3) = FieldScalar(f3, 1);
  g.at(2, 2) = FieldScalar(f3, 2);
  g.at(2, 3) = FieldScalar(f3, 2);
  g.at(3, 3) = FieldScalar(f3, 1);
  CHECK(multiply(g, invert_triangular(g)) == SquareMatrix::identity(3, f3));

  SquareMatrix sing(2, q);
  sing.at(1, 1) = FieldScalar(q, 1);
  CHECK_THROWS_AS(invert_triangular(sing), SingularError);

  SquareMatrix lower(2, q);
  lower.at(1, 1) = lower.at(2, 2) = lower.at(2, 1) = FieldScalar(q, 1);
  CHECK_THROWS_AS(invert_triangular(lower), NotUpperTriangular);
}

TEST_CASE("submatrix_rank") {
  const Field q = Field::rationals();
  SquareMatrix a(3, q);
  a.at(1, 2) = FieldScalar(q, 1);
  a.at(2, 3) = FieldScalar(q, 1);
  CHECK(submatrix_rank(a, 0, 2) == 0);
  CHECK(submatrix_rank(a, 2, 0) == 0);
  CHECK(submatrix_rank(a, 2, 2) == 0);
  CHECK(submatrix_rank(a, 2, 3) == 1);
  CHECK(submatrix_rank(a, 3, 3) == 2);

  SquareMatrix b(2, q);
  b.at(1, 1) = FieldScalar::parse(q, "1/2");
  b.at(1, 2) = FieldScalar::parse(q, "1/3");
  b.at(2, 1) = FieldScalar::parse(q, "1/4");
  b.at(2, 2) = FieldScalar::parse(q, "1/6");
  CHECK(submatrix_rank(b, 2, 2) == 1);

  const Field f2 = Field::gf(2);
  SquareMatrix c(2, f2);
  c.at(1, 1) = c.at(1, 2) = c.at(2, 1) = c.at(2, 2) = FieldScalar(f2, 1);
  CHECK(submatrix_rank(c, 2, 2) == 1);
}

TEST_CASE("matrix text round trip") {
  const Field f3 = Field::gf(3);
  SquareMatrix m(2, f3);
  m.at(1, 2) = FieldScalar(f3, 2);
  const std::string text = print_matrix(m);
  CHECK(text == "field=3\n2\n0 2\n0 0\n");
  CHECK(SquareMatrix::parse(text) == m);

  const Field q = Field::rationals();
  SquareMatrix r(2, q);
  r.at(1, 2) = FieldScalar::parse(q, "-5/7");
  CHECK(SquareMatrix::parse(print_matrix(r)) == r);
  CHECK(print_matrix(r) == "2\n0 -5/7\n0 0\n");

  // Field override re-reduces entries.
  const SquareMatrix over = SquareMatrix::parse("2\n0 5\n0 0\n", Field::gf(3));
  CHECK(over.at(1, 2) == FieldScalar(Field::gf(3), 2));

  CHECK_THROWS_AS(SquareMatrix::parse(""), ParseError);
  CHECK_THROWS_AS(SquareMatrix::parse("2\n1 2\n3"), ParseError);
  CHECK_THROWS_AS(SquareMatrix::parse("2\n1 2\n3 4\n5"), ParseError);
  CHECK_THROWS_AS(SquareMatrix::parse("field=6\n2\n1 2\n3 4"), ParseError);
  CHECK_THROWS_AS(SquareMatrix::parse("x"), ParseError);
}
