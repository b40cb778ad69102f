#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace belitskii {

using Rational = boost::multiprecision::cpp_rational;

/// Coefficient domain of all matrix entries: the rationals when `modulus == 0`,
/// otherwise the prime field GF(modulus).
struct Field {
  unsigned modulus = 0;

  constexpr bool is_rational() const { return modulus == 0; }
  constexpr bool operator==(const Field&) const = default;

  static Field rationals() { return Field{0}; }
  static Field gf(unsigned p);  ///< throws ParseError unless p is prime

  std::string to_string() const;  ///< "Q" or "gf:p"
};

/// An exact scalar in a fixed Field.  Rational values are arbitrary-precision;
/// GF(p) values are stored as the canonical residue in [0, p).
class FieldScalar {
public:
  FieldScalar() = default;  ///< zero over the rationals
  explicit FieldScalar(Field f) : field_(f) {}
  FieldScalar(Field f, long long v);
  FieldScalar(Field f, const Rational& v);

  const Field& field() const { return field_; }
  const Rational& value() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar operator/(const FieldScalar& o) const;  ///< SingularError on /0
  FieldScalar operator-() const;
  FieldScalar inverse() const;  ///< SingularError on 0

  bool operator==(const FieldScalar& o) const;
  bool operator!=(const FieldScalar& o) const { return !(*this == o); }

  std::string to_string() const;  ///< "p/q" when the denominator is not 1

  static FieldScalar zero(Field f) { return FieldScalar(f); }
  static FieldScalar one(Field f) { return FieldScalar(f, 1); }

  /// Parses "3", "-7", or "3/4" (GF(p) values are reduced; the denominator
  /// must be invertible).  Throws ParseError on malformed text.
  static FieldScalar parse(Field f, const std::string& text);

private:
  void reduce_();

  Field field_{};
  Rational value_{};
};

}  // namespace belitskii
