#include "belitskii/field.hpp"

#include "belitskii/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace belitskii {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Residue of r in [0, p) for a rational r whose denominator is coprime to p.
Rational residue_mod(const Rational& r, unsigned p) {
  using boost::multiprecision::cpp_int;
  const cpp_int mod(p);
  cpp_int num = numerator(r) % mod;
  if (num < 0) num += mod;
  cpp_int den = denominator(r) % mod;
  if (den < 0) den += mod;
  if (den == 0) throw SingularError("denominator divisible by the field characteristic");
  // den^(p-2) mod p inverts den (p prime).
  cpp_int inv = 1, base = den;
  for (unsigned e = p - 2; e > 0; e >>= 1) {
    if (e & 1u) inv = inv * base % mod;
    base = base * base % mod;
  }
  return Rational(num * inv % mod);
}

}  // namespace

Field Field::gf(unsigned p) {
  if (!is_prime(p)) throw ParseError("field modulus must be prime: " + std::to_string(p));
  return Field{p};
}

std::string Field::to_string() const {
  return is_rational() ? "Q" : "gf:" + std::to_string(modulus);
}

FieldScalar::FieldScalar(Field f, long long v) : field_(f), value_(v) { reduce_(); }

FieldScalar::FieldScalar(Field f, const Rational& v) : field_(f), value_(v) { reduce_(); }

void FieldScalar::reduce_() {
  if (!field_.is_rational()) value_ = residue_mod(value_, field_.modulus);
}

namespace {
void require_same_field(const FieldScalar& a, const FieldScalar& b) {
  if (!(a.field() == b.field()))
    throw InternalError("mixed-field arithmetic: " + a.field().to_string() + " vs " +
                        b.field().to_string());
}
}  // namespace

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  require_same_field(*this, o);
  return FieldScalar(field_, value_ + o.value_);
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
  require_same_field(*this, o);
  return FieldScalar(field_, value_ - o.value_);
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  require_same_field(*this, o);
  return FieldScalar(field_, value_ * o.value_);
}

FieldScalar FieldScalar::operator/(const FieldScalar& o) const {
  require_same_field(*this, o);
  return *this * o.inverse();
}

FieldScalar FieldScalar::operator-() const { return FieldScalar(field_, -value_); }

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw SingularError("inverse of zero");
  return FieldScalar(field_, Rational(denominator(value_)) / Rational(numerator(value_)));
}

bool FieldScalar::operator==(const FieldScalar& o) const {
  return field_ == o.field_ && value_ == o.value_;
}

std::string FieldScalar::to_string() const { return value_.str(); }

FieldScalar FieldScalar::parse(Field f, const std::string& text) {
  // Accept -?digits or -?digits/digits only.
  size_t k = 0;
  auto digits = [&]() {
    const size_t start = k;
    while (k < text.size() && text[k] >= '0' && text[k] <= '9') ++k;
    return k > start;
  };
  if (k < text.size() && text[k] == '-') ++k;
  bool ok = digits();
  if (ok && k < text.size() && text[k] == '/') {
    ++k;
    ok = digits();
  }
  if (!ok || k != text.size()) throw ParseError("bad scalar: '" + text + "'");
  try {
    return FieldScalar(f, Rational(text));
  } catch (const SingularError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad scalar: '" + text + "'");
  }
}

}  // namespace belitskii
