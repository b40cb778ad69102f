#include "belitskii/matrix.hpp"

#include "belitskii/errors.hpp"

#include <sstream>

namespace belitskii {

SquareMatrix::SquareMatrix(unsigned n, Field f)
    : n_(n), field_(f), cells_(static_cast<size_t>(n) * n, FieldScalar(f)) {}

FieldScalar& SquareMatrix::at(unsigned i, unsigned j) {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw InternalError("matrix index out of range");
  return cells_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
}

const FieldScalar& SquareMatrix::at(unsigned i, unsigned j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw InternalError("matrix index out of range");
  return cells_[static_cast<size_t>(i - 1) * n_ + (j - 1)];
}

bool SquareMatrix::operator==(const SquareMatrix& o) const {
  if (n_ != o.n_ || !(field_ == o.field_)) return false;
  for (size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k] != o.cells_[k]) return false;
  return true;
}

bool SquareMatrix::is_upper_triangular() const {
  for (unsigned i = 2; i <= n_; ++i)
    for (unsigned j = 1; j < i; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

bool SquareMatrix::is_strictly_upper_triangular() const {
  if (!is_upper_triangular()) return false;
  for (unsigned i = 1; i <= n_; ++i)
    if (!at(i, i).is_zero()) return false;
  return true;
}

SquareMatrix SquareMatrix::identity(unsigned n, Field f) {
  SquareMatrix m(n, f);
  for (unsigned i = 1; i <= n; ++i) m.at(i, i) = FieldScalar::one(f);
  return m;
}

std::string SquareMatrix::to_string() const {
  std::ostringstream out;
  for (unsigned i = 1; i <= n_; ++i) {
    for (unsigned j = 1; j <= n_; ++j) {
      if (j > 1) out << ' ';
      out << at(i, j).to_string();
    }
    out << '\n';
  }
  return out.str();
}

std::string print_matrix(const SquareMatrix& m) {
  std::ostringstream out;
  if (!m.field().is_rational()) out << "field=" << m.field().modulus << '\n';
  out << m.size() << '\n' << m.to_string();
  return out.str();
}

namespace {

SquareMatrix parse_matrix(const std::string& text, const Field* override_field) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok)) throw ParseError("empty matrix text");
  Field field = Field::rationals();
  bool have_header = false;
  if (tok.rfind("field=", 0) == 0) {
    const std::string mod = tok.substr(6);
    try {
      field = Field::gf(static_cast<unsigned>(std::stoul(mod)));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad field header: '" + tok + "'");
    }
    have_header = true;
    if (!(in >> tok)) throw ParseError("matrix text ends after field header");
  }
  if (override_field) field = *override_field;
  (void)have_header;
  unsigned n = 0;
  try {
    n = static_cast<unsigned>(std::stoul(tok));
  } catch (const std::exception&) {
    throw ParseError("bad matrix dimension: '" + tok + "'");
  }
  if (n == 0) throw ParseError("matrix dimension must be positive");
  SquareMatrix m(n, field);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (!(in >> tok)) throw ParseError("matrix text ends early");
      m.at(i, j) = FieldScalar::parse(field, tok);
    }
  if (in >> tok) throw ParseError("trailing content after matrix entries: '" + tok + "'");
  return m;
}

}  // namespace

SquareMatrix SquareMatrix::parse(const std::string& text) {
  return parse_matrix(text, nullptr);
}

SquareMatrix SquareMatrix::parse(const std::string& text, Field field_override) {
  return parse_matrix(text, &field_override);
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size() || !(a.field() == b.field()))
    throw InternalError("multiply: incompatible matrices");
  const unsigned n = a.size();
  SquareMatrix c(n, a.field());
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned k = 1; k <= n; ++k) {
      const FieldScalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (unsigned j = 1; j <= n; ++j) {
        const FieldScalar& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        c.at(i, j) = c.at(i, j) + aik * bkj;
      }
    }
  return c;
}

SquareMatrix invert_triangular(const SquareMatrix& a) {
  if (!a.is_upper_triangular())
    throw NotUpperTriangular("invert_triangular: input is not upper triangular");
  const unsigned n = a.size();
  for (unsigned i = 1; i <= n; ++i)
    if (a.at(i, i).is_zero())
      throw SingularError("invert_triangular: zero diagonal entry");
  SquareMatrix x(n, a.field());
  for (unsigned j = n; j >= 1; --j) {
    x.at(j, j) = a.at(j, j).inverse();
    for (unsigned i = j - 1; i >= 1; --i) {
      FieldScalar s(a.field());
      for (unsigned k = i + 1; k <= j; ++k) s = s + a.at(i, k) * x.at(k, j);
      x.at(i, j) = -(s / a.at(i, i));
      if (i == 1) break;
    }
    if (j == 1) break;
  }
  return x;
}

unsigned submatrix_rank(const SquareMatrix& a, unsigned i, unsigned j) {
  const unsigned n = a.size();
  if (i > n || j > n) throw InternalError("submatrix_rank: block exceeds matrix");
  if (i == 0 || j == 0) return 0;
  // Copy the last i rows, first j columns, then eliminate.
  std::vector<std::vector<FieldScalar>> rows(i, std::vector<FieldScalar>(j, FieldScalar(a.field())));
  for (unsigned r = 0; r < i; ++r)
    for (unsigned c = 0; c < j; ++c) rows[r][c] = a.at(n - i + 1 + r, 1 + c);
  unsigned rank = 0;
  for (unsigned col = 0; col < j && rank < i; ++col) {
    unsigned pivot = rank;
    while (pivot < i && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == i) continue;
    std::swap(rows[pivot], rows[rank]);
    const FieldScalar inv = rows[rank][col].inverse();
    for (unsigned r = rank + 1; r < i; ++r) {
      if (rows[r][col].is_zero()) continue;
      const FieldScalar factor = rows[r][col] * inv;
      for (unsigned c = col; c < j; ++c)
        rows[r][c] = rows[r][c] - factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace belitskii
