#pragma once

#include "belitskii/field.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace belitskii {

/// Dense n-by-n matrix over a fixed Field.  Indices are 1-based throughout,
/// matching the row/column conventions of the triangular-similarity formulas.
class SquareMatrix {
public:
  SquareMatrix() = default;
  SquareMatrix(unsigned n, Field f);

  unsigned size() const { return n_; }
  const Field& field() const { return field_; }

  FieldScalar& at(unsigned i, unsigned j);
  const FieldScalar& at(unsigned i, unsigned j) const;

  bool operator==(const SquareMatrix& o) const;
  bool operator!=(const SquareMatrix& o) const { return !(*this == o); }

  bool is_upper_triangular() const;
  bool is_strictly_upper_triangular() const;

  static SquareMatrix identity(unsigned n, Field f);

  /// Multi-line text: each row's entries separated by single spaces.
  std::string to_string() const;

  /// Reads the format written by print_matrix / accepted by the CLI:
  /// an optional "field=<p>" line, a line holding n, then n rows of n
  /// whitespace-separated entries.  A Field given by the caller overrides
  /// the header.  Throws ParseError on malformed input.
  static SquareMatrix parse(const std::string& text);
  static SquareMatrix parse(const std::string& text, Field field_override);

private:
  unsigned n_ = 0;
  Field field_{};
  std::vector<FieldScalar> cells_;
};

/// Writes "field=<p>" (omitted over the rationals), the dimension line, and
/// the entry rows — the inverse of SquareMatrix::parse.
std::string print_matrix(const SquareMatrix& m);

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);

/// Inverse of an invertible upper triangular matrix (SingularError when a
/// diagonal entry is zero; NotUpperTriangular when the input is not upper
/// triangular).
SquareMatrix invert_triangular(const SquareMatrix& a);

/// Rank of the lower-left i-by-j submatrix (last i rows, first j columns).
/// i == 0 or j == 0 gives 0.
unsigned submatrix_rank(const SquareMatrix& a, unsigned i, unsigned j);

}  // namespace belitskii
