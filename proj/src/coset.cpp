#include "belitskii/coset.hpp"

#include "belitskii/errors.hpp"

#include <string>

namespace belitskii {

unsigned Subpermutation::image(unsigned i) const {
  if (i < 1 || i > size()) throw InternalError("subpermutation index out of range");
  return image_[i];
}

unsigned Subpermutation::preimage(unsigned j) const {
  if (j < 1 || j > size()) throw InternalError("subpermutation index out of range");
  return preimage_[j];
}

unsigned Subpermutation::arc_count() const {
  unsigned c = 0;
  for (unsigned i = 1; i <= size(); ++i)
    if (image_[i]) ++c;
  return c;
}

void Subpermutation::set(unsigned i, unsigned j) {
  if (i < 1 || j <= i || j > size())
    throw InternalError("subpermutation arc must have 1 <= i < j <= n");
  if (image_[i] || preimage_[j])
    throw InternalError("subpermutation row or column used twice");
  image_[i] = j;
  preimage_[j] = i;
}

SquareMatrix Subpermutation::to_matrix(Field f) const {
  SquareMatrix m(size(), f);
  for (unsigned i = 1; i <= size(); ++i)
    if (image_[i]) m.at(i, image_[i]) = FieldScalar::one(f);
  return m;
}

RankProfile rank_profile(const SquareMatrix& a) {
  const unsigned n = a.size();
  RankProfile p(n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) p.entry(i, j) = submatrix_rank(a, i, j);
  return p;
}

Subpermutation subpermutation_of(const SquareMatrix& a) {
  if (!a.is_strictly_upper_triangular())
    throw NotStrictlyUpper("subpermutation_of: input must be strictly upper triangular");
  const unsigned n = a.size();
  const RankProfile p = rank_profile(a);
  Subpermutation q(n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      const unsigned delta =
          p.entry(i, j) + p.entry(i - 1, j - 1) - p.entry(i - 1, j) - p.entry(i, j - 1);
      if (delta == 0) continue;
      if (delta != 1) throw InternalError("rank profile step exceeds 1");
      q.set(n - i + 1, j);
    }
  return q;
}

bool is_in_QUn(const SquareMatrix& a, const Subpermutation& q) {
  const unsigned n = a.size();
  if (q.size() != n) return false;
  for (unsigned i = 1; i <= n; ++i) {
    unsigned leading = 0;
    for (unsigned j = 1; j <= n && leading == 0; ++j)
      if (!a.at(i, j).is_zero()) leading = j;
    if (!q.defined(i)) {
      if (leading != 0) return false;
    } else {
      if (leading != q.image(i) || !a.at(i, leading).is_one()) return false;
    }
  }
  return true;
}

void TransformLog::push(const SquareMatrix& factor) {
  factors_.push_back(factor);
  transform_ = multiply(factor, transform_);
}

SquareMatrix TransformLog::replay(const SquareMatrix& original) const {
  return multiply(multiply(transform_, original), invert_triangular(transform_));
}

namespace {

/// One bottom-up elimination pass of the coset-reduction procedure; factors
/// multiply into `left` (row operations) and `right` (column operations) so
/// that left * input * right stays equal to the working matrix.
void reduction_pass(SquareMatrix& m, SquareMatrix& left, SquareMatrix& right) {
  const unsigned n = m.size();
  const Field f = m.field();
  for (unsigned i = n; i >= 1; --i) {
    unsigned pivot = 0;
    for (unsigned j = 1; j <= n && pivot == 0; ++j)
      if (!m.at(i, j).is_zero()) pivot = j;
    if (pivot != 0) {
      // Clear row i to the right of the pivot with column operations.
      for (unsigned j = pivot + 1; j <= n; ++j) {
        if (m.at(i, j).is_zero()) continue;
        const FieldScalar lambda = -(m.at(i, j) / m.at(i, pivot));
        SquareMatrix e = SquareMatrix::identity(n, f);
        e.at(pivot, j) = lambda;
        m = multiply(m, e);
        right = multiply(right, e);
      }
      // Clear column `pivot` above row i with row operations.
      for (unsigned r = 1; r < i; ++r) {
        if (m.at(r, pivot).is_zero()) continue;
        const FieldScalar mu = -(m.at(r, pivot) / m.at(i, pivot));
        SquareMatrix e = SquareMatrix::identity(n, f);
        e.at(r, i) = mu;
        m = multiply(e, m);
        left = multiply(e, left);
      }
      // Scale the pivot to 1 by scaling its column.
      if (!m.at(i, pivot).is_one()) {
        SquareMatrix e = SquareMatrix::identity(n, f);
        e.at(pivot, pivot) = m.at(i, pivot).inverse();
        m = multiply(m, e);
        right = multiply(right, e);
      }
    }
    if (i == 1) break;
  }
}

bool is_subpermutation_matrix(const SquareMatrix& m, Subpermutation* out) {
  const unsigned n = m.size();
  Subpermutation q(n);
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (m.at(i, j).is_zero()) continue;
      if (!m.at(i, j).is_one() || j <= i || q.defined(i) || q.preimage(j) != 0) return false;
      q.set(i, j);
    }
  if (out) *out = q;
  return true;
}

}  // namespace

CosetReduction reduce_to_coset_rep(const SquareMatrix& a, TransformLog* log) {
  if (!a.is_strictly_upper_triangular())
    throw NotStrictlyUpper("reduce_to_coset_rep: input must be strictly upper triangular");
  const unsigned n = a.size();
  const Field f = a.field();

  SquareMatrix m = a;
  SquareMatrix left = SquareMatrix::identity(n, f);
  SquareMatrix right = SquareMatrix::identity(n, f);
  Subpermutation q(n);
  bool done = false;
  for (unsigned pass = 0; pass < 64 && !done; ++pass) {
    reduction_pass(m, left, right);
    done = is_subpermutation_matrix(m, &q);
  }
  if (!done) throw InternalError("coset reduction did not stabilize");

  // left * a * right == q, so left * a * left^{-1} = q * w with
  // w = right^{-1} * left^{-1} upper triangular.  A diagonal correction d
  // with d(i) * diag(w)(image(i)) == d(image(i)) turns q * w into a member
  // of QU_n after conjugation.
  const SquareMatrix w = multiply(invert_triangular(right), invert_triangular(left));
  SquareMatrix d = SquareMatrix::identity(n, f);
  for (unsigned i = 1; i <= n; ++i) {
    if (q.preimage(i) != 0) continue;  // not a chain start
    unsigned v = i;
    while (q.defined(v)) {
      const unsigned next = q.image(v);
      d.at(next, next) = d.at(v, v) * w.at(next, next);
      v = next;
    }
  }

  CosetReduction result;
  result.q = q;
  result.transform = multiply(d, left);
  result.representative = multiply(multiply(result.transform, a), invert_triangular(result.transform));
  if (log) log->push(result.transform);
  if (!is_in_QUn(result.representative, q))
    throw InternalError("coset representative failed membership check");
  return result;
}

std::vector<UpperTriangularBlock> split_upper_triangular(const SquareMatrix& a,
                                                         TransformLog* log) {
  if (!a.is_upper_triangular())
    throw NotUpperTriangular("split_upper_triangular: input must be upper triangular");
  const unsigned n = a.size();
  const Field f = a.field();
  SquareMatrix m = a;
  SquareMatrix t = SquareMatrix::identity(n, f);
  // Clear (i, j) whenever the two diagonal entries differ, sweeping rows
  // bottom-up and columns left-to-right within a row; every side effect of a
  // clearing lands at a position not yet swept.
  for (unsigned i = n; i >= 1; --i) {
    for (unsigned j = i + 1; j <= n; ++j) {
      if (m.at(i, j).is_zero() || m.at(i, i) == m.at(j, j)) continue;
      const FieldScalar x = m.at(i, j) / (m.at(i, i) - m.at(j, j));
      SquareMatrix g = SquareMatrix::identity(n, f);
      g.at(i, j) = x;
      m = multiply(multiply(g, m), invert_triangular(g));
      t = multiply(g, t);
      if (log) log->push(g);
      if (!m.at(i, j).is_zero()) throw InternalError("split: cleared entry is nonzero");
    }
    if (i == 1) break;
  }

  std::vector<UpperTriangularBlock> blocks;
  for (unsigned i = 1; i <= n; ++i) {
    const FieldScalar& v = m.at(i, i);
    UpperTriangularBlock* home = nullptr;
    for (auto& b : blocks)
      if (b.eigenvalue == v) home = &b;
    if (!home) {
      blocks.push_back(UpperTriangularBlock{v, {}, SquareMatrix()});
      home = &blocks.back();
    }
    home->indices.push_back(i);
  }
  for (auto& b : blocks) {
    const unsigned k = static_cast<unsigned>(b.indices.size());
    b.block = SquareMatrix(k, f);
    for (unsigned r = 1; r <= k; ++r)
      for (unsigned c = 1; c <= k; ++c)
        b.block.at(r, c) = m.at(b.indices[r - 1], b.indices[c - 1]);
  }
  return blocks;
}

}  // namespace belitskii
