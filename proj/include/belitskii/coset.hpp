#pragma once

#include "belitskii/matrix.hpp"
#include "belitskii/subpermutation.hpp"

#include <vector>

namespace belitskii {

/// Table of the ranks of all lower-left submatrices: entry(i, j) is the rank
/// of the block formed by the last i rows and first j columns (0 <= i, j <= n).
class RankProfile {
public:
  RankProfile() = default;
  explicit RankProfile(unsigned n) : n_(n), r_((n + 1) * (n + 1), 0) {}

  unsigned size() const { return n_; }
  unsigned entry(unsigned i, unsigned j) const { return r_.at(i * (n_ + 1) + j); }
  unsigned& entry(unsigned i, unsigned j) { return r_.at(i * (n_ + 1) + j); }

  bool operator==(const RankProfile& o) const = default;

private:
  unsigned n_ = 0;
  std::vector<unsigned> r_;
};

RankProfile rank_profile(const SquareMatrix& a);

/// The unique subpermutation whose triangular-equivalence class contains `a`,
/// read off the rank profile by inclusion-exclusion.  Requires a strictly
/// upper triangular input (NotStrictlyUpper otherwise).
Subpermutation subpermutation_of(const SquareMatrix& a);

/// Whether every row of `a` is zero exactly when q leaves it undefined and
/// otherwise has its leading (leftmost nonzero) entry equal to 1 in column
/// image(i).
bool is_in_QUn(const SquareMatrix& a, const Subpermutation& q);

/// Ordered record of similarity factors: push(g) appends g to the factor list
/// and multiplies the accumulated transform so that the tracked matrix is
/// always transform() * original * transform()^{-1}.
class TransformLog {
public:
  TransformLog(unsigned n, Field f) : transform_(SquareMatrix::identity(n, f)) {}

  void push(const SquareMatrix& factor);
  const std::vector<SquareMatrix>& factors() const { return factors_; }
  const SquareMatrix& transform() const { return transform_; }
  SquareMatrix replay(const SquareMatrix& original) const;

private:
  std::vector<SquareMatrix> factors_;
  SquareMatrix transform_;
};

struct CosetReduction {
  Subpermutation q;
  SquareMatrix representative;  ///< transform * a * transform^{-1}, in QU_n
  SquareMatrix transform;       ///< invertible upper triangular
};

/// Reduces a strictly upper triangular matrix into its triangular coset:
/// finds an upper triangular T with T a T^{-1} in QU_n for the subpermutation
/// q of `a`.  Factors of T are appended to `log` when given.
CosetReduction reduce_to_coset_rep(const SquareMatrix& a, TransformLog* log = nullptr);

struct UpperTriangularBlock {
  FieldScalar eigenvalue;         ///< shared diagonal entry of the block
  std::vector<unsigned> indices;  ///< original 1-based row indices, ascending
  SquareMatrix block;             ///< principal submatrix on `indices`
};

/// Conjugates an upper triangular matrix so that every entry linking two
/// different diagonal values vanishes, then groups indices by diagonal value
/// (in first-occurrence order).  The result is a permutation-similar direct
/// sum of the returned blocks; each block is its eigenvalue times the
/// identity plus a nilpotent part.  Factors go to `log` when given.
std::vector<UpperTriangularBlock> split_upper_triangular(const SquareMatrix& a,
                                                         TransformLog* log = nullptr);

}  // namespace belitskii
