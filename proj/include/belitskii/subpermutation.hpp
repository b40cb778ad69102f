#pragma once

#include "belitskii/matrix.hpp"

#include <vector>

namespace belitskii {

/// A strictly upper triangular 0/1 matrix with at most one 1 per row and per
/// column, stored as the partial map i -> image(i).  Images satisfy
/// i < image(i); 0 encodes "undefined".
class Subpermutation {
public:
  Subpermutation() = default;
  explicit Subpermutation(unsigned n) : image_(n + 1, 0), preimage_(n + 1, 0) {}

  unsigned size() const { return image_.empty() ? 0 : static_cast<unsigned>(image_.size() - 1); }
  bool defined(unsigned i) const { return image(i) != 0; }
  unsigned image(unsigned i) const;     ///< 0 when row i has no 1
  unsigned preimage(unsigned j) const;  ///< 0 when column j has no 1
  unsigned arc_count() const;

  /// Records image(i) = j.  Throws InternalError unless 1 <= i < j <= n and
  /// neither row i nor column j is already used.
  void set(unsigned i, unsigned j);

  SquareMatrix to_matrix(Field f) const;

  bool operator==(const Subpermutation& o) const { return image_ == o.image_; }
  bool operator!=(const Subpermutation& o) const { return !(*this == o); }

private:
  std::vector<unsigned> image_;
  std::vector<unsigned> preimage_;
};

}  // namespace belitskii
