#pragma once

#include "belitskii/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace belitskii {

/// Entry comparison value used by the diagonal-similarity test: the (i, j)
/// entry when it is nonzero, the reciprocal of the (j, i) entry when only
/// that one is nonzero, and zero when both vanish.
FieldScalar f_value(const SquareMatrix& a, unsigned i, unsigned j);

/// Diagonal witness for `c == d * a * d^{-1}`, or nullopt when no nonsingular
/// diagonal conjugates `a` onto `c`.  Scale factors are propagated from the
/// smallest vertex of each connected block of the shared support, then the
/// propagated diagonal is checked against every entry; the entry check covers
/// every multiplicative cycle condition, so propagation never needs to
/// backtrack.  Matrices of different sizes or fields are never similar.
std::optional<SquareMatrix> dn_similar_witness(const SquareMatrix& a, const SquareMatrix& c);

/// Whether some nonsingular diagonal conjugates `a` onto `c`.
bool dn_similar(const SquareMatrix& a, const SquareMatrix& c);

/// Every strictly upper triangular matrix over a prime field, partitioned
/// into conjugacy classes under the invertible upper triangular group.
/// Matrices are addressed by a mixed-radix code over the strictly upper
/// entries in row-major order, so code 0 is the zero matrix.
class OrbitTable {
public:
  OrbitTable(Field f, unsigned n, std::vector<std::uint32_t> orbit_of, unsigned orbit_count)
      : field_(f), n_(n), orbit_of_(std::move(orbit_of)), orbit_count_(orbit_count) {}

  const Field& field() const { return field_; }
  unsigned size() const { return n_; }
  std::uint64_t matrix_count() const { return orbit_of_.size(); }
  unsigned orbit_count() const { return orbit_count_; }

  std::uint64_t encode(const SquareMatrix& m) const;
  SquareMatrix decode(std::uint64_t code) const;
  unsigned orbit_id(std::uint64_t code) const { return orbit_of_.at(code); }
  unsigned orbit_id(const SquareMatrix& m) const { return orbit_of_.at(encode(m)); }

  bool operator==(const OrbitTable& o) const = default;

private:
  Field field_;
  unsigned n_;
  std::vector<std::uint32_t> orbit_of_;
  unsigned orbit_count_;
};

/// Brute-force orbit partition of the strictly upper triangular matrices over
/// GF(p), by worklist closure under the group generators: every elementary
/// transvection I + v*E_{pq} (p < q, v nonzero) and one single-position
/// diagonal generator per row built from a generator of the multiplicative
/// group.  Orbit ids are assigned in increasing order of each orbit's minimal
/// code, so the table is independent of the generator order; a nonzero
/// `generator_order_seed` shuffles the generator list to exercise that.
/// Capped at n <= 5 over GF(2) and n <= 4 otherwise (SizeCapError beyond).
OrbitTable bn_orbits_bruteforce(Field f, unsigned n, unsigned generator_order_seed = 0);

/// One line per matrix: the n*n row-major entries space-separated, then the
/// orbit id as the final token.  Lines are ordered by matrix code.
std::string export_orbit_table(const OrbitTable& t);

/// Outcome of replaying the canonical-form pipeline over a full orbit table:
/// the canonizer must send every matrix of one orbit to one canonical matrix
/// (constancy) and matrices of different orbits to different canonical
/// matrices (injectivity).  Violations are collected, never thrown.
struct ConsistencyReport {
  unsigned orbit_count = 0;
  unsigned canon_class_count = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ConsistencyReport check_canon_consistency(const OrbitTable& table);

}  // namespace belitskii
