#pragma once

#include "belitskii/matrix.hpp"
#include "belitskii/subpermutation.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace belitskii {

/// Directed arc i -> j with 1 <= i < j.
struct Arc {
  unsigned from = 0;
  unsigned to = 0;

  bool operator==(const Arc&) const = default;
  /// Lexicographic order, used only for container keys.
  bool operator<(const Arc& o) const {
    return from != o.from ? from < o.from : to < o.to;
  }
};

/// Three-way comparison in the elimination order on positions: (i, j) comes
/// before (i', j') when i > i', or i == i' and j < j'.  Returns -1, 0, or 1.
int belitskii_compare(Arc a, Arc b);

/// Strict "comes before" in the elimination order.
inline bool belitskii_less(Arc a, Arc b) { return belitskii_compare(a, b) < 0; }

/// Weighted digraph on vertices [n] with arcs pointing up (i < j); the graph
/// counterpart of a strictly upper triangular matrix.
class WeightedDigraph {
public:
  WeightedDigraph() = default;
  WeightedDigraph(unsigned n, Field f) : n_(n), field_(f) {}

  unsigned size() const { return n_; }
  const Field& field() const { return field_; }

  bool has_arc(Arc a) const { return weights_.count(a) != 0; }
  /// Zero when absent.
  FieldScalar weight(Arc a) const;
  /// Setting a zero weight removes the arc.
  void set_weight(Arc a, const FieldScalar& w);

  const std::map<Arc, FieldScalar>& arcs() const { return weights_; }

  SquareMatrix to_matrix() const;

  bool operator==(const WeightedDigraph& o) const = default;

private:
  unsigned n_ = 0;
  Field field_{};
  std::map<Arc, FieldScalar> weights_;
};

WeightedDigraph graph_of(const SquareMatrix& a);  ///< NotStrictlyUpper unless nilpotent upper

/// Partition of [n] into blocks; canonical form stores each block ascending
/// and orders blocks by their minima.
class SetPartition {
public:
  SetPartition() = default;
  /// Blocks are sorted into canonical form; throws ParseError unless they
  /// cover [n] exactly once with n >= 1.
  explicit SetPartition(std::vector<std::vector<unsigned>> blocks);

  unsigned size() const { return n_; }
  const std::vector<std::vector<unsigned>>& blocks() const { return blocks_; }

  bool operator==(const SetPartition& o) const { return blocks_ == o.blocks_; }

private:
  unsigned n_ = 0;
  std::vector<std::vector<unsigned>> blocks_;
};

/// Chains of consecutive block elements: block {v1 < v2 < ...} contributes
/// arcs v1 -> v2 -> ...
Subpermutation partition_to_subpermutation(const SetPartition& p);
SetPartition subpermutation_to_partition(const Subpermutation& q);

/// An extra arc of a graph type; `marked` flags an independent parameter
/// whose value stays free in the general form.
struct MarkedArc {
  Arc arc;
  bool marked = false;

  bool operator==(const MarkedArc&) const = default;
};

/// A partition (giving the chain arcs) plus extra arcs in ascending
/// elimination order — the combinatorial shape of a matrix in QU_n.
struct GraphType {
  SetPartition partition;
  std::vector<MarkedArc> extras;

  unsigned size() const { return partition.size(); }
  bool operator==(const GraphType&) const = default;
};

/// Text form "<partition>: <arcs>" — blocks joined by '|' and ordered by
/// minima; vertex numbers concatenated for n <= 9, space-separated for
/// n >= 10; arcs joined by '|' in ascending elimination order, a marked arc
/// written _ij_; "empty" (or the empty-set glyph, or nothing) when there are
/// no extra arcs.
std::string print_graph_type(const GraphType& g);

/// Inverse of print_graph_type; also accepts arcs in any order and
/// normalizes.  Rejects arcs that leave QU_n: every extra (i, j) needs the
/// chain successor of i to exist and precede j.  Throws ParseError.
GraphType parse_graph_type(const std::string& text);

/// Positions (i, j) such that adding any multiple of the elementary matrix
/// E_ij to the identity conjugates Q-representatives within QU_n, in
/// ascending elimination order.
std::vector<Arc> stabilizer_positions(const Subpermutation& q);

/// Conjugation by I + lambda * E_pq acting on a strictly upper triangular
/// matrix: row p gains lambda times row q, column q loses lambda times
/// column p.  `target`, when set, names the position the move is meant to
/// annihilate.
struct ESOMove {
  unsigned p = 0;
  unsigned q = 0;
  std::optional<FieldScalar> lambda;  ///< absent for a generic (type-level) move
  std::optional<Arc> target;
};

WeightedDigraph apply_eso(const WeightedDigraph& g, const ESOMove& m);
SquareMatrix apply_eso(const SquareMatrix& a, const ESOMove& m);

/// The moves that can annihilate `target` in g while conjugating within the
/// stabilizer of Q: first the moves acting from the target's row (pivot arc
/// (q, j) with i < q < j), then the moves acting from the target's column
/// (pivot arc (i, p) with i < p < j), each group by ascending pivot index.
/// Lambdas are filled from the weights of g.
std::vector<ESOMove> elimination_moves(const WeightedDigraph& g, Arc target,
                                       const Subpermutation& q);

/// Position-level effect of an ESO move designed to annihilate move.target:
/// (arcs ∪ row effects ∪ column effects) minus the target.  Throws
/// InternalError unless the target is present and the move's effects cover
/// it.  The concrete arc set after apply_eso is always a subset of this.
std::set<Arc> generic_eso(const std::set<Arc>& arcs, const ESOMove& move);

}  // namespace belitskii
