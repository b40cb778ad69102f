#pragma once

#include "belitskii/coset.hpp"
#include "belitskii/graph.hpp"

#include <bitset>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace belitskii {

/// A matrix in Belitskiĭ canonical position: its graph type with parameter
/// marks, the values sitting on the marked arcs, the canonical matrix itself,
/// and the conjugation that produced it from the input.
struct CanonicalForm {
  GraphType graph_type;
  std::map<Arc, FieldScalar> param_values;  ///< marked arc -> nonzero value
  SquareMatrix matrix;
  TransformLog witness;  ///< matrix == transform * input * transform^{-1}
};

/// Scans the extra arcs in Belitskiĭ order and marks each arc whose endpoints
/// are already connected through unmarked arcs; marked arcs carry the free
/// parameters of the type.  The input must be unmarked.
GraphType mark_parameters(const GraphType& t);

/// Connected components of the underlying undirected graph on the vertices.
unsigned component_count(const GraphType& t);

/// Free parameters of the type: arcs - vertices + components.  Always equals
/// the number of marks placed by mark_parameters.
unsigned parameter_count(const GraphType& t);

/// Decides whether a target arc can be eliminated by moves stabilizing QU_n
/// when the weights are in general position.  A successful plan leaves arcs
/// only on kept positions and positions after the target in Belitskiĭ order;
/// the canonizer replays plans on concrete weights and the enumerator uses
/// removability as its branch filter.
class RemovalOracle {
public:
  explicit RemovalOracle(const Subpermutation& q);

  /// Move sequence eliminating `target`, or nullopt when every branch fails.
  /// `extras` lists the non-chain arcs present (the chain arcs are implicit);
  /// each returned move names its target and leaves lambda symbolic.
  std::optional<std::vector<ESOMove>> plan(const std::set<Arc>& extras, Arc target,
                                           const std::set<Arc>& kept) const;

  bool removable(const std::set<Arc>& extras, Arc target, const std::set<Arc>& kept) const {
    return plan(extras, target, kept).has_value();
  }

  const Subpermutation& subpermutation() const { return q_; }

private:
  using Mask = std::bitset<1024>;

  unsigned arc_index(Arc a) const;
  Mask step(const Mask& full, unsigned p, unsigned q, Arc removed) const;

  unsigned n_;
  Subpermutation q_;
  Mask chain_;
  Mask stab_;
  std::vector<Arc> order_;  ///< all strictly upper positions, Belitskiĭ order
};

struct CosetScan {
  SquareMatrix matrix;
  TransformLog log;
};

/// Belitskiĭ-order elimination scan inside a triangular coset: every extra
/// entry that some stabilizing move sequence can annihilate -- touching only
/// positions later in the order or positions already kept -- is eliminated;
/// the surviving entries are kept in place.  Requires a matrix in QU_n shape
/// for q.
CosetScan reduce_in_coset(const SquareMatrix& a, const Subpermutation& q);

/// Conjugates by a diagonal matrix so that every unmarked arc carries weight
/// one; the values remaining on the marked arcs are the parameters.  The arc
/// set of `a` must equal the arc set of `marks`.
CanonicalForm dn_normalize(const SquareMatrix& a, const GraphType& marks);

/// Full canonical-form pipeline for a nilpotent upper triangular matrix:
/// coset representative, in-coset elimination scan, parameter marking, and
/// diagonal normalization.  The witness conjugates the input to the output
/// exactly.
CanonicalForm canon(const SquareMatrix& a);

}  // namespace belitskii
