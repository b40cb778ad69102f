#pragma once

#include "belitskii/canonize.hpp"
#include "belitskii/graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace belitskii {

/// All set partitions of [n] with blocks in canonical order, generated from
/// restricted-growth strings in lexicographic order.  Throws ParseError
/// unless 1 <= n <= 14.
std::vector<SetPartition> set_partitions(unsigned n);

/// The positions where a canonical form over Q's coset may carry an extra
/// arc, in ascending elimination order.  A position (i, j) qualifies when i
/// has a chain successor i+ and either
///   - j is a chain minimum but not a maximum, with i+ < j, or
///   - j is interior to a chain, with pred(j) < i < i+ < j;
/// positions are then discarded when the two chain walks starting at (i, j)
/// (step i through its chain, j through its chain) reach a configuration
/// that forces the entry to zero: the walk succeeds when each step keeps
/// i_p < j_{p-1}, no other candidate arc enters any i_p or leaves any
/// j_{p-1}, and it ends with j's chain exhausted while i's chain is not.
/// Discards are iterated to a fixpoint, since removing one candidate can
/// unblock the walk of another.
std::vector<Arc> candidate_extra_arcs(const Subpermutation& q);

/// All canonical-form types over the coset of P's subpermutation: candidates
/// are decided in ascending elimination order; a candidate with a removal
/// plan given the kept prefix is skipped, otherwise both the keep branch
/// (first) and the drop branch are explored.  Leaves are returned in
/// search order with parameter marks applied.
std::vector<GraphType> enumerate_for_partition(const SetPartition& p);

/// Forms grouped under one partition; `forms` sorted by printed arc list.
struct PartitionForms {
  SetPartition partition;
  std::vector<GraphType> forms;
};

/// Census of canonical-form types for one n.
struct EnumerationReport {
  unsigned n = 0;
  bool indecomposable_only = false;
  /// Partitions that contributed at least one listed form, sorted by their
  /// printed text.
  std::vector<PartitionForms> partitions;
  unsigned long long form_count = 0;            ///< listed forms
  unsigned long long indecomposable_count = 0;  ///< connected listed forms
  /// Partitions with at least one indecomposable form.
  unsigned long long partitions_with_indecomposable = 0;
};

/// Render the report: one "<partition>: <arcs>" line per form, followed by
/// the summary line "n=<n> forms=<f> partitions=<p>" where f counts listed
/// forms and p the listed partitions.
std::string format_report(const EnumerationReport& report);

/// Enumerate every canonical-form type on n vertices.  With
/// indecomposable_only, keep only the connected ones.  `jobs` > 1 fans the
/// partitions out to that many worker threads; the merged result does not
/// depend on the thread count.
EnumerationReport enumerate_bforms(unsigned n, bool indecomposable_only,
                                   unsigned jobs = 1);

/// Whether t is exactly one of the types produced for its own partition,
/// including parameter marks.
bool is_canonical(const GraphType& t);

/// Stack t1 above t2 (vertices of t2 shifted by t1's size) and splice the
/// chains along `cross`: each pair (h, t) joins a chain maximum h of t1 to a
/// shifted chain minimum t of t2, at most one pair per vertex.  Extra arcs
/// are re-sorted and parameter marks recomputed on the merged graph.  Throws
/// ParseError when a cross pair violates those constraints.
GraphType combine(const GraphType& t1, const GraphType& t2,
                  const std::vector<std::pair<unsigned, unsigned>>& cross);

/// Largest admissible parameter count for construct_3nilpotent at this n:
/// with k = floor((n-2)/3), k(k-1)/2 for n = 0,2 mod 3 and k(k-1)/2 - 1 for
/// n = 1 mod 3.  Negative means no admissible count.
long long max_3nilpotent_params(unsigned n);

/// A connected canonical type on n >= 6 vertices with exactly r parameter
/// marks whose weight-1 realization M satisfies M^3 = 0 and M^2 != 0.  The
/// family pairs chain k -> 2m+1-k -> 2m+k (m covering chains of [n] by
/// threes, the last one or two chains truncated when 3 does not divide n)
/// with extra arcs {(i, j): 2 <= i <= m, 2m+2-i <= j <= 2m}; sub-maximal r
/// removes extra arcs in descending elimination order, skipping any whose
/// loss would disconnect the graph.  Throws ParseError when n < 6 or r
/// exceeds max_3nilpotent_params(n).
GraphType construct_3nilpotent(unsigned n, unsigned r);

/// Two-way difference between a report's listed forms and a bundled table
/// (one graph type per line, blank lines ignored).  Both sides are
/// normalized through the printer before comparison.
struct TableDiff {
  std::vector<std::string> missing;  ///< in the table, not in the report
  std::vector<std::string> extra;    ///< in the report, not in the table

  bool empty() const { return missing.empty() && extra.empty(); }
};

TableDiff verify_against_table(const EnumerationReport& report,
                               const std::string& table_text);

}  // namespace belitskii
