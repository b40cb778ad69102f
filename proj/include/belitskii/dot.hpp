#pragma once

#include "belitskii/canonize.hpp"
#include "belitskii/graph.hpp"

#include <map>
#include <string>

namespace belitskii {

/// Display names for the marked arcs of a type: t1, t2, ... in ascending
/// elimination order.  Used by the DOT renderer and the CLI.
std::map<Arc, std::string> parameter_names(const GraphType& t);

/// DOT rendering of a graph type: vertices 1..n laid out left to right along
/// an invisible spine, chain arcs solid and unlabeled, extra arcs dashed and
/// labeled — an unmarked extra with its weight (1 in the bare type), a marked
/// extra with its parameter name, "name=value" when `values` provides one.
std::string to_dot(const GraphType& t, const std::map<Arc, FieldScalar>& values = {});

/// DOT rendering of a strictly upper triangular matrix.  A matrix whose rows
/// lead with unit entries in subpermutation position is drawn like its type:
/// leading arcs solid, the rest dashed with weight labels.  Any other matrix
/// is drawn as a plain weighted digraph, every arc solid and labeled.
std::string to_dot(const SquareMatrix& a);

/// DOT rendering of a canonical form: its type with the parameter values.
std::string to_dot(const CanonicalForm& cf);

}  // namespace belitskii
