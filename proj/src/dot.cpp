#include "belitskii/dot.hpp"

#include "belitskii/coset.hpp"

#include <sstream>
#include <vector>

namespace belitskii {

namespace {

struct DotArc {
  Arc arc;
  std::string label;  ///< empty for a bare solid arc
  bool dashed = false;
};

std::string render(unsigned n, const std::vector<DotArc>& arcs) {
  std::ostringstream out;
  out << "digraph belitskii {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (unsigned v = 1; v <= n; ++v) out << "  " << v << ";\n";
  // Invisible spine pinning the vertex order 1..n left to right.
  for (unsigned v = 1; v < n; ++v)
    out << "  " << v << " -> " << v + 1 << " [style=invis, weight=100];\n";
  for (const DotArc& a : arcs) {
    out << "  " << a.arc.from << " -> " << a.arc.to;
    std::string attrs;
    if (!a.label.empty()) attrs = "label=\"" + a.label + "\"";
    if (a.dashed) attrs += (attrs.empty() ? "" : ", ") + std::string("style=dashed, constraint=false");
    if (!attrs.empty()) out << " [" << attrs << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<DotArc> chain_arcs(const Subpermutation& q) {
  std::vector<DotArc> arcs;
  for (unsigned i = 1; i <= q.size(); ++i)
    if (q.defined(i)) arcs.push_back({{i, q.image(i)}, "", false});
  return arcs;
}

}  // namespace

std::map<Arc, std::string> parameter_names(const GraphType& t) {
  std::map<Arc, std::string> names;
  unsigned next = 1;
  for (const MarkedArc& e : t.extras)
    if (e.marked) names[e.arc] = "t" + std::to_string(next++);
  return names;
}

std::string to_dot(const GraphType& t, const std::map<Arc, FieldScalar>& values) {
  const Subpermutation q = partition_to_subpermutation(t.partition);
  std::vector<DotArc> arcs = chain_arcs(q);
  const std::map<Arc, std::string> names = parameter_names(t);
  for (const MarkedArc& e : t.extras) {
    std::string label = e.marked ? names.at(e.arc) : "1";
    const auto v = values.find(e.arc);
    if (v != values.end()) label = e.marked ? label + "=" + v->second.to_string() : v->second.to_string();
    arcs.push_back({e.arc, label, true});
  }
  return render(t.size(), arcs);
}

std::string to_dot(const SquareMatrix& a) {
  const WeightedDigraph g = graph_of(a);
  const Subpermutation q = subpermutation_of(a);
  if (is_in_QUn(a, q)) {
    std::vector<DotArc> arcs = chain_arcs(q);
    for (const auto& [arc, w] : g.arcs())
      if (!(q.defined(arc.from) && q.image(arc.from) == arc.to))
        arcs.push_back({arc, w.to_string(), true});
    return render(a.size(), arcs);
  }
  std::vector<DotArc> arcs;
  for (const auto& [arc, w] : g.arcs()) arcs.push_back({arc, w.to_string(), false});
  return render(a.size(), arcs);
}

std::string to_dot(const CanonicalForm& cf) { return to_dot(cf.graph_type, cf.param_values); }

}  // namespace belitskii
