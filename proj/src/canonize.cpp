#include "belitskii/canonize.hpp"

#include "belitskii/errors.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_set>
#include <utility>

namespace belitskii {

namespace {

struct DisjointSets {
  explicit DisjointSets(unsigned n) : parent(n + 1) {
    for (unsigned i = 0; i <= n; ++i) parent[i] = i;
  }
  unsigned find(unsigned v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
  std::vector<unsigned> parent;
};

DisjointSets chain_components(const GraphType& t) {
  DisjointSets ds(t.size());
  const Subpermutation q = partition_to_subpermutation(t.partition);
  for (unsigned i = 1; i <= t.size(); ++i)
    if (q.defined(i)) ds.unite(i, q.image(i));
  return ds;
}

}  // namespace

GraphType mark_parameters(const GraphType& t) {
  for (const MarkedArc& e : t.extras)
    if (e.marked) throw InternalError("mark_parameters: input carries marks already");
  DisjointSets ds = chain_components(t);
  GraphType out = t;
  for (MarkedArc& e : out.extras) {
    if (ds.find(e.arc.from) == ds.find(e.arc.to))
      e.marked = true;  // closes a cycle through unmarked arcs
    else
      ds.unite(e.arc.from, e.arc.to);
  }
  return out;
}

unsigned component_count(const GraphType& t) {
  DisjointSets ds = chain_components(t);
  for (const MarkedArc& e : t.extras) ds.unite(e.arc.from, e.arc.to);
  unsigned m = 0;
  for (unsigned v = 1; v <= t.size(); ++v)
    if (ds.find(v) == v) ++m;
  return m;
}

unsigned parameter_count(const GraphType& t) {
  const Subpermutation q = partition_to_subpermutation(t.partition);
  const unsigned arcs = q.arc_count() + static_cast<unsigned>(t.extras.size());
  const unsigned m = component_count(t);
  if (arcs + m < t.size()) throw InternalError("parameter_count: arc count below spanning forest");
  return arcs + m - t.size();
}

RemovalOracle::RemovalOracle(const Subpermutation& q) : n_(q.size()), q_(q) {
  if (n_ > 45) throw InternalError("RemovalOracle: dimension exceeds the position-mask capacity");
  for (unsigned i = 1; i <= n_; ++i)
    if (q_.defined(i)) chain_.set(arc_index({i, q_.image(i)}));
  for (const Arc& s : stabilizer_positions(q_)) stab_.set(arc_index(s));
  for (unsigned i = 1; i <= n_; ++i)
    for (unsigned j = i + 1; j <= n_; ++j) order_.push_back({i, j});
  std::sort(order_.begin(), order_.end(), belitskii_less);
}

unsigned RemovalOracle::arc_index(Arc a) const {
  return (a.to - 1) * (a.to - 2) / 2 + (a.from - 1);
}

RemovalOracle::Mask RemovalOracle::step(const Mask& full, unsigned p, unsigned q,
                                        Arc removed) const {
  Mask out = full;
  for (unsigned y = q + 1; y <= n_; ++y)
    if (full.test(arc_index({q, y}))) out.set(arc_index({p, y}));
  for (unsigned x = 1; x < p; ++x)
    if (full.test(arc_index({x, p}))) out.set(arc_index({x, q}));
  out.reset(arc_index(removed));
  return out & ~chain_;
}

std::optional<std::vector<ESOMove>> RemovalOracle::plan(const std::set<Arc>& extras, Arc target,
                                                        const std::set<Arc>& kept) const {
  if (!extras.count(target)) throw InternalError("removability: target arc absent");
  Mask start, allowed;
  for (const Arc& a : extras) start.set(arc_index(a));
  for (const Arc& a : kept) allowed.set(arc_index(a));
  for (const Arc& a : order_)
    if (belitskii_less(target, a)) allowed.set(arc_index(a));

  std::unordered_set<Mask> visited;
  constexpr size_t kStateCap = 200000;

  std::function<std::optional<std::vector<ESOMove>>(const Mask&)> search =
      [&](const Mask& s) -> std::optional<std::vector<ESOMove>> {
    if ((s & ~allowed).none()) return std::vector<ESOMove>{};
    if (!visited.insert(s).second) return std::nullopt;
    if (visited.size() > kStateCap)
      throw InternalError("removability: search exceeded the state cap");
    Arc bad{0, 0};
    for (const Arc& a : order_)
      if (s.test(arc_index(a)) && !allowed.test(arc_index(a))) {
        bad = a;
        break;
      }
    const Mask full = s | chain_;
    // Row moves at (bad.from, m) against a pivot arc (m, bad.to), then column
    // moves at (m, bad.to) against a pivot arc (bad.from, m), pivots ascending.
    for (unsigned m = bad.from + 1; m < bad.to; ++m) {
      if (!full.test(arc_index({m, bad.to})) || !stab_.test(arc_index({bad.from, m}))) continue;
      if (auto rest = search(step(full, bad.from, m, bad))) {
        rest->insert(rest->begin(), ESOMove{bad.from, m, std::nullopt, bad});
        return rest;
      }
    }
    for (unsigned m = bad.from + 1; m < bad.to; ++m) {
      if (!full.test(arc_index({bad.from, m})) || !stab_.test(arc_index({m, bad.to}))) continue;
      if (auto rest = search(step(full, m, bad.to, bad))) {
        rest->insert(rest->begin(), ESOMove{m, bad.to, std::nullopt, bad});
        return rest;
      }
    }
    return std::nullopt;
  };
  return search(start);
}

namespace {

std::set<Arc> extra_arcs_of(const SquareMatrix& m, const Subpermutation& q) {
  std::set<Arc> extras;
  for (unsigned i = 1; i <= m.size(); ++i)
    for (unsigned j = i + 1; j <= m.size(); ++j)
      if (!m.at(i, j).is_zero() && !(q.defined(i) && q.image(i) == j)) extras.insert({i, j});
  return extras;
}

/// Replays a symbolic plan on concrete weights.  Returns false when a pivot
/// the plan relies on has concretely cancelled to zero (the caller replans
/// from the current state); moves whose target is already zero are skipped.
bool apply_plan(SquareMatrix& m, TransformLog& log, const std::vector<ESOMove>& plan) {
  const Field f = m.field();
  for (const ESOMove& mv : plan) {
    const Arc t = *mv.target;
    const FieldScalar cur = m.at(t.from, t.to);
    if (cur.is_zero()) continue;
    FieldScalar lambda = FieldScalar::zero(f);
    if (mv.p == t.from) {  // row move: pivot sits at (mv.q, t.to)
      const FieldScalar pivot = m.at(mv.q, t.to);
      if (pivot.is_zero()) return false;
      lambda = FieldScalar::zero(f) - cur / pivot;
    } else {  // column move: pivot sits at (t.from, mv.p)
      const FieldScalar pivot = m.at(t.from, mv.p);
      if (pivot.is_zero()) return false;
      lambda = cur / pivot;
    }
    SquareMatrix g = SquareMatrix::identity(m.size(), f);
    g.at(mv.p, mv.q) = lambda;
    log.push(g);
    m = apply_eso(m, ESOMove{mv.p, mv.q, lambda, mv.target});
    if (!m.at(t.from, t.to).is_zero())
      throw InternalError("reduce_in_coset: move failed to clear its target");
  }
  return true;
}

}  // namespace

CosetScan reduce_in_coset(const SquareMatrix& a, const Subpermutation& q) {
  if (!is_in_QUn(a, q)) throw InternalError("reduce_in_coset: input not in QU_n shape");
  const RemovalOracle oracle(q);
  SquareMatrix m = a;
  TransformLog log(a.size(), a.field());
  std::set<Arc> kept;
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw InternalError("reduce_in_coset: scan did not settle");
    const std::set<Arc> extras = extra_arcs_of(m, q);
    std::optional<Arc> t;
    for (const Arc& e : extras)
      if (!kept.count(e) && (!t || belitskii_less(e, *t))) t = e;
    if (!t) break;
    const auto plan = oracle.plan(extras, *t, kept);
    if (!plan) {
      kept.insert(*t);
      continue;
    }
    apply_plan(m, log, *plan);  // on a concrete mismatch the loop replans
  }
  return {std::move(m), std::move(log)};
}

CanonicalForm dn_normalize(const SquareMatrix& a, const GraphType& marks) {
  const unsigned n = a.size();
  const Field f = a.field();
  const Subpermutation q = partition_to_subpermutation(marks.partition);
  if (!is_in_QUn(a, q)) throw InternalError("dn_normalize: input not in QU_n shape");
  std::set<Arc> want;
  for (const MarkedArc& e : marks.extras) want.insert(e.arc);
  if (want != extra_arcs_of(a, q)) throw InternalError("dn_normalize: arc sets differ");

  // Spanning propagation over the unmarked arcs, each component rooted at its
  // smallest vertex.
  std::vector<std::vector<Arc>> adj(n + 1);
  auto add_edge = [&](const Arc& e) {
    adj[e.from].push_back(e);
    adj[e.to].push_back(e);
  };
  for (unsigned i = 1; i <= n; ++i)
    if (q.defined(i)) add_edge({i, q.image(i)});
  for (const MarkedArc& e : marks.extras)
    if (!e.marked) add_edge(e.arc);

  std::vector<std::optional<FieldScalar>> d(n + 1);
  for (unsigned root = 1; root <= n; ++root) {
    if (d[root]) continue;
    d[root] = FieldScalar::one(f);
    std::queue<unsigned> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      const unsigned u = bfs.front();
      bfs.pop();
      for (const Arc& e : adj[u]) {
        const unsigned v = e.from == u ? e.to : e.from;
        const FieldScalar w = a.at(e.from, e.to);
        const FieldScalar cand = e.from == u ? *d[u] * w : *d[u] / w;
        if (!d[v]) {
          d[v] = cand;
          bfs.push(v);
        } else if (!(*d[v] == cand)) {
          throw InternalError("dn_normalize: conflicting weights on an unmarked cycle");
        }
      }
    }
  }

  SquareMatrix diag = SquareMatrix::identity(n, f);
  for (unsigned v = 1; v <= n; ++v) diag.at(v, v) = *d[v];
  TransformLog log(n, f);
  log.push(diag);
  SquareMatrix out = log.replay(a);
  std::map<Arc, FieldScalar> params;
  for (const MarkedArc& e : marks.extras) {
    const FieldScalar w = out.at(e.arc.from, e.arc.to);
    if (e.marked) {
      if (w.is_zero()) throw InternalError("dn_normalize: marked arc lost its weight");
      params.emplace(e.arc, w);
    } else if (!(w == FieldScalar::one(f))) {
      throw InternalError("dn_normalize: unmarked arc not normalized");
    }
  }
  return {marks, std::move(params), std::move(out), std::move(log)};
}

CanonicalForm canon(const SquareMatrix& a) {
  if (!a.is_strictly_upper_triangular())
    throw NotStrictlyUpper("canon: input must be strictly upper triangular");
  TransformLog master(a.size(), a.field());
  const CosetReduction coset = reduce_to_coset_rep(a, &master);
  const CosetScan scan = reduce_in_coset(coset.representative, coset.q);
  for (const SquareMatrix& g : scan.log.factors()) master.push(g);

  std::vector<MarkedArc> extras;
  for (const Arc& e : extra_arcs_of(scan.matrix, coset.q)) extras.push_back({e, false});
  std::sort(extras.begin(), extras.end(),
            [](const MarkedArc& x, const MarkedArc& y) { return belitskii_less(x.arc, y.arc); });
  const GraphType marked =
      mark_parameters(GraphType{subpermutation_to_partition(coset.q), std::move(extras)});

  CanonicalForm cf = dn_normalize(scan.matrix, marked);
  for (const SquareMatrix& g : cf.witness.factors()) master.push(g);
  if (!(master.replay(a) == cf.matrix))
    throw InternalError("canon: witness does not replay to the canonical matrix");
  cf.witness = std::move(master);
  return cf;
}

}  // namespace belitskii
