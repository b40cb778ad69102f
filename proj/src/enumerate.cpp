#include "belitskii/enumerate.hpp"

#include "belitskii/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace belitskii {

namespace {

/// Minimal union-find over vertices 1..n.
class DisjointVertices {
 public:
  explicit DisjointVertices(unsigned n) : parent_(n + 1) {
    for (unsigned v = 0; v <= n; ++v) parent_[v] = v;
  }

  unsigned find(unsigned v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(unsigned a, unsigned b) { parent_[find(a)] = find(b); }

 private:
  std::vector<unsigned> parent_;
};

unsigned components_of(unsigned n, const Subpermutation& q,
                       const std::vector<Arc>& extras) {
  DisjointVertices dsu(n);
  for (unsigned i = 1; i <= n; ++i)
    if (q.defined(i)) dsu.unite(i, q.image(i));
  for (Arc a : extras) dsu.unite(a.from, a.to);
  unsigned count = 0;
  for (unsigned v = 1; v <= n; ++v)
    if (dsu.find(v) == v) ++count;
  return count;
}

/// The two-chain walk that forces the entry at t to zero: step i along its
/// chain and j along its chain while each new i stays left of the previous j
/// and no other surviving candidate touches the walk (enters the new i or
/// leaves the previous j).  Forced iff the walk ends with j's chain
/// exhausted while i's chain continues past the final j — the closing move
/// lives at (successor of final i, final j), so it must stay strictly upper.
bool walk_forces_zero(const Subpermutation& q, Arc t,
                      const std::vector<Arc>& surviving) {
  unsigned ip = t.from;
  unsigned jp = t.to;
  for (;;) {
    if (!q.defined(ip) || !q.defined(jp)) return false;
    const unsigned inext = q.image(ip);
    for (Arc c : surviving) {
      if (c == t) continue;
      if (c.to == inext || c.from == jp) return false;
    }
    if (inext >= jp) return false;
    ip = inext;
    jp = q.image(jp);
    if (!q.defined(jp)) return q.defined(ip) && q.image(ip) < jp;
  }
}

std::string arcs_text(const GraphType& t) {
  std::string out;
  for (const MarkedArc& ma : t.extras) {
    out += ma.marked ? "_" : "";
    out += std::to_string(ma.arc.from) + "," + std::to_string(ma.arc.to);
    out += ma.marked ? "_" : "";
    out += "|";
  }
  return out;
}

std::string partition_text(const SetPartition& p) {
  GraphType bare;
  bare.partition = p;
  return print_graph_type(bare);
}

}  // namespace

std::vector<SetPartition> set_partitions(unsigned n) {
  if (n < 1 || n > 14)
    throw ParseError("set_partitions supports 1 <= n <= 14, got " +
                     std::to_string(n));
  std::vector<SetPartition> out;
  // Restricted growth strings: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]),
  // enumerated in lexicographic order.
  std::vector<unsigned> a(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned top) {
    if (i == n) {
      std::vector<std::vector<unsigned>> blocks(top + 1);
      for (unsigned v = 0; v < n; ++v) blocks[a[v]].push_back(v + 1);
      out.push_back(SetPartition(std::move(blocks)));
      return;
    }
    for (unsigned b = 0; b <= top + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(top, b));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

std::vector<Arc> candidate_extra_arcs(const Subpermutation& q) {
  const unsigned n = q.size();
  std::vector<Arc> cands;
  for (unsigned i = 1; i <= n; ++i) {
    if (!q.defined(i)) continue;
    for (unsigned j = q.image(i) + 1; j <= n; ++j) {
      const bool has_pred = q.preimage(j) != 0;
      const bool has_succ = q.defined(j);
      if (!has_pred && has_succ) {
        cands.push_back({i, j});  // j opens a chain of length >= 1
      } else if (has_pred && has_succ && q.preimage(j) < i) {
        cands.push_back({i, j});  // j interior, entered from inside its gap
      }
    }
  }
  std::sort(cands.begin(), cands.end(), belitskii_less);

  // Discard forced-zero positions; a discard can unblock another walk, so
  // iterate to a fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = cands.begin(); it != cands.end();) {
      if (walk_forces_zero(q, *it, cands)) {
        it = cands.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return cands;
}

std::vector<GraphType> enumerate_for_partition(const SetPartition& p) {
  const Subpermutation q = partition_to_subpermutation(p);
  const std::vector<Arc> cands = candidate_extra_arcs(q);
  const RemovalOracle oracle(q);

  std::vector<GraphType> out;
  std::set<Arc> kept;
  std::vector<Arc> kept_order;
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == cands.size()) {
      GraphType t;
      t.partition = p;
      for (Arc a : kept_order) t.extras.push_back({a, false});
      out.push_back(mark_parameters(t));
      return;
    }
    const Arc t = cands[idx];
    std::set<Arc> extras = kept;
    extras.insert(t);
    if (oracle.removable(extras, t, kept)) {
      rec(idx + 1);
      return;
    }
    kept.insert(t);
    kept_order.push_back(t);
    rec(idx + 1);
    kept.erase(t);
    kept_order.pop_back();
    rec(idx + 1);
  };
  rec(0);
  return out;
}

std::string format_report(const EnumerationReport& report) {
  std::string out;
  for (const PartitionForms& pf : report.partitions)
    for (const GraphType& f : pf.forms) {
      out += print_graph_type(f);
      out += '\n';
    }
  out += "n=" + std::to_string(report.n) +
         " forms=" + std::to_string(report.form_count) +
         " partitions=" + std::to_string(report.partitions.size()) + "\n";
  return out;
}

EnumerationReport enumerate_bforms(unsigned n, bool indecomposable_only,
                                   unsigned jobs) {
  const std::vector<SetPartition> parts = set_partitions(n);
  std::vector<std::vector<GraphType>> listed(parts.size());
  std::vector<unsigned> indec(parts.size(), 0);

  auto work = [&](size_t k) {
    std::vector<GraphType> forms = enumerate_for_partition(parts[k]);
    for (GraphType& f : forms) {
      const bool connected = component_count(f) == 1;
      if (connected) ++indec[k];
      if (!indecomposable_only || connected) listed[k].push_back(std::move(f));
    }
  };

  const size_t workers =
      std::min<size_t>(std::max(1u, jobs), parts.size());
  if (workers <= 1) {
    for (size_t k = 0; k < parts.size(); ++k) work(k);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (;;) {
          const size_t k = next.fetch_add(1);
          if (k >= parts.size()) return;
          try {
            work(k);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
            return;
          }
        }
      });
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  EnumerationReport rep;
  rep.n = n;
  rep.indecomposable_only = indecomposable_only;
  std::vector<size_t> order(parts.size());
  for (size_t k = 0; k < parts.size(); ++k) order[k] = k;
  std::vector<std::string> keys(parts.size());
  for (size_t k = 0; k < parts.size(); ++k) keys[k] = partition_text(parts[k]);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  for (size_t k : order) {
    rep.indecomposable_count += indec[k];
    if (indec[k] > 0) ++rep.partitions_with_indecomposable;
    if (listed[k].empty()) continue;
    std::sort(listed[k].begin(), listed[k].end(),
              [](const GraphType& a, const GraphType& b) {
                return arcs_text(a) < arcs_text(b);
              });
    rep.form_count += listed[k].size();
    rep.partitions.push_back({parts[k], std::move(listed[k])});
  }
  return rep;
}

bool is_canonical(const GraphType& t) {
  const std::vector<GraphType> forms = enumerate_for_partition(t.partition);
  return std::find(forms.begin(), forms.end(), t) != forms.end();
}

GraphType combine(const GraphType& t1, const GraphType& t2,
                  const std::vector<std::pair<unsigned, unsigned>>& cross) {
  const unsigned p = t1.size();
  const unsigned r = t2.size();
  const Subpermutation q1 = partition_to_subpermutation(t1.partition);
  const Subpermutation q2 = partition_to_subpermutation(t2.partition);

  Subpermutation merged(p + r);
  for (unsigned i = 1; i <= p; ++i)
    if (q1.defined(i)) merged.set(i, q1.image(i));
  for (unsigned i = 1; i <= r; ++i)
    if (q2.defined(i)) merged.set(p + i, p + q2.image(i));

  std::set<unsigned> used_from, used_to;
  for (const auto& [h, t] : cross) {
    if (h < 1 || h > p || q1.defined(h))
      throw ParseError("cross arc tail " + std::to_string(h) +
                       " is not a chain maximum of the first type");
    if (t <= p || t > p + r || q2.preimage(t - p) != 0)
      throw ParseError("cross arc head " + std::to_string(t) +
                       " is not a shifted chain minimum of the second type");
    if (!used_from.insert(h).second || !used_to.insert(t).second)
      throw ParseError("cross arcs must not share endpoints");
    merged.set(h, t);
  }

  GraphType out;
  out.partition = subpermutation_to_partition(merged);
  for (const MarkedArc& ma : t1.extras) out.extras.push_back({ma.arc, false});
  for (const MarkedArc& ma : t2.extras)
    out.extras.push_back({{ma.arc.from + p, ma.arc.to + p}, false});
  std::sort(out.extras.begin(), out.extras.end(),
            [](const MarkedArc& a, const MarkedArc& b) {
              return belitskii_less(a.arc, b.arc);
            });
  return mark_parameters(out);
}

long long max_3nilpotent_params(unsigned n) {
  const long long k = (static_cast<long long>(n) - 2) / 3;
  long long bound = k * (k - 1) / 2;
  if (n % 3 == 1) bound -= 1;
  return bound;
}

GraphType construct_3nilpotent(unsigned n, unsigned r) {
  if (n < 6)
    throw ParseError("the 3-nilpotent family needs n >= 6, got " +
                     std::to_string(n));
  const long long bound = max_3nilpotent_params(n);
  if (static_cast<long long>(r) > bound)
    throw ParseError("no admissible 3-nilpotent type with " +
                     std::to_string(r) + " parameters at n = " +
                     std::to_string(n));

  // m chains cover [n] by threes: k -> 2m+1-k -> 2m+k, the top (and for
  // n = 3m-2 also the (m-1)-st chain's top) truncated past n.
  const unsigned m = (n + 2) / 3;
  Subpermutation q(n);
  for (unsigned k = 1; k <= m; ++k) {
    const unsigned mid = 2 * m + 1 - k;
    const unsigned top = 2 * m + k;
    q.set(k, mid);
    if (top <= n) q.set(mid, top);
  }

  std::vector<Arc> extras;
  for (unsigned i = 2; i <= m; ++i)
    for (unsigned j = 2 * m + 2 - i; j <= 2 * m; ++j) {
      if (n % 3 == 1 && i == m && j == m + 2) continue;
      extras.push_back({i, j});
    }
  std::sort(extras.begin(), extras.end(), belitskii_less);

  const unsigned comps = components_of(n, q, extras);
  long long params = static_cast<long long>(q.arc_count() + extras.size()) -
                     static_cast<long long>(n) + comps;
  while (params > static_cast<long long>(r)) {
    bool removed = false;
    for (size_t idx = extras.size(); idx-- > 0;) {
      std::vector<Arc> rest = extras;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
      if (components_of(n, q, rest) == comps) {
        extras = std::move(rest);
        --params;
        removed = true;
        break;
      }
    }
    if (!removed) throw InternalError("3-nilpotent trim cannot reach r");
  }

  GraphType out;
  out.partition = subpermutation_to_partition(q);
  for (Arc a : extras) out.extras.push_back({a, false});
  out = mark_parameters(out);
  if (parameter_count(out) != r)
    throw InternalError("3-nilpotent construction missed the parameter count");
  return out;
}

TableDiff verify_against_table(const EnumerationReport& report,
                               const std::string& table_text) {
  std::set<std::string> table;
  std::istringstream in(table_text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    table.insert(
        print_graph_type(parse_graph_type(line.substr(first, last - first + 1))));
  }
  std::set<std::string> produced;
  for (const PartitionForms& pf : report.partitions)
    for (const GraphType& f : pf.forms) produced.insert(print_graph_type(f));

  TableDiff diff;
  std::set_difference(table.begin(), table.end(), produced.begin(),
                      produced.end(), std::back_inserter(diff.missing));
  std::set_difference(produced.begin(), produced.end(), table.begin(),
                      table.end(), std::back_inserter(diff.extra));
  return diff;
}

}  // namespace belitskii
