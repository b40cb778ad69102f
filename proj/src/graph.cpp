#include "belitskii/graph.hpp"

#include "belitskii/errors.hpp"

#include <algorithm>
#include <sstream>

namespace belitskii {

int belitskii_compare(Arc a, Arc b) {
  if (a.from != b.from) return a.from > b.from ? -1 : 1;
  if (a.to != b.to) return a.to < b.to ? -1 : 1;
  return 0;
}

FieldScalar WeightedDigraph::weight(Arc a) const {
  const auto it = weights_.find(a);
  return it == weights_.end() ? FieldScalar(field_) : it->second;
}

void WeightedDigraph::set_weight(Arc a, const FieldScalar& w) {
  if (a.from < 1 || a.from >= a.to || a.to > n_)
    throw InternalError("arc must satisfy 1 <= i < j <= n");
  if (w.is_zero())
    weights_.erase(a);
  else
    weights_[a] = w;
}

SquareMatrix WeightedDigraph::to_matrix() const {
  SquareMatrix m(n_, field_);
  for (const auto& [arc, w] : weights_) m.at(arc.from, arc.to) = w;
  return m;
}

WeightedDigraph graph_of(const SquareMatrix& a) {
  if (!a.is_strictly_upper_triangular())
    throw NotStrictlyUpper("graph_of: input must be strictly upper triangular");
  WeightedDigraph g(a.size(), a.field());
  for (unsigned i = 1; i < a.size(); ++i)
    for (unsigned j = i + 1; j <= a.size(); ++j)
      if (!a.at(i, j).is_zero()) g.set_weight({i, j}, a.at(i, j));
  return g;
}

SetPartition::SetPartition(std::vector<std::vector<unsigned>> blocks) : blocks_(std::move(blocks)) {
  unsigned total = 0;
  for (auto& b : blocks_) {
    if (b.empty()) throw ParseError("partition block is empty");
    std::sort(b.begin(), b.end());
    total += static_cast<unsigned>(b.size());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  n_ = total;
  std::vector<bool> seen(total + 1, false);
  for (const auto& b : blocks_)
    for (unsigned v : b) {
      if (v < 1 || v > total || seen[v])
        throw ParseError("partition must cover 1..n exactly once");
      seen[v] = true;
    }
  if (total == 0) throw ParseError("partition is empty");
}

Subpermutation partition_to_subpermutation(const SetPartition& p) {
  Subpermutation q(p.size());
  for (const auto& b : p.blocks())
    for (size_t k = 0; k + 1 < b.size(); ++k) q.set(b[k], b[k + 1]);
  return q;
}

SetPartition subpermutation_to_partition(const Subpermutation& q) {
  std::vector<std::vector<unsigned>> blocks;
  for (unsigned v = 1; v <= q.size(); ++v) {
    if (q.preimage(v) != 0) continue;  // not a chain start
    std::vector<unsigned> block{v};
    unsigned w = v;
    while (q.defined(w)) {
      w = q.image(w);
      block.push_back(w);
    }
    blocks.push_back(std::move(block));
  }
  return SetPartition(std::move(blocks));
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t k = 0; k <= s.size(); ++k)
    if (k == s.size() || s[k] == sep) {
      out.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  return out;
}

unsigned parse_vertex(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad vertex number: '" + tok + "'");
  unsigned long v = std::stoul(tok);
  if (v < 1 || v > 10000) throw ParseError("vertex out of range: '" + tok + "'");
  return static_cast<unsigned>(v);
}

/// Digit form "137" -> {1,3,7}; returns false when a character is not 1-9.
bool parse_block_compact(const std::string& t, std::vector<unsigned>* out) {
  out->clear();
  for (char c : t) {
    if (c < '1' || c > '9') return false;
    out->push_back(static_cast<unsigned>(c - '0'));
  }
  return !out->empty();
}

/// Space form "1 3 12" -> {1,3,12}; a lone token is a single vertex.
std::vector<unsigned> parse_block_spaced(const std::string& t) {
  std::istringstream in(t);
  std::string tok;
  std::vector<unsigned> verts;
  while (in >> tok) verts.push_back(parse_vertex(tok));
  if (verts.empty()) throw ParseError("empty partition block");
  return verts;
}

/// Tries the concatenated-digit reading of all blocks first and falls back to
/// the space-separated reading (needed once vertex numbers reach 10).
SetPartition parse_partition(const std::string& part_s) {
  const std::vector<std::string> raw = split(part_s, '|');
  std::vector<std::vector<unsigned>> blocks;
  bool compact_ok = true;
  for (const std::string& b : raw) {
    std::vector<unsigned> verts;
    if (!parse_block_compact(trim(b), &verts)) {
      compact_ok = false;
      break;
    }
    blocks.push_back(std::move(verts));
  }
  if (compact_ok) {
    try {
      return SetPartition(std::move(blocks));
    } catch (const ParseError&) {
      // fall through to the spaced reading
    }
  }
  blocks.clear();
  for (const std::string& b : raw) blocks.push_back(parse_block_spaced(trim(b)));
  return SetPartition(std::move(blocks));
}

Arc parse_arc_token(std::string tok, bool* marked) {
  tok = trim(tok);
  *marked = tok.size() >= 2 && tok.front() == '_' && tok.back() == '_';
  if (*marked) tok = trim(tok.substr(1, tok.size() - 2));
  if (tok.empty()) throw ParseError("empty arc");
  Arc a;
  if (tok.find_first_of(" \t") == std::string::npos) {
    if (tok.size() != 2 || tok[0] < '1' || tok[0] > '9' || tok[1] < '1' || tok[1] > '9')
      throw ParseError("bad arc: '" + tok + "'");
    a = {static_cast<unsigned>(tok[0] - '0'), static_cast<unsigned>(tok[1] - '0')};
  } else {
    std::istringstream in(tok);
    std::string s1, s2, rest;
    if (!(in >> s1 >> s2) || (in >> rest)) throw ParseError("bad arc: '" + tok + "'");
    a = {parse_vertex(s1), parse_vertex(s2)};
  }
  if (a.from >= a.to) throw ParseError("arc must point up: '" + tok + "'");
  return a;
}

}  // namespace

std::string print_graph_type(const GraphType& g) {
  const bool compact = g.size() <= 9;
  std::ostringstream out;
  bool first_block = true;
  for (const auto& b : g.partition.blocks()) {
    if (!first_block) out << '|';
    first_block = false;
    bool first_v = true;
    for (unsigned v : b) {
      if (!compact && !first_v) out << ' ';
      first_v = false;
      out << v;
    }
  }
  out << ": ";
  if (g.extras.empty()) {
    out << "empty";
    return out.str();
  }
  bool first_arc = true;
  for (const auto& ma : g.extras) {
    if (!first_arc) out << '|';
    first_arc = false;
    if (ma.marked) out << '_';
    out << ma.arc.from;
    if (!compact) out << ' ';
    out << ma.arc.to;
    if (ma.marked) out << '_';
  }
  return out.str();
}

GraphType parse_graph_type(const std::string& text) {
  const std::string kEmptySet = "\xE2\x88\x85";
  const size_t colon = text.find(':');
  const std::string part_s = trim(colon == std::string::npos ? text : text.substr(0, colon));
  const std::string arcs_s = trim(colon == std::string::npos ? "" : text.substr(colon + 1));
  if (part_s.empty()) throw ParseError("graph type is missing its partition");

  GraphType g;
  g.partition = parse_partition(part_s);
  const Subpermutation q = partition_to_subpermutation(g.partition);

  if (!(arcs_s.empty() || arcs_s == "empty" || arcs_s == kEmptySet)) {
    for (const std::string& tok : split(arcs_s, '|')) {
      bool marked = false;
      const Arc a = parse_arc_token(tok, &marked);
      if (a.to > g.size())
        throw ParseError("arc endpoint exceeds n: (" + std::to_string(a.from) + "," +
                         std::to_string(a.to) + ")");
      if (!q.defined(a.from) || q.image(a.from) >= a.to)
        throw ParseError("extra arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                         ") must start a defined chain step and land beyond it");
      g.extras.push_back({a, marked});
    }
    std::sort(g.extras.begin(), g.extras.end(),
              [](const MarkedArc& x, const MarkedArc& y) { return belitskii_less(x.arc, y.arc); });
    for (size_t k = 0; k + 1 < g.extras.size(); ++k)
      if (g.extras[k].arc == g.extras[k + 1].arc) throw ParseError("duplicate extra arc");
  }
  return g;
}

std::vector<Arc> stabilizer_positions(const Subpermutation& q) {
  std::vector<Arc> out;
  const unsigned n = q.size();
  for (unsigned i = 1; i < n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      if (q.defined(j)) {
        if (q.defined(i) && q.image(i) < q.image(j)) out.push_back({i, j});
      } else {
        out.push_back({i, j});
      }
    }
  std::sort(out.begin(), out.end(), belitskii_less);
  return out;
}

WeightedDigraph apply_eso(const WeightedDigraph& g, const ESOMove& m) {
  if (!m.lambda) throw InternalError("apply_eso needs a concrete lambda");
  if (m.p < 1 || m.p >= m.q || m.q > g.size()) throw InternalError("apply_eso: bad move position");
  WeightedDigraph out = g;
  const FieldScalar& lambda = *m.lambda;
  for (const auto& [arc, w] : g.arcs()) {
    if (arc.from == m.q)  // row effect: (p, y) gains lambda * w(q, y)
      out.set_weight({m.p, arc.to}, out.weight({m.p, arc.to}) + lambda * w);
    if (arc.to == m.p)    // column effect: (x, q) loses lambda * w(x, p)
      out.set_weight({arc.from, m.q}, out.weight({arc.from, m.q}) - lambda * w);
  }
  return out;
}

SquareMatrix apply_eso(const SquareMatrix& a, const ESOMove& m) {
  if (!m.lambda) throw InternalError("apply_eso needs a concrete lambda");
  if (m.p < 1 || m.p >= m.q || m.q > a.size()) throw InternalError("apply_eso: bad move position");
  SquareMatrix out = a;
  const FieldScalar& lambda = *m.lambda;
  for (unsigned y = m.q + 1; y <= a.size(); ++y)
    if (!a.at(m.q, y).is_zero()) out.at(m.p, y) = out.at(m.p, y) + lambda * a.at(m.q, y);
  for (unsigned x = 1; x < m.p; ++x)
    if (!a.at(x, m.p).is_zero()) out.at(x, m.q) = out.at(x, m.q) - lambda * a.at(x, m.p);
  return out;
}

std::vector<ESOMove> elimination_moves(const WeightedDigraph& g, Arc target,
                                       const Subpermutation& q) {
  if (!g.has_arc(target)) throw InternalError("elimination_moves: target arc absent");
  const std::vector<Arc> stab_list = stabilizer_positions(q);
  const std::set<Arc> stab(stab_list.begin(), stab_list.end());
  const unsigned i = target.from, j = target.to;
  const FieldScalar tw = g.weight(target);
  std::vector<ESOMove> out;
  // Moves acting from the target's row: pivot (m, j), move at (i, m).
  for (unsigned m = i + 1; m < j; ++m)
    if (g.has_arc({m, j}) && stab.count({i, m}))
      out.push_back({i, m, -(tw / g.weight({m, j})), target});
  // Moves acting from the target's column: pivot (i, m), move at (m, j).
  for (unsigned m = i + 1; m < j; ++m)
    if (g.has_arc({i, m}) && stab.count({m, j}))
      out.push_back({m, j, tw / g.weight({i, m}), target});
  return out;
}

std::set<Arc> generic_eso(const std::set<Arc>& arcs, const ESOMove& move) {
  if (!move.target) throw InternalError("generic_eso needs a designed target");
  if (move.p < 1 || move.p >= move.q) throw InternalError("generic_eso: bad move position");
  if (!arcs.count(*move.target)) throw InternalError("generic_eso: target arc absent");
  std::set<Arc> out = arcs;
  bool hits_target = false;
  for (const Arc& a : arcs) {
    if (a.from == move.q) {
      out.insert({move.p, a.to});
      if (Arc{move.p, a.to} == *move.target) hits_target = true;
    }
    if (a.to == move.p) {
      out.insert({a.from, move.q});
      if (Arc{a.from, move.q} == *move.target) hits_target = true;
    }
  }
  if (!hits_target) throw InternalError("generic_eso: move cannot annihilate its target");
  out.erase(*move.target);
  return out;
}

}  // namespace belitskii
