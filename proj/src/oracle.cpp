#include "belitskii/oracle.hpp"

#include "belitskii/canonize.hpp"
#include "belitskii/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <utility>

namespace belitskii {

namespace {

unsigned digit_of(const FieldScalar& s) {
  return static_cast<unsigned>(numerator(s.value()).convert_to<unsigned long long>());
}

/// Smallest generator of the multiplicative group of GF(p); 1 when p == 2.
unsigned primitive_root(unsigned p) {
  for (unsigned g = 1; g < p; ++g) {
    unsigned order = 1;
    unsigned long long x = g;
    while (x != 1) {
      x = x * g % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  return 1;
}

}  // namespace

FieldScalar f_value(const SquareMatrix& a, unsigned i, unsigned j) {
  const FieldScalar& fwd = a.at(i, j);
  if (!fwd.is_zero()) return fwd;
  const FieldScalar& bwd = a.at(j, i);
  if (!bwd.is_zero()) return bwd.inverse();
  return FieldScalar::zero(a.field());
}

std::optional<SquareMatrix> dn_similar_witness(const SquareMatrix& a, const SquareMatrix& c) {
  const unsigned n = a.size();
  if (c.size() != n || !(c.field() == a.field())) return std::nullopt;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (a.at(i, j).is_zero() != c.at(i, j).is_zero()) return std::nullopt;

  // Propagate scale factors over each connected block of the shared support:
  // d[root] = 1, and crossing an edge fixes the far factor from either the
  // forward or the backward entry.
  const Field f = a.field();
  std::vector<FieldScalar> d(n + 1, FieldScalar::one(f));
  std::vector<bool> seen(n + 1, false);
  for (unsigned root = 1; root <= n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<unsigned> frontier{root};
    while (!frontier.empty()) {
      const unsigned i = frontier.back();
      frontier.pop_back();
      for (unsigned j = 1; j <= n; ++j) {
        if (seen[j] || (a.at(i, j).is_zero() && a.at(j, i).is_zero())) continue;
        d[j] = a.at(i, j).is_zero() ? d[i] * c.at(j, i) / a.at(j, i)
                                    : d[i] * a.at(i, j) / c.at(i, j);
        seen[j] = true;
        frontier.push_back(j);
      }
    }
  }

  // The full entry check subsumes every cycle condition.
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (!a.at(i, j).is_zero() && c.at(i, j) != d[i] / d[j] * a.at(i, j)) return std::nullopt;

  SquareMatrix witness(n, f);
  for (unsigned i = 1; i <= n; ++i) witness.at(i, i) = d[i];
  return witness;
}

bool dn_similar(const SquareMatrix& a, const SquareMatrix& c) {
  return dn_similar_witness(a, c).has_value();
}

std::uint64_t OrbitTable::encode(const SquareMatrix& m) const {
  const unsigned p = field_.modulus;
  std::uint64_t code = 0;
  for (unsigned i = n_; i >= 1; --i)
    for (unsigned j = n_; j > i; --j) code = code * p + digit_of(m.at(i, j));
  return code;
}

SquareMatrix OrbitTable::decode(std::uint64_t code) const {
  const unsigned p = field_.modulus;
  SquareMatrix m(n_, field_);
  for (unsigned i = 1; i <= n_; ++i)
    for (unsigned j = i + 1; j <= n_; ++j) {
      m.at(i, j) = FieldScalar(field_, static_cast<long long>(code % p));
      code /= p;
    }
  return m;
}

OrbitTable bn_orbits_bruteforce(Field f, unsigned n, unsigned generator_order_seed) {
  if (f.is_rational()) throw SizeCapError("brute-force orbits need a finite field");
  const unsigned cap = f.modulus == 2 ? 5 : 4;
  if (n > cap)
    throw SizeCapError("brute-force orbits over " + f.to_string() + " are capped at n = " +
                       std::to_string(cap));
  const unsigned p = f.modulus;
  std::uint64_t count = 1;
  for (unsigned k = 0; k < n * (n - 1) / 2; ++k) {
    count *= p;
    if (count > 1u << 16) throw SizeCapError("brute-force orbit table too large");
  }

  // Generator list: every elementary transvection with every nonzero value,
  // plus one single-position diagonal per row (trivial over GF(2)).
  std::vector<std::pair<SquareMatrix, SquareMatrix>> gens;
  for (unsigned r = 1; r <= n; ++r)
    for (unsigned s = r + 1; s <= n; ++s)
      for (unsigned v = 1; v < p; ++v) {
        SquareMatrix g = SquareMatrix::identity(n, f);
        SquareMatrix ginv = g;
        g.at(r, s) = FieldScalar(f, v);
        ginv.at(r, s) = -g.at(r, s);
        gens.emplace_back(std::move(g), std::move(ginv));
      }
  const unsigned root = primitive_root(p);
  if (root != 1)
    for (unsigned k = 1; k <= n; ++k) {
      SquareMatrix g = SquareMatrix::identity(n, f);
      g.at(k, k) = FieldScalar(f, root);
      SquareMatrix ginv = g;
      ginv.at(k, k) = g.at(k, k).inverse();
      gens.emplace_back(std::move(g), std::move(ginv));
    }
  if (generator_order_seed != 0) {
    std::mt19937 shuffle_rng(generator_order_seed);
    std::shuffle(gens.begin(), gens.end(), shuffle_rng);
  }

  // Worklist closure, one flood fill per orbit; scanning codes in increasing
  // order makes the id assignment canonical whatever the generator order.
  constexpr std::uint32_t kUnassigned = 0xffffffffu;
  std::vector<std::uint32_t> orbit_of(count, kUnassigned);
  OrbitTable codec(f, n, {}, 0);
  unsigned orbit_count = 0;
  std::vector<std::uint64_t> worklist;
  for (std::uint64_t start = 0; start < count; ++start) {
    if (orbit_of[start] != kUnassigned) continue;
    const std::uint32_t id = orbit_count++;
    orbit_of[start] = id;
    worklist.assign(1, start);
    while (!worklist.empty()) {
      const SquareMatrix m = codec.decode(worklist.back());
      worklist.pop_back();
      for (const auto& [g, ginv] : gens) {
        const std::uint64_t next = codec.encode(multiply(multiply(g, m), ginv));
        if (orbit_of[next] != kUnassigned) continue;
        orbit_of[next] = id;
        worklist.push_back(next);
      }
    }
  }
  return OrbitTable(f, n, std::move(orbit_of), orbit_count);
}

std::string export_orbit_table(const OrbitTable& t) {
  std::ostringstream out;
  const unsigned n = t.size();
  for (std::uint64_t code = 0; code < t.matrix_count(); ++code) {
    const SquareMatrix m = t.decode(code);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = 1; j <= n; ++j) out << m.at(i, j).to_string() << ' ';
    out << t.orbit_id(code) << '\n';
  }
  return out.str();
}

ConsistencyReport check_canon_consistency(const OrbitTable& table) {
  ConsistencyReport report;
  report.orbit_count = table.orbit_count();
  std::map<unsigned, std::pair<std::string, std::uint64_t>> key_of_orbit;
  std::map<std::string, unsigned> orbit_of_key;
  for (std::uint64_t code = 0; code < table.matrix_count(); ++code) {
    const unsigned id = table.orbit_id(code);
    const std::string key = print_matrix(canon(table.decode(code)).matrix);
    const auto [slot, fresh] = key_of_orbit.try_emplace(id, key, code);
    if (fresh) {
      const auto [owner, unclaimed] = orbit_of_key.try_emplace(key, id);
      if (!unclaimed)
        report.violations.push_back("orbits " + std::to_string(owner->second) + " and " +
                                    std::to_string(id) +
                                    " collide on one canonical matrix (codes " +
                                    std::to_string(key_of_orbit.at(owner->second).second) +
                                    " and " + std::to_string(code) + ")");
    } else if (slot->second.first != key) {
      report.violations.push_back("orbit " + std::to_string(id) +
                                  " maps to two canonical matrices (codes " +
                                  std::to_string(slot->second.second) + " and " +
                                  std::to_string(code) + ")");
    }
  }
  report.canon_class_count = static_cast<unsigned>(orbit_of_key.size());
  return report;
}

}  // namespace belitskii
