#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotkit/errors.hpp"

namespace knotkit {

// Perfect matching of 2n cyclically ordered endpoints. With the endpoint
// order taken as meaningful this is a Gauss diagram; as a chord diagram two
// pairings are identified when they differ by a rotation of the circle.
class ChordDiagram {
 public:
  ChordDiagram() = default;

  // pairs use 1-based positions 1..2n.
  static ChordDiagram from_pairs(const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(pairs.size());
    ChordDiagram d;
    d.partner_.assign(2 * n, -1);
    for (const auto& [a, b] : pairs) {
      if (a < 1 || a > 2 * n || b < 1 || b > 2 * n || a == b)
        throw ValidationError("chord diagram: endpoint out of range or degenerate");
      if (d.partner_[a - 1] != -1 || d.partner_[b - 1] != -1)
        throw ValidationError("chord diagram: endpoint used twice");
      d.partner_[a - 1] = b - 1;
      d.partner_[b - 1] = a - 1;
    }
    return d;
  }

  static ChordDiagram from_partner(std::vector<int> partner) {
    ChordDiagram d;
    d.partner_ = std::move(partner);
    const int m = static_cast<int>(d.partner_.size());
    if (m % 2 != 0) throw ValidationError("chord diagram: odd endpoint count");
    for (int p = 0; p < m; ++p)
      if (d.partner_[p] < 0 || d.partner_[p] >= m || d.partner_[p] == p ||
          d.partner_[d.partner_[p]] != p)
        throw ValidationError("chord diagram: pairing is not a fixed-point-free involution");
    return d;
  }

  // The complete diagram X_n: every pair of chords intersects.
  static ChordDiagram x_pattern(int n) {
    std::vector<int> partner(2 * n);
    for (int p = 0; p < n; ++p) {
      partner[p] = p + n;
      partner[p + n] = p;
    }
    return from_partner(std::move(partner));
  }

  static ChordDiagram single_chord() { return x_pattern(1); }

  int chords() const { return static_cast<int>(partner_.size()) / 2; }
  int endpoints() const { return static_cast<int>(partner_.size()); }
  int partner(int pos) const { return partner_[pos]; }
  const std::vector<int>& pairing() const { return partner_; }

  // Chords as (a, b) with a < b, in order of first endpoint.
  std::vector<std::pair<int, int>> chord_list() const {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < endpoints(); ++p)
      if (partner_[p] > p) out.emplace_back(p, partner_[p]);
    return out;
  }

  ChordDiagram rotated(int r) const {
    const int m = endpoints();
    std::vector<int> partner(m);
    for (int p = 0; p < m; ++p) partner[(p + r) % m] = (partner_[p] + r) % m;
    return from_partner(std::move(partner));
  }

  // Canonical form under rotation: lexicographically minimal rotation of the
  // forward-offset word. Two diagrams are equal as chord diagrams iff their
  // canonical words agree (orientation-preserving circle diffeomorphisms act
  // as rotations on the combinatorial data).
  std::vector<int> canonical_word() const {
    const int m = endpoints();
    std::vector<int> base(m);
    for (int p = 0; p < m; ++p) base[p] = (partner_[p] - p + m) % m;
    std::vector<int> best = base;
    std::vector<int> rot(m);
    for (int r = 1; r < m; ++r) {
      for (int p = 0; p < m; ++p) rot[p] = base[(p + r) % m];
      if (rot < best) best = rot;
    }
    return best;
  }

  bool same_gauss(const ChordDiagram& o) const { return partner_ == o.partner_; }
  bool same_chord(const ChordDiagram& o) const {
    return endpoints() == o.endpoints() && canonical_word() == o.canonical_word();
  }

 private:
  std::vector<int> partner_;
};

using GaussDiagram = ChordDiagram;

inline bool chords_interleave(std::pair<int, int> a, std::pair<int, int> b) {
  return (a.first < b.first && b.first < a.second && a.second < b.second) ||
         (b.first < a.first && a.first < b.second && b.second < a.second);
}

// Number of unordered chord pairs whose endpoints interleave cyclically.
inline int intersecting_pairs(const ChordDiagram& d) {
  const auto chords = d.chord_list();
  int count = 0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j)
      if (chords_interleave(chords[i], chords[j])) ++count;
  return count;
}

// Number of chord subsets of d inducing a diagram isomorphic to pattern.
inline long long count_subdiagrams(const ChordDiagram& d, const ChordDiagram& pattern) {
  const int k = pattern.chords();
  const int n = d.chords();
  if (k > n) return 0;
  const auto chords = d.chord_list();
  const auto target = pattern.canonical_word();

  long long count = 0;
  std::vector<int> pick(k);
  auto induced_matches = [&]() {
    std::vector<int> endpoints;
    endpoints.reserve(2 * k);
    for (int c : pick) {
      endpoints.push_back(chords[c].first);
      endpoints.push_back(chords[c].second);
    }
    std::sort(endpoints.begin(), endpoints.end());
    std::vector<int> rank(d.endpoints(), -1);
    for (int i = 0; i < 2 * k; ++i) rank[endpoints[i]] = i;
    std::vector<int> partner(2 * k);
    for (int c : pick) {
      const int a = rank[chords[c].first], b = rank[chords[c].second];
      partner[a] = b;
      partner[b] = a;
    }
    return ChordDiagram::from_partner(std::move(partner)).canonical_word() == target;
  };
  // Enumerate k-subsets.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    pick = idx;
    if (induced_matches()) ++count;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Knot diagram codes ("O1+ U2+ O3+ U1+ O2+ U3+").

struct DiagramToken {
  int id = 0;  // original crossing label
  bool over = false;
  int sign = +1;
};

class KnotDiagramCode {
 public:
  KnotDiagramCode() = default;
  explicit KnotDiagramCode(std::vector<DiagramToken> tokens) : tokens_(std::move(tokens)) {
    validate();
  }

  const std::vector<DiagramToken>& tokens() const { return tokens_; }
  int crossings() const { return static_cast<int>(tokens_.size()) / 2; }
  bool empty() const { return tokens_.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (i) os << ' ';
      os << (tokens_[i].over ? 'O' : 'U') << tokens_[i].id << (tokens_[i].sign > 0 ? '+' : '-');
    }
    return os.str();
  }

 private:
  void validate() const {
    std::map<int, std::vector<std::size_t>> where;
    for (std::size_t i = 0; i < tokens_.size(); ++i) where[tokens_[i].id].push_back(i);
    for (const auto& [id, pos] : where) {
      if (pos.size() != 2)
        throw ParseError("crossing " + std::to_string(id) + " appears " +
                             std::to_string(pos.size()) + " times, expected 2",
                         static_cast<int>(pos.back()));
      if (tokens_[pos[0]].over == tokens_[pos[1]].over)
        throw ParseError("crossing " + std::to_string(id) + " lacks an over/under partner",
                         static_cast<int>(pos[1]));
      if (tokens_[pos[0]].sign != tokens_[pos[1]].sign)
        throw ParseError("crossing " + std::to_string(id) + " has inconsistent signs",
                         static_cast<int>(pos[1]));
    }
  }

  std::vector<DiagramToken> tokens_;
};

inline KnotDiagramCode parse_gauss_code(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<DiagramToken> tokens;
  int index = 0;
  while (is >> tok) {
    DiagramToken t;
    if (tok.size() < 3) throw ParseError("token '" + tok + "' too short", index);
    if (tok[0] == 'O' || tok[0] == 'o')
      t.over = true;
    else if (tok[0] == 'U' || tok[0] == 'u')
      t.over = false;
    else
      throw ParseError("token '" + tok + "' must start with O or U", index);
    const char back = tok.back();
    if (back == '+')
      t.sign = +1;
    else if (back == '-')
      t.sign = -1;
    else
      throw ParseError("token '" + tok + "' must end with + or -", index);
    const std::string num = tok.substr(1, tok.size() - 2);
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("token '" + tok + "' has a non-numeric crossing id", index);
    t.id = std::atoi(num.c_str());
    tokens.push_back(t);
    ++index;
  }
  return KnotDiagramCode(std::move(tokens));
}

// Chord diagram of a diagram code: pair the two traversal positions of each
// crossing.
inline ChordDiagram chord_diagram_of(const KnotDiagramCode& code) {
  const auto& toks = code.tokens();
  std::map<int, std::vector<int>> where;
  for (std::size_t i = 0; i < toks.size(); ++i) where[toks[i].id].push_back(static_cast<int>(i));
  std::vector<int> partner(toks.size());
  for (const auto& [id, pos] : where) {
    partner[pos[0]] = pos[1];
    partner[pos[1]] = pos[0];
  }
  if (partner.empty()) return ChordDiagram();
  return ChordDiagram::from_partner(std::move(partner));
}

// Upper bound for the X-crossing number of the knot type presented by `code`:
// the number of intersecting chord pairs of this particular projection.
inline int x_crossing_upper_bound(const KnotDiagramCode& code) {
  if (code.empty()) return 0;
  return intersecting_pairs(chord_diagram_of(code));
}

// ---------------------------------------------------------------------------
// Conway polynomial by skein recursion toward descending diagrams.

namespace detail {

using ConwayPoly = std::vector<long long>;  // coefficient of z^i at index i

inline ConwayPoly poly_zero() { return {}; }
inline ConwayPoly poly_one() { return {1}; }

inline void poly_add(ConwayPoly& a, const ConwayPoly& b, long long factor) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += factor * b[i];
}

inline ConwayPoly poly_shift(const ConwayPoly& a) {
  if (a.empty()) return {};
  ConwayPoly r(a.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
  return r;
}

// Link diagram for the skein recursion: components are cyclic visit lists.
struct SkeinDiagram {
  struct Visit {
    int id;
    bool over;
  };
  std::vector<std::vector<Visit>> comps;
  std::vector<int> sign;  // by crossing id

  std::string key() const {
    // Relabel crossings by first appearance so equivalent branches share
    // memo entries.
    std::ostringstream os;
    std::map<int, int> relabel;
    for (const auto& comp : comps) {
      for (const auto& v : comp) {
        auto [it, fresh] = relabel.emplace(v.id, static_cast<int>(relabel.size()));
        os << (v.over ? 'O' : 'U') << it->second << (sign[v.id] > 0 ? '+' : '-');
      }
      os << '/';
    }
    return os.str();
  }
};

struct SkeinContext {
  std::unordered_map<std::string, ConwayPoly> memo;
  long long nodes = 0;
  long long budget = 0;
};

inline ConwayPoly conway_recurse(const SkeinDiagram& d, SkeinContext& ctx) {
  if (++ctx.nodes > ctx.budget)
    throw ResourceError("skein recursion exceeded its node budget");
  const std::string key = d.key();
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  // First crossing whose first encounter along the traversal is an
  // undercrossing; if none, the diagram is descending.
  int viol_comp = -1, viol_pos = -1, viol_id = -1;
  {
    std::map<int, bool> seen;
    for (std::size_t ci = 0; ci < d.comps.size() && viol_id < 0; ++ci) {
      for (std::size_t pi = 0; pi < d.comps[ci].size(); ++pi) {
        const auto& v = d.comps[ci][pi];
        if (seen.emplace(v.id, true).second && !v.over) {
          viol_comp = static_cast<int>(ci);
          viol_pos = static_cast<int>(pi);
          viol_id = v.id;
          break;
        }
      }
    }
  }

  ConwayPoly result;
  if (viol_id < 0) {
    // Descending: unknot for one component, split unlink otherwise.
    result = d.comps.size() == 1 ? poly_one() : poly_zero();
  } else {
    // Switched diagram: strictly more descending, same crossing count.
    SkeinDiagram sw = d;
    for (auto& comp : sw.comps)
      for (auto& v : comp)
        if (v.id == viol_id) v.over = !v.over;
    sw.sign[viol_id] = -sw.sign[viol_id];

    // Oriented smoothing: reconnect respecting orientation, crossing gone.
    SkeinDiagram sm;
    sm.sign = d.sign;
    int other_comp = -1, other_pos = -1;
    for (std::size_t ci = 0; ci < d.comps.size(); ++ci)
      for (std::size_t pi = 0; pi < d.comps[ci].size(); ++pi)
        if (d.comps[ci][pi].id == viol_id &&
            !(static_cast<int>(ci) == viol_comp && static_cast<int>(pi) == viol_pos)) {
          other_comp = static_cast<int>(ci);
          other_pos = static_cast<int>(pi);
        }
    if (other_comp == viol_comp) {
      // Same component: split into two.
      const auto& comp = d.comps[viol_comp];
      const int m = static_cast<int>(comp.size());
      int i = viol_pos, j = other_pos;
      std::vector<SkeinDiagram::Visit> c1, c2;
      for (int p = (i + 1) % m; p != j; p = (p + 1) % m) c1.push_back(comp[p]);
      for (int p = (j + 1) % m; p != i; p = (p + 1) % m) c2.push_back(comp[p]);
      for (std::size_t ci = 0; ci < d.comps.size(); ++ci)
        if (static_cast<int>(ci) != viol_comp) sm.comps.push_back(d.comps[ci]);
      sm.comps.push_back(std::move(c1));
      sm.comps.push_back(std::move(c2));
    } else {
      // Different components: merge.
      const auto& ca = d.comps[viol_comp];
      const auto& cb = d.comps[other_comp];
      std::vector<SkeinDiagram::Visit> merged;
      const int ma = static_cast<int>(ca.size()), mb = static_cast<int>(cb.size());
      for (int p = (viol_pos + 1) % ma; p != viol_pos; p = (p + 1) % ma) merged.push_back(ca[p]);
      for (int p = (other_pos + 1) % mb; p != other_pos; p = (p + 1) % mb) merged.push_back(cb[p]);
      for (std::size_t ci = 0; ci < d.comps.size(); ++ci)
        if (static_cast<int>(ci) != viol_comp && static_cast<int>(ci) != other_comp)
          sm.comps.push_back(d.comps[ci]);
      sm.comps.push_back(std::move(merged));
    }

    // Skein relation conway(L+) - conway(L-) = z * conway(L0). The current
    // diagram is L+ or L- according to the violator's sign.
    result = conway_recurse(sw, ctx);
    const ConwayPoly smooth = poly_shift(conway_recurse(sm, ctx));
    poly_add(result, smooth, d.sign[viol_id] > 0 ? +1 : -1);
  }

  ctx.memo.emplace(key, result);
  return result;
}

inline SkeinDiagram skein_from_code(const KnotDiagramCode& code) {
  SkeinDiagram d;
  std::map<int, int> relabel;
  std::vector<SkeinDiagram::Visit> comp;
  for (const auto& t : code.tokens()) {
    auto [it, fresh] = relabel.emplace(t.id, static_cast<int>(relabel.size()));
    if (fresh) d.sign.push_back(t.sign);
    comp.push_back({it->second, t.over});
  }
  d.comps.push_back(std::move(comp));
  return d;
}

}  // namespace detail

// Full Conway polynomial of the knot presented by `code`.
inline std::vector<long long> conway_polynomial(const KnotDiagramCode& code) {
  if (code.crossings() > 16)
    throw ResourceError("skein oracle limited to 16 crossings, got " +
                        std::to_string(code.crossings()));
  detail::SkeinContext ctx;
  ctx.budget = 4'000'000;
  const auto poly = detail::conway_recurse(detail::skein_from_code(code), ctx);
  return poly;
}

// Coefficient of z^2 in the Conway polynomial (the degree-2 Vassiliev
// invariant this toolkit estimates geometrically).
inline long long conway_a2_skein(const KnotDiagramCode& code) {
  const auto poly = conway_polynomial(code);
  return poly.size() > 2 ? poly[2] : 0;
}

}  // namespace knotkit
