#include "vtergm/triangles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "vtergm/error.hpp"

namespace vtergm {
namespace {

std::string label(Vertex v) { return std::to_string(v + 1); }

std::string label(Vertex u, Vertex v) { return "(" + label(u) + "," + label(v) + ")"; }

/// True if w lies on some triangle that does not contain both x and y.
bool in_triangle_avoiding_edge(const Graph& g, Vertex w, Vertex x, Vertex y) {
  bool found = false;
  g.for_each_neighbor(w, [&](Vertex a) {
    if (found) return;
    g.for_each_common_neighbor(w, a, [&](Vertex b) {
      if (found) return;
      const bool has_x = (w == x || a == x || b == x);
      const bool has_y = (w == y || a == y || b == y);
      if (!(has_x && has_y)) found = true;
    });
  });
  return found;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Branch-and-bound for maximum vertex-disjoint packing inside one connected
/// component of the triangle hypergraph. Vertices are relabeled 0..k-1.
class PackingSearch {
 public:
  PackingSearch(std::size_t vertex_count, std::vector<Triangle> triangles,
                std::uint64_t node_limit)
      : triangles_(std::move(triangles)),
        incident_(vertex_count),
        blocked_(vertex_count, 0),
        node_limit_(node_limit) {
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      for (Vertex x : triangles_[t]) incident_[x].push_back(t);
    }
  }

  std::size_t solve(std::size_t incumbent) {
    best_ = incumbent;
    upper_ = incident_.size() / 3;
    if (best_ < upper_) search(0);
    return best_;
  }

 private:
  bool available(std::size_t t) const {
    const auto& tri = triangles_[t];
    return !blocked_[tri[0]] && !blocked_[tri[1]] && !blocked_[tri[2]];
  }

  void search(std::size_t taken) {
    if (++nodes_ > node_limit_) {
      throw ResourceError("exact triangle packing exceeded node cap of " +
                          std::to_string(node_limit_));
    }
    // Bound: every further triangle needs three free vertices that are
    // still covered by an available triangle.
    std::vector<std::uint8_t> covered(incident_.size(), 0);
    std::size_t covered_count = 0;
    long pivot = -1;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
      if (!available(t)) continue;
      for (Vertex x : triangles_[t]) {
        if (!covered[x]) {
          covered[x] = 1;
          ++covered_count;
          if (pivot < 0 || static_cast<long>(x) < pivot) pivot = static_cast<long>(x);
        }
      }
    }
    if (covered_count == 0) {
      best_ = std::max(best_, taken);
      return;
    }
    if (taken + covered_count / 3 <= best_) return;

    const auto x = static_cast<Vertex>(pivot);
    for (std::size_t t : incident_[x]) {
      if (!available(t)) continue;
      for (Vertex y : triangles_[t]) blocked_[y] = 1;
      search(taken + 1);
      for (Vertex y : triangles_[t]) blocked_[y] = 0;
      if (best_ == upper_) return;
    }
    blocked_[x] = 1;
    search(taken);
    blocked_[x] = 0;
  }

  std::vector<Triangle> triangles_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::uint8_t> blocked_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::size_t best_ = 0;
  std::size_t upper_ = 0;
};

std::size_t greedy_count(const std::vector<Triangle>& triangles, std::size_t vertex_count) {
  std::vector<std::uint8_t> used(vertex_count, 0);
  std::size_t count = 0;
  for (const auto& t : triangles) {
    if (used[t[0]] || used[t[1]] || used[t[2]]) continue;
    used[t[0]] = used[t[1]] = used[t[2]] = 1;
    ++count;
  }
  return count;
}

}  // namespace

bool vertex_in_triangle(const Graph& g, Vertex v) {
  bool found = false;
  g.for_each_neighbor(v, [&](Vertex u) {
    if (!found && g.has_common_neighbor(u, v)) found = true;
  });
  return found;
}

TriangleStats vertices_in_triangles(const Graph& g) {
  TriangleStats s;
  s.in_triangle.assign(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (vertex_in_triangle(g, v)) {
      s.in_triangle[v] = 1;
      ++s.v_t;
    }
  }
  return s;
}

void check_consistency(const Graph& g, const TriangleStats& stats) {
  if (stats.in_triangle.size() != g.n()) {
    throw ConsistencyError("triangle stats sized for n=" +
                           std::to_string(stats.in_triangle.size()) + " but graph has n=" +
                           std::to_string(g.n()));
  }
  const TriangleStats fresh = vertices_in_triangles(g);
  if (fresh != stats) {
    throw ConsistencyError("stale triangle stats: cached V_T=" + std::to_string(stats.v_t) +
                           ", recount V_T=" + std::to_string(fresh.v_t));
  }
}

void compute_flip_effect(const Graph& g, const TriangleStats& stats, Vertex u, Vertex v,
                         FlipEffect& out) {
  g.check_pair(u, v);
  out.u = u;
  out.v = v;
  out.adds_edge = !g.adjacent(u, v);
  out.delta_vt = 0;
  out.changed.clear();
  if (!g.has_common_neighbor(u, v)) return;

  if (out.adds_edge) {
    // Every vertex of {u, v} ∪ N(u) ∩ N(v) ends up on a new triangle.
    if (!stats.in_triangle[u]) out.changed.push_back(u);
    if (!stats.in_triangle[v]) out.changed.push_back(v);
    g.for_each_common_neighbor(u, v, [&](Vertex w) {
      if (!stats.in_triangle[w]) out.changed.push_back(w);
    });
    out.delta_vt = static_cast<int>(out.changed.size());
    return;
  }
  // Removal destroys exactly the triangles {u, v, w}; a vertex drops out iff
  // all of its triangles contain the edge {u, v}.
  auto consider = [&](Vertex x) {
    if (!in_triangle_avoiding_edge(g, x, u, v)) out.changed.push_back(x);
  };
  consider(u);
  consider(v);
  g.for_each_common_neighbor(u, v, consider);
  out.delta_vt = -static_cast<int>(out.changed.size());
}

void apply_flip(Graph& g, TriangleStats& stats, const FlipEffect& effect) {
  g.toggle_edge(effect.u, effect.v);
  for (Vertex x : effect.changed) stats.in_triangle[x] ^= 1;
  stats.v_t = static_cast<std::size_t>(static_cast<long>(stats.v_t) + effect.delta_vt);
}

int delta_vt_on_flip(const Graph& g, const TriangleStats& stats, Vertex u, Vertex v) {
#ifdef VTERGM_DEBUG_CHECKS
  check_consistency(g, stats);
#endif
  FlipEffect effect;
  compute_flip_effect(g, stats, u, v, effect);
  return effect.delta_vt;
}

std::vector<Triangle> list_triangles(const Graph& g) {
  std::vector<Triangle> out;
  for (Vertex a = 0; a < g.n(); ++a) {
    g.for_each_neighbor(a, [&](Vertex b) {
      if (b <= a) return;
      g.for_each_common_neighbor(a, b, [&](Vertex c) {
        if (c > b) out.push_back({a, b, c});
      });
    });
  }
  return out;
}

std::vector<Triangle> greedy_triangle_packing(const Graph& g) {
  const std::size_t words = g.words_per_row();
  std::vector<Graph::Word> used(words, 0);
  auto is_used = [&](Vertex x) { return (used[x / Graph::kWordBits] >> (x % Graph::kWordBits)) & 1U; };
  auto mark = [&](Vertex x) { used[x / Graph::kWordBits] |= Graph::Word{1} << (x % Graph::kWordBits); };

  std::vector<Triangle> out;
  for (Vertex a = 0; a < g.n(); ++a) {
    if (is_used(a)) continue;
    const auto row_a = g.row(a);
    bool taken = false;
    g.for_each_neighbor(a, [&](Vertex b) {
      if (taken || b <= a || is_used(b)) return;
      const auto row_b = g.row(b);
      // Smallest c > b adjacent to both and unused.
      for (std::size_t w = b / Graph::kWordBits; w < words && !taken; ++w) {
        Graph::Word x = row_a[w] & row_b[w] & ~used[w];
        if (w == b / Graph::kWordBits) {
          const unsigned shift = b % Graph::kWordBits;
          x &= shift == Graph::kWordBits - 1 ? Graph::Word{0} : (~Graph::Word{0} << (shift + 1));
        }
        if (x != 0) {
          const auto c = static_cast<Vertex>(w * Graph::kWordBits +
                                             static_cast<std::size_t>(__builtin_ctzll(x)));
          out.push_back({a, b, c});
          mark(a);
          mark(b);
          mark(c);
          taken = true;
        }
      }
    });
  }
  return out;
}

std::size_t max_disjoint_triangles(const Graph& g, PackingMode mode,
                                   const PackingOptions& options) {
  if (mode == PackingMode::kGreedy) return greedy_triangle_packing(g).size();

  const std::vector<Triangle> triangles = list_triangles(g);
  if (triangles.empty()) return 0;

  DisjointSets sets(g.n());
  for (const auto& t : triangles) {
    sets.unite(t[0], t[1]);
    sets.unite(t[1], t[2]);
  }
  // Group triangles (kept in lexicographic order) by component root.
  std::vector<std::size_t> component_of(g.n(), SIZE_MAX);
  std::vector<std::vector<Triangle>> components;
  for (const auto& t : triangles) {
    const std::size_t root = sets.find(t[0]);
    if (component_of[root] == SIZE_MAX) {
      component_of[root] = components.size();
      components.emplace_back();
    }
    components[component_of[root]].push_back(t);
  }

  std::size_t total = 0;
  std::vector<Vertex> local(g.n(), 0);
  for (auto& comp : components) {
    if (comp.size() == 1) {
      ++total;
      continue;
    }
    std::vector<Vertex> verts;
    for (const auto& t : comp) verts.insert(verts.end(), t.begin(), t.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<Vertex>(i);
    for (auto& t : comp) {
      for (auto& x : t) x = local[x];
    }
    const std::size_t incumbent = greedy_count(comp, verts.size());
    PackingSearch search(verts.size(), std::move(comp), options.node_limit);
    total += search.solve(incumbent);
  }
  return total;
}

QBasicCheck is_q_basic(const Graph& g) {
  const TriangleStats stats = vertices_in_triangles(g);
  QBasicCheck result{true, stats.v_t};
  FlipEffect effect;
  for (const auto& [u, v] : g.edges()) {
    compute_flip_effect(g, stats, u, v, effect);
    if (effect.delta_vt == 0) {
      result.q_basic = false;
      break;
    }
  }
  return result;
}

QBasicDecomposition decompose_q_basic(const Graph& g) {
  const TriangleStats stats = vertices_in_triangles(g);
  {
    FlipEffect effect;
    for (const auto& [u, v] : g.edges()) {
      compute_flip_effect(g, stats, u, v, effect);
      if (effect.delta_vt == 0) {
        throw DomainError("graph is not q-basic: removing edge " + label(u, v) +
                          " leaves V_T unchanged");
      }
    }
  }

  const std::size_t n = g.n();
  enum Part : std::uint8_t { kNone, kV1, kV2, kV31, kV32 };
  std::vector<std::uint8_t> part(n, kNone);
  std::set<Edge> factor_edges;
  std::vector<Edge> w;

  // Stage 1: lexicographically greedy K3-factor.
  for (const auto& t : greedy_triangle_packing(g)) {
    for (Vertex x : t) part[x] = kV1;
    factor_edges.insert({t[0], t[1]});
    factor_edges.insert({t[0], t[2]});
    factor_edges.insert({t[1], t[2]});
  }
  const std::vector<Edge> all_edges = g.edges();
  for (const auto& e : all_edges) {
    if (part[e.first] == kV1 && part[e.second] == kV1 && !factor_edges.count(e)) {
      w.push_back(e);
    }
  }

  // Stage 2: lexicographically greedy matching on the rest.
  std::vector<Edge> matching;
  for (const auto& [a, b] : all_edges) {
    if (part[a] == kNone && part[b] == kNone) {
      part[a] = part[b] = kV2;
      matching.emplace_back(a, b);
    }
  }
  std::set<Edge> closing_edges;
  for (const auto& [a, b] : matching) {
    long apex = -1;
    g.for_each_common_neighbor(a, b, [&](Vertex o) {
      if (apex < 0 && part[o] == kV1) apex = o;
    });
    if (apex < 0) {
      throw DomainError("stage 2: matched edge " + label(a, b) +
                        " has no common neighbour in V1");
    }
    const auto o = static_cast<Vertex>(apex);
    closing_edges.insert({std::min(a, o), std::max(a, o)});
    closing_edges.insert({std::min(b, o), std::max(b, o)});
  }
  for (const auto& e : all_edges) {
    const bool cross = (part[e.first] == kV1 && part[e.second] == kV2) ||
                       (part[e.first] == kV2 && part[e.second] == kV1);
    if (cross && !closing_edges.count(e)) w.push_back(e);
  }
  std::sort(w.begin(), w.end());

  // Stage 3: one fresh common neighbour outside V1 ∪ V2 per extra edge.
  for (const auto& [x, y] : w) {
    long pick = -1;
    g.for_each_common_neighbor(x, y, [&](Vertex c) {
      if (pick < 0 && part[c] == kNone && stats.in_triangle[c]) pick = c;
    });
    if (pick < 0) {
      throw DomainError("stage 3: extra edge " + label(x, y) +
                        " has no unassigned common neighbour outside V1 and V2");
    }
    part[static_cast<Vertex>(pick)] = kV31;
  }

  // Stage 4: remaining triangle vertices.
  QBasicDecomposition d;
  for (Vertex x = 0; x < n; ++x) {
    if (part[x] == kNone && stats.in_triangle[x]) part[x] = kV32;
    switch (part[x]) {
      case kV1:
        d.v1.push_back(x);
        break;
      case kV2:
        d.v2.push_back(x);
        break;
      case kV31:
        d.v31.push_back(x);
        break;
      case kV32:
        d.v32.push_back(x);
        break;
      default:
        break;
    }
  }
  d.w = std::move(w);
  d.config = {d.v1.size(), d.v2.size(), d.v31.size(), d.v32.size()};

  const VerificationReport report = verify_decomposition(g, d);
  if (!report.valid) {
    throw DomainError("decomposition stage invariant failed: " + report.violation);
  }
  return d;
}

VerificationReport verify_decomposition(const Graph& g, const QBasicDecomposition& d) {
  auto fail = [](std::string why) { return VerificationReport{false, std::move(why)}; };
  const std::size_t n = g.n();

  enum Part : std::uint8_t { kNone, kV1, kV2, kV31, kV32 };
  std::vector<std::uint8_t> part(n, kNone);
  auto assign = [&](const std::vector<Vertex>& set, Part p, const char* name) -> std::string {
    for (Vertex x : set) {
      if (x >= n) return std::string(name) + " contains out-of-range vertex " + label(x);
      if (part[x] != kNone) return "vertex " + label(x) + " appears in more than one part";
      part[x] = p;
    }
    return {};
  };
  for (auto [set, p, name] : {std::tuple{&d.v1, kV1, "V1"}, std::tuple{&d.v2, kV2, "V2"},
                              std::tuple{&d.v31, kV31, "V31"}, std::tuple{&d.v32, kV32, "V32"}}) {
    if (auto why = assign(*set, p, name); !why.empty()) return fail(why);
  }
  for (Vertex x = 0; x < n; ++x) {
    const bool isolated = g.degree(x) == 0;
    if (!isolated && part[x] == kNone) {
      return fail("partition: non-isolated vertex " + label(x) + " is in no part");
    }
    if (isolated && part[x] != kNone) {
      return fail("partition: isolated vertex " + label(x) + " is assigned a part");
    }
  }
  const QBasicConfig sizes{d.v1.size(), d.v2.size(), d.v31.size(), d.v32.size()};
  if (sizes != d.config) return fail("config does not match the part sizes");

  // (1) K3-factor on V1, no triangle outside V1.
  if (d.v1.size() % 3 != 0) return fail("(1) |V1| is not a multiple of 3");
  if (max_disjoint_triangles(induced_subgraph(g, d.v1), PackingMode::kExact) !=
      d.v1.size() / 3) {
    return fail("(1) G[V1] has no K3-factor");
  }
  {
    std::vector<Vertex> rest;
    for (Vertex x = 0; x < n; ++x) {
      if (part[x] != kNone && part[x] != kV1) rest.push_back(x);
    }
    if (!list_triangles(induced_subgraph(g, rest)).empty()) {
      return fail("(1) G[V \\ V1] contains a triangle");
    }
  }

  // (2) G[V2] is a perfect matching whose edges close on V1; the rest is independent.
  for (Vertex x : d.v2) {
    std::size_t inside = 0;
    Vertex mate = 0;
    g.for_each_neighbor(x, [&](Vertex y) {
      if (part[y] == kV2) {
        ++inside;
        mate = y;
      }
    });
    if (inside != 1) {
      return fail("(2) G[V2] is not a perfect matching at vertex " + label(x));
    }
    bool closes = false;
    g.for_each_common_neighbor(x, mate, [&](Vertex o) { closes = closes || part[o] == kV1; });
    if (!closes) {
      return fail("(2) matched edge " + label(std::min(x, mate), std::max(x, mate)) +
                  " has no common neighbour in V1");
    }
  }
  std::size_t edges_in_v1 = 0;
  std::size_t edges_v1_v2 = 0;
  for (const auto& [a, b] : g.edges()) {
    const auto pa = part[a];
    const auto pb = part[b];
    const bool a_low = pa == kV1 || pa == kV2;
    const bool b_low = pb == kV1 || pb == kV2;
    if (!a_low && !b_low) {
      return fail("(2) V \\ (V1 ∪ V2) is not independent: edge " + label(a, b));
    }
    if (pa == kV1 && pb == kV1) ++edges_in_v1;
    if ((pa == kV1 && pb == kV2) || (pa == kV2 && pb == kV1)) ++edges_v1_v2;
  }

  // (31) extra edges and their private common neighbours.
  std::set<Edge> seen;
  for (auto [a, b] : d.w) {
    if (a > b) std::swap(a, b);
    if (a >= n || b >= n || a == b || !g.adjacent(a, b)) {
      return fail("(31) W contains a non-edge " + label(a, b));
    }
    if (!seen.insert({a, b}).second) return fail("(31) W lists edge " + label(a, b) + " twice");
    const bool inside = part[a] == kV1 && part[b] == kV1;
    const bool cross = (part[a] == kV1 && part[b] == kV2) || (part[a] == kV2 && part[b] == kV1);
    if (!inside && !cross) {
      return fail("(31) W edge " + label(a, b) + " is neither inside V1 nor between V1 and V2");
    }
  }
  const std::size_t expected_w = (edges_in_v1 - d.v1.size()) + (edges_v1_v2 - d.v2.size());
  if (edges_in_v1 < d.v1.size() || edges_v1_v2 < d.v2.size() || d.w.size() != expected_w) {
    return fail("(31) W does not consist of exactly the extra V1 and V1-V2 edges");
  }
  if (d.v31.size() != d.w.size()) return fail("(31) |V31| differs from |W|");
  std::vector<std::uint8_t> v31_used(n, 0);
  for (const auto& [a, b] : seen) {
    std::size_t hits = 0;
    g.for_each_common_neighbor(a, b, [&](Vertex c) {
      if (part[c] == kV31) {
        ++hits;
        v31_used[c] = 1;
      }
    });
    if (hits != 1) {
      return fail("(31) endpoints of W edge " + label(a, b) + " have " + std::to_string(hits) +
                  " common neighbours in V31");
    }
  }
  for (Vertex c : d.v31) {
    if (!v31_used[c]) return fail("(31) V31 vertex " + label(c) + " closes no W edge");
  }

  // (32) each remaining vertex closes an edge of G[V1] or a V1-V2 edge.
  for (Vertex c : d.v32) {
    bool ok = false;
    g.for_each_neighbor(c, [&](Vertex a) {
      if (ok || part[a] != kV1) return;
      g.for_each_common_neighbor(c, a, [&](Vertex b) {
        ok = ok || part[b] == kV1 || part[b] == kV2;
      });
    });
    if (!ok) return fail("(32) V32 vertex " + label(c) + " closes no edge touching V1");
  }

  if (2 * g.edge_count() != d.config.twice_edge_identity()) {
    return fail("edge identity e(G) = l1 + 3/2 l2 + 3 l31 + 2 l32 fails: e(G)=" +
                std::to_string(g.edge_count()));
  }
  return {};
}

}  // namespace vtergm
