#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtergm/graph.hpp"

namespace vtergm {

/// Triangle membership of every vertex and the number V_T of covered vertices.
struct TriangleStats {
  std::vector<std::uint8_t> in_triangle;
  std::size_t v_t = 0;

  bool operator==(const TriangleStats&) const = default;
};

using Triangle = std::array<Vertex, 3>;

bool vertex_in_triangle(const Graph& g, Vertex v);
TriangleStats vertices_in_triangles(const Graph& g);

/// Throws ConsistencyError if `stats` does not match a full recount on `g`.
void check_consistency(const Graph& g, const TriangleStats& stats);

/// Effect of flipping one pair: the V_T change and the vertices whose
/// membership flips. Reused across Metropolis steps to avoid allocation.
struct FlipEffect {
  Vertex u = 0;
  Vertex v = 0;
  bool adds_edge = false;
  int delta_vt = 0;
  std::vector<Vertex> changed;
};

/// Computes the effect of flipping {u, v} in g without mutating anything.
/// Only u, v and their common neighbours can change membership.
void compute_flip_effect(const Graph& g, const TriangleStats& stats, Vertex u, Vertex v,
                         FlipEffect& out);

/// Toggles the pair described by `effect` and updates `stats` to match.
void apply_flip(Graph& g, TriangleStats& stats, const FlipEffect& effect);

/// V_T(g with {u,v} flipped) - V_T(g). Full recount check in debug builds.
int delta_vt_on_flip(const Graph& g, const TriangleStats& stats, Vertex u, Vertex v);

/// All triangles (a < b < c) in lexicographic order.
std::vector<Triangle> list_triangles(const Graph& g);

enum class PackingMode { kExact, kGreedy };

struct PackingOptions {
  /// Cap on branch-and-bound nodes per hypergraph component.
  std::uint64_t node_limit = 50'000'000;
};

/// Maximum number of pairwise vertex-disjoint triangles.
///
/// Greedy mode repeatedly takes the lexicographically smallest triangle on
/// unused vertices (a lower bound). Exact mode splits the triangle hypergraph
/// into connected components and runs branch-and-bound on each, seeded by
/// the greedy packing; it throws ResourceError when the node cap is hit.
std::size_t max_disjoint_triangles(const Graph& g, PackingMode mode,
                                   const PackingOptions& options = {});

/// Lexicographically greedy vertex-disjoint triangles.
std::vector<Triangle> greedy_triangle_packing(const Graph& g);

struct QBasicCheck {
  bool q_basic = false;
  std::size_t q = 0;
};

/// q = V_T(g); q_basic iff every single-edge removal lowers V_T.
QBasicCheck is_q_basic(const Graph& g);

struct QBasicConfig {
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::size_t l31 = 0;
  std::size_t l32 = 0;

  std::size_t q() const { return l1 + l2 + l31 + l32; }
  /// l1 + 3/2 l2 + 3 l31 + 2 l32, exactly, as twice the value.
  std::size_t twice_edge_identity() const { return 2 * l1 + 3 * l2 + 6 * l31 + 4 * l32; }

  auto operator<=>(const QBasicConfig&) const = default;
};

/// Partition (V1, V2, V31, V32) of the triangle vertices of a q-basic graph,
/// together with the extra-edge set W. All vertex lists are sorted.
struct QBasicDecomposition {
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  std::vector<Vertex> v31;
  std::vector<Vertex> v32;
  std::vector<Edge> w;
  QBasicConfig config;

  bool operator==(const QBasicDecomposition&) const = default;
};

/// Greedy decomposition with lexicographic tie-breaking throughout. Throws
/// DomainError naming the failed condition when g is not q-basic.
QBasicDecomposition decompose_q_basic(const Graph& g);

struct VerificationReport {
  bool valid = true;
  std::string violation;  // empty when valid
};

/// Checks each partition condition directly against g, independent of how
/// `d` was built, plus the edge-count identity. Reports the first failure.
VerificationReport verify_decomposition(const Graph& g, const QBasicDecomposition& d);

}  // namespace vtergm
