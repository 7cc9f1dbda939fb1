#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vtergm {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class EdgeChange { kAdded, kRemoved };

/// Labeled simple graph on vertices 0..n-1.
///
/// Each vertex owns a dense bitset row, so edge tests and flips are O(1) and
/// common-neighbour queries are a word-parallel AND of two rows. The edge
/// count is maintained incrementally; recount_edges() recomputes it from the
/// rows for consistency checks.
class Graph {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  explicit Graph(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool has_edge(Vertex u, Vertex v) const;
  EdgeChange toggle_edge(Vertex u, Vertex v);
  /// Returns true if the edge was newly inserted.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);

  std::size_t degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;

  std::vector<Vertex> common_neighbors(Vertex u, Vertex v) const;
  bool has_common_neighbor(Vertex u, Vertex v) const;
  std::size_t count_common_neighbors(Vertex u, Vertex v) const;

  /// All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::size_t recount_edges() const;

  std::span<const Word> row(Vertex v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  bool operator==(const Graph& other) const = default;

  /// Unchecked adjacency test; callers guarantee u, v < n.
  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (rows_[static_cast<std::size_t>(u) * words_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }

  /// Calls f(w) for every common neighbour w of u and v in increasing order.
  template <class F>
  void for_each_common_neighbor(Vertex u, Vertex v, F&& f) const {
    check_pair(u, v);
    const Word* a = rows_.data() + static_cast<std::size_t>(u) * words_;
    const Word* b = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      Word x = a[w] & b[w];
      while (x != 0) {
        const int bit = __builtin_ctzll(x);
        f(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(bit)));
        x &= x - 1;
      }
    }
  }

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    check_vertex(v);
    const Word* a = rows_.data() + static_cast<std::size_t>(v) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      Word x = a[w];
      while (x != 0) {
        const int bit = __builtin_ctzll(x);
        f(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(bit)));
        x &= x - 1;
      }
    }
  }

  void check_vertex(Vertex v) const;
  void check_pair(Vertex u, Vertex v) const;

 private:
  void set_bit(Vertex u, Vertex v, bool on) noexcept;

  std::size_t n_;
  std::size_t words_;
  std::size_t edge_count_ = 0;
  std::vector<Word> rows_;
};

Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph graph_from_edges(std::size_t n, std::span<const Edge> edges);

/// Subgraph of g with vertex set g's vertex set and only edges inside `keep`.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

}  // namespace vtergm
