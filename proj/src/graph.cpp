#include "vtergm/graph.hpp"

#include <bit>
#include <string>

#include "vtergm/error.hpp"

namespace vtergm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain:
      return "domain";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kResource:
      return "resource";
    case ErrorKind::kConsistency:
      return "consistency";
  }
  return "unknown";
}

Graph::Graph(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits) {
  if (n == 0) throw DomainError("graph size must be at least 1");
  rows_.assign(n_ * words_, 0);
}

void Graph::check_vertex(Vertex v) const {
  if (v >= n_) {
    throw DomainError("vertex " + std::to_string(v) + " out of range for n=" +
                      std::to_string(n_));
  }
}

void Graph::check_pair(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
}

void Graph::set_bit(Vertex u, Vertex v, bool on) noexcept {
  const Word mask_v = Word{1} << (v % kWordBits);
  const Word mask_u = Word{1} << (u % kWordBits);
  Word& a = rows_[static_cast<std::size_t>(u) * words_ + v / kWordBits];
  Word& b = rows_[static_cast<std::size_t>(v) * words_ + u / kWordBits];
  if (on) {
    a |= mask_v;
    b |= mask_u;
  } else {
    a &= ~mask_v;
    b &= ~mask_u;
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check_pair(u, v);
  return adjacent(u, v);
}

EdgeChange Graph::toggle_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  if (adjacent(u, v)) {
    set_bit(u, v, false);
    --edge_count_;
    return EdgeChange::kRemoved;
  }
  set_bit(u, v, true);
  ++edge_count_;
  return EdgeChange::kAdded;
}

bool Graph::add_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  if (adjacent(u, v)) return false;
  set_bit(u, v, true);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  if (!adjacent(u, v)) return false;
  set_bit(u, v, false);
  --edge_count_;
  return true;
}

std::size_t Graph::degree(Vertex v) const {
  check_vertex(v);
  std::size_t d = 0;
  for (Word w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for_each_neighbor(v, [&](Vertex w) { out.push_back(w); });
  return out;
}

std::vector<Vertex> Graph::common_neighbors(Vertex u, Vertex v) const {
  std::vector<Vertex> out;
  for_each_common_neighbor(u, v, [&](Vertex w) { out.push_back(w); });
  return out;
}

bool Graph::has_common_neighbor(Vertex u, Vertex v) const {
  check_pair(u, v);
  const Word* a = rows_.data() + static_cast<std::size_t>(u) * words_;
  const Word* b = rows_.data() + static_cast<std::size_t>(v) * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    if ((a[w] & b[w]) != 0) return true;
  }
  return false;
}

std::size_t Graph::count_common_neighbors(Vertex u, Vertex v) const {
  check_pair(u, v);
  const Word* a = rows_.data() + static_cast<std::size_t>(u) * words_;
  const Word* b = rows_.data() + static_cast<std::size_t>(v) * words_;
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  }
  return c;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for_each_neighbor(u, [&](Vertex v) {
      if (u < v) out.emplace_back(u, v);
    });
  }
  return out;
}

std::size_t Graph::recount_edges() const {
  std::size_t half = 0;
  for (Word w : rows_) half += static_cast<std::size_t>(std::popcount(w));
  return half / 2;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (!g.add_edge(u, v)) {
      throw DomainError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }
  return g;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<bool> in(g.n(), false);
  for (Vertex v : keep) {
    g.check_vertex(v);
    in[v] = true;
  }
  Graph h(g.n());
  for (const auto& [u, v] : g.edges()) {
    if (in[u] && in[v]) h.add_edge(u, v);
  }
  return h;
}

}  // namespace vtergm
