#include "vtergm/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "vtergm/error.hpp"

namespace vtergm {
namespace {

void guard_size(std::size_t n, std::size_t limit) {
  if (n == 0) throw DomainError("enumeration needs n >= 1");
  if (n > limit) {
    throw ResourceError("exhaustive enumeration limited to n <= " + std::to_string(limit) +
                        " (got n=" + std::to_string(n) + ")");
  }
}

/// Triangle-vertex count by the plain triple loop on per-vertex neighbour masks.
std::size_t naive_vt(std::size_t n, const std::array<std::uint8_t, 8>& adj) {
  std::uint8_t covered = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!((adj[a] >> b) & 1U)) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (((adj[a] >> c) & 1U) && ((adj[b] >> c) & 1U)) {
          covered |= static_cast<std::uint8_t>((1U << a) | (1U << b) | (1U << c));
        }
      }
    }
  }
  return static_cast<std::size_t>(std::popcount(covered));
}

}  // namespace

std::vector<Edge> pair_order(std::size_t n) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  guard_size(n, kMaxEnumerationN);
  Graph g(n);
  const auto pairs = pair_order(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if ((mask >> k) & 1U) g.add_edge(pairs[k].first, pairs[k].second);
  }
  return g;
}

double ExactLaw::prob_vt(std::size_t q) const {
  if (q >= mass.size()) return 0.0;
  double s = 0.0;
  for (double m : mass[q]) s += m;
  return s;
}

double ExactLaw::prob_vt_at_least(std::size_t q) const {
  double s = 0.0;
  for (std::size_t v = q; v < mass.size(); ++v) s += prob_vt(v);
  return s;
}

ExactLaw enumerate_exact_law(std::size_t n, double lambda, const EnumerationOptions& options) {
  guard_size(n, kMaxEnumerationN);
  const double nd = static_cast<double>(n);
  if (!(lambda > 0.0 && lambda < nd)) throw DomainError("enumeration needs 0 < lambda < n");

  ExactLaw law;
  law.n = n;
  law.lambda = lambda;
  law.pairs = n * (n - 1) / 2;
  const auto pairs = pair_order(n);
  const std::uint64_t total = std::uint64_t{1} << law.pairs;

  using Table = std::vector<std::vector<std::uint64_t>>;
  const std::size_t threads =
      std::max<std::size_t>(1, options.threads ? options.threads : std::thread::hardware_concurrency());
  // Partition the mask range into contiguous blocks (high bits of the mask).
  const std::size_t blocks = std::min<std::uint64_t>(threads, total);
  std::vector<Table> partial(blocks, Table(n + 1, std::vector<std::uint64_t>(law.pairs + 1, 0)));
  std::vector<std::exception_ptr> errors(blocks);

  auto work = [&](std::size_t b) {
    try {
      const std::uint64_t begin = total / blocks * b;
      const std::uint64_t end = b + 1 == blocks ? total : total / blocks * (b + 1);
      Table& table = partial[b];
      for (std::uint64_t mask = begin; mask < end; ++mask) {
        std::array<std::uint8_t, 8> adj{};
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          if ((mask >> k) & 1U) {
            adj[pairs[k].first] |= static_cast<std::uint8_t>(1U << pairs[k].second);
            adj[pairs[k].second] |= static_cast<std::uint8_t>(1U << pairs[k].first);
          }
        }
        const std::size_t vt = naive_vt(n, adj);
        const auto e = static_cast<std::size_t>(std::popcount(mask));
        if (options.spot_check_stride != 0 && mask % options.spot_check_stride == 0) {
          const std::size_t check = vertices_in_triangles(graph_from_mask(n, mask)).v_t;
          if (check != vt) {
            throw ConsistencyError("V_T mismatch on mask " + std::to_string(mask) +
                                   ": triple loop " + std::to_string(vt) +
                                   ", triangle analysis " + std::to_string(check));
          }
        }
        ++table[vt][e];
      }
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t b = 1; b < blocks; ++b) pool.emplace_back(work, b);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  law.count = Table(n + 1, std::vector<std::uint64_t>(law.pairs + 1, 0));
  for (const auto& table : partial) {
    for (std::size_t v = 0; v <= n; ++v) {
      for (std::size_t e = 0; e <= law.pairs; ++e) law.count[v][e] += table[v][e];
    }
  }
  const double p = lambda / nd;
  law.mass.assign(n + 1, std::vector<double>(law.pairs + 1, 0.0));
  for (std::size_t v = 0; v <= n; ++v) {
    for (std::size_t e = 0; e <= law.pairs; ++e) {
      if (law.count[v][e] == 0) continue;
      const double w = std::exp(static_cast<double>(e) * std::log(p) +
                                static_cast<double>(law.pairs - e) * std::log1p(-p));
      law.mass[v][e] = static_cast<double>(law.count[v][e]) * w;
      law.total_mass += law.mass[v][e];
    }
  }
  return law;
}

double TiltedLaw::mean_vt() const {
  double s = 0.0;
  for (std::size_t v = 0; v < joint.size(); ++v) {
    for (double m : joint[v]) s += static_cast<double>(v) * m;
  }
  return s;
}

double TiltedLaw::mean_e() const {
  double s = 0.0;
  for (const auto& row : joint) {
    for (std::size_t e = 0; e < row.size(); ++e) s += static_cast<double>(e) * row[e];
  }
  return s;
}

TiltedLaw exact_partition_function(const ExactLaw& law, const std::vector<double>& log_weight) {
  if (log_weight.size() != law.n + 1) throw DomainError("log weight table must have n + 1 entries");
  TiltedLaw out;
  out.joint = law.mass;
  for (std::size_t v = 0; v <= law.n; ++v) {
    const double w = std::exp(log_weight[v]);
    for (auto& m : out.joint[v]) {
      m *= w;
      out.partition_function += m;
    }
  }
  for (auto& row : out.joint) {
    for (auto& m : row) m /= out.partition_function;
  }
  return out;
}

TiltedLaw exact_partition_function(const ExactLaw& law, const LinearTilt& tilt) {
  tilt.validate();
  const double slope = tilt.beta(law.n) * std::log(static_cast<double>(law.n));
  std::vector<double> w(law.n + 1);
  for (std::size_t v = 0; v <= law.n; ++v) w[v] = slope * static_cast<double>(v);
  return exact_partition_function(law, w);
}

TiltedLaw exact_partition_function(const ExactLaw& law, const PowerLawTilt& tilt) {
  tilt.validate();
  const double nd = static_cast<double>(law.n);
  std::vector<double> w(law.n + 1);
  for (std::size_t v = 0; v <= law.n; ++v) {
    w[v] = nd * std::log(nd) * tilt.g(static_cast<double>(v) / nd);
  }
  return exact_partition_function(law, w);
}

std::vector<double> exact_conditional_edge_law(const ExactLaw& law, std::size_t q,
                                               Conditioning mode) {
  std::vector<double> out(law.pairs + 1, 0.0);
  double total = 0.0;
  for (std::size_t v = 0; v <= law.n; ++v) {
    const bool in_event = mode == Conditioning::kEqual ? v == q : v >= q;
    if (!in_event) continue;
    for (std::size_t e = 0; e <= law.pairs; ++e) {
      out[e] += law.mass[v][e];
      total += law.mass[v][e];
    }
  }
  if (!(total > 0.0)) {
    throw DomainError("conditioning event V_T " + std::string(mode == Conditioning::kEqual ? "=" : ">=") +
                      " " + std::to_string(q) + " has zero probability");
  }
  for (auto& m : out) m /= total;
  return out;
}

std::uint64_t count_qbasic(std::size_t n, std::size_t q, const std::optional<QBasicConfig>& config) {
  guard_size(n, kMaxQBasicEnumerationN);
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const Graph g = graph_from_mask(n, mask);
    const QBasicCheck check = is_q_basic(g);
    if (!check.q_basic || check.q != q) continue;
    if (config && decompose_q_basic(g).config != *config) continue;
    ++count;
  }
  return count;
}

}  // namespace vtergm
