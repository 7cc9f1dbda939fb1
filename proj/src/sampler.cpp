#include "vtergm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "vtergm/error.hpp"

namespace vtergm {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Graph sample_er(std::size_t n, double lambda, Rng& rng) {
  Graph g(n);
  const double nd = static_cast<double>(n);
  if (!(lambda >= 0.0 && lambda < nd)) {
    throw DomainError("sample_er needs 0 <= lambda < n (edge probability below 1)");
  }
  const double p = lambda / nd;
  if (p == 0.0 || n < 2) return g;
  const double log_q = std::log1p(-p);

  // Walk the pairs (u, v), u < v, in row order, jumping by Geometric(p) gaps.
  Vertex u = 0;
  std::size_t offset = 0;  // index within row u, pair (u, u + 1 + offset)
  while (u + 1 < n) {
    const double r = 1.0 - rng.uniform01();  // (0, 1]
    const double gap = std::floor(std::log(r) / log_q);
    std::size_t skip = gap >= 1e18 ? SIZE_MAX / 2 : static_cast<std::size_t>(gap);
    while (u + 1 < n && offset + skip >= n - 1 - u) {
      skip -= (n - 1 - u) - offset;
      ++u;
      offset = 0;
    }
    if (u + 1 >= n) break;
    offset += skip;
    g.add_edge(u, static_cast<Vertex>(u + 1 + offset));
    ++offset;
    if (offset >= n - 1 - u) {
      ++u;
      offset = 0;
    }
  }
  return g;
}

Graph sample_er(std::size_t n, double lambda, std::uint64_t seed) {
  Rng rng(seed);
  return sample_er(n, lambda, rng);
}

std::size_t planted_triangle_count(std::size_t n, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("sample_planted needs a in [0,1]");
  return static_cast<std::size_t>(std::floor(a * static_cast<double>(n) / 3.0 + 1e-9));
}

Graph sample_planted(std::size_t n, double a, double lambda, Rng& rng) {
  const std::size_t k = planted_triangle_count(n, a);
  Graph g = sample_er(n, lambda, rng);
  for (std::size_t t = 0; t < k; ++t) {
    const auto base = static_cast<Vertex>(3 * t);
    g.add_edge(base, base + 1);
    g.add_edge(base, base + 2);
    g.add_edge(base + 1, base + 2);
  }
  return g;
}

Graph sample_planted(std::size_t n, double a, double lambda, std::uint64_t seed) {
  Rng rng(seed);
  return sample_planted(n, a, lambda, rng);
}

void ChainConfig::validate() const {
  if (!(steps > burn_in)) throw DomainError("chain config needs steps > burn_in");
  if (thinning < 1) throw DomainError("chain config needs thinning >= 1");
}

MetropolisKernel::MetropolisKernel(std::size_t n, double lambda, std::vector<double> log_tilt)
    : n_(n), log_tilt_(std::move(log_tilt)) {
  if (n < 3) throw DomainError("Metropolis chain needs n >= 3");
  const double nd = static_cast<double>(n);
  if (!(lambda > 0.0 && lambda < nd)) throw DomainError("Metropolis chain needs 0 < lambda < n");
  if (log_tilt_.size() != n + 1) throw DomainError("log tilt table must have n + 1 entries");
  p_ = lambda / nd;
  log_odds_ = std::log(p_) - std::log1p(-p_);
}

MetropolisKernel MetropolisKernel::linear(std::size_t n, const LinearTilt& tilt) {
  tilt.validate();
  const double slope = tilt.beta(n) * std::log(static_cast<double>(n));
  std::vector<double> table(n + 1);
  for (std::size_t q = 0; q <= n; ++q) table[q] = slope * static_cast<double>(q);
  return MetropolisKernel(n, tilt.lambda, std::move(table));
}

MetropolisKernel MetropolisKernel::functional(std::size_t n, const PowerLawTilt& tilt) {
  tilt.validate();
  const double nd = static_cast<double>(n);
  const double scale = nd * std::log(nd);
  std::vector<double> table(n + 1);
  for (std::size_t q = 0; q <= n; ++q) table[q] = scale * tilt.g(static_cast<double>(q) / nd);
  return MetropolisKernel(n, tilt.lambda, std::move(table));
}

double MetropolisKernel::log_density(const Graph& g) const {
  const TriangleStats s = vertices_in_triangles(g);
  return static_cast<double>(g.edge_count()) * log_odds_ + log_tilt_[s.v_t];
}

double MetropolisKernel::log_acceptance_ratio(const FlipEffect& effect, std::size_t v_t) const {
  const auto after = static_cast<std::size_t>(static_cast<long>(v_t) + effect.delta_vt);
  const double tilt = log_tilt_[after] - log_tilt_[v_t];
  return (effect.adds_edge ? log_odds_ : -log_odds_) + tilt;
}

double MetropolisKernel::acceptance_probability(const Graph& g, const TriangleStats& stats,
                                                Vertex u, Vertex v) const {
  FlipEffect effect;
  compute_flip_effect(g, stats, u, v, effect);
  return std::min(1.0, std::exp(log_acceptance_ratio(effect, stats.v_t)));
}

double MetropolisKernel::transition_probability(const Graph& g, const TriangleStats& stats,
                                                Vertex u, Vertex v) const {
  const double pairs = static_cast<double>(n_) * static_cast<double>(n_ - 1) / 2.0;
  return acceptance_probability(g, stats, u, v) / pairs;
}

ChainSummary run_chain(Graph initial, const MetropolisKernel& kernel, const ChainConfig& config,
                       Rng& rng) {
  config.validate();
  if (initial.n() != kernel.n()) throw DomainError("initial graph size does not match kernel");
  const std::size_t n = kernel.n();

  ChainSummary out;
  out.seed = config.seed;
  out.burn_in = config.burn_in;
  out.thinning = config.thinning;
  const std::uint64_t records = (config.steps - config.burn_in) / config.thinning;
  out.step.reserve(records);
  out.accepted.reserve(records);
  if (config.record_v_t) out.v_t.reserve(records);
  if (config.record_e) out.e.reserve(records);
  if (config.record_dt) out.dt_greedy.reserve(records);

  Graph g = std::move(initial);
  TriangleStats stats = vertices_in_triangles(g);
  FlipEffect effect;
  std::uint64_t accepted = 0;
  for (std::uint64_t step = 1; step <= config.steps; ++step) {
    const auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    if (v >= u) ++v;
    compute_flip_effect(g, stats, u, v, effect);
    const double log_ratio = kernel.log_acceptance_ratio(effect, stats.v_t);
    if (log_ratio >= 0.0 || rng.uniform01() < std::exp(log_ratio)) {
      apply_flip(g, stats, effect);
      ++accepted;
    }
    if (step > config.burn_in && (step - config.burn_in) % config.thinning == 0) {
      out.step.push_back(step);
      out.accepted.push_back(accepted);
      if (config.record_v_t) out.v_t.push_back(static_cast<std::int64_t>(stats.v_t));
      if (config.record_e) out.e.push_back(static_cast<std::int64_t>(g.edge_count()));
      if (config.record_dt) {
        out.dt_greedy.push_back(
            static_cast<std::int64_t>(max_disjoint_triangles(g, PackingMode::kGreedy)));
      }
    }
  }
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(config.steps);
  out.final_graph = std::move(g);
  out.final_stats = std::move(stats);
  return out;
}

namespace {

ChainSummary run_with_start(const MetropolisKernel& kernel, const ChainConfig& config,
                            double warm_a, double lambda) {
  config.validate();
  Rng rng(config.seed);
  Graph start = config.init == InitMode::kPlanted
                    ? sample_planted(kernel.n(), std::clamp(warm_a, 0.0, 1.0), lambda, rng)
                    : empty_graph(kernel.n());
  return run_chain(std::move(start), kernel, config, rng);
}

}  // namespace

ChainSummary mcmc_linear(std::size_t n, const LinearTilt& tilt, const ChainConfig& config) {
  const MetropolisKernel kernel = MetropolisKernel::linear(n, tilt);
  const double warm = config.init == InitMode::kPlanted
                          ? maximizer_a_star(tilt.theta, tilt.lambda).a_star
                          : 0.0;
  return run_with_start(kernel, config, warm, tilt.lambda);
}

ChainSummary mcmc_functional(std::size_t n, const PowerLawTilt& tilt, const ChainConfig& config) {
  const MetropolisKernel kernel = MetropolisKernel::functional(n, tilt);
  const double warm = (config.init == InitMode::kPlanted && tilt.beta > 0.0)
                          ? functional_optimum(tilt).a_star
                          : 0.0;
  return run_with_start(kernel, config, warm, tilt.lambda);
}

std::vector<ChainSummary> run_chains(
    std::size_t chains, const ChainConfig& config,
    const std::function<ChainSummary(const ChainConfig&)>& run_one) {
  if (chains == 0) throw DomainError("need at least one chain");
  config.validate();
  std::vector<ChainSummary> out(chains);
  std::vector<std::exception_ptr> errors(chains);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(chains, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < chains; i += workers) {
        try {
          ChainConfig local = config;
          local.seed = chain_seed(config.seed, i);
          out[i] = run_one(local);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace vtergm
