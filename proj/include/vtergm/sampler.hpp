#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "vtergm/graph.hpp"
#include "vtergm/rates.hpp"
#include "vtergm/triangles.hpp"

namespace vtergm {

/// SplitMix64 finaliser, used to expand user seeds into generator state.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of chain `index` in a stream rooted at `base`.
inline std::uint64_t chain_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

/// Deterministic generator: mt19937_64 plus explicitly defined uniform
/// transforms, so traces are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// G(n, lambda/n). Pairs are visited by geometric skipping, so the cost is
/// O(n + edges). Requires 0 <= lambda < n.
Graph sample_er(std::size_t n, double lambda, std::uint64_t seed);
Graph sample_er(std::size_t n, double lambda, Rng& rng);

/// floor(a n / 3) disjoint triangles on vertices 0..3k-1 plus independent
/// lambda/n background edges on every other pair. The background is not
/// conditioned to be triangle free.
Graph sample_planted(std::size_t n, double a, double lambda, std::uint64_t seed);
Graph sample_planted(std::size_t n, double a, double lambda, Rng& rng);

std::size_t planted_triangle_count(std::size_t n, double a);

enum class InitMode { kPlanted, kEmpty };

struct ChainConfig {
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thinning = 1;
  std::uint64_t seed = 0;
  bool record_v_t = true;
  bool record_e = true;
  bool record_dt = true;
  InitMode init = InitMode::kPlanted;

  void validate() const;
};

struct ChainSummary {
  std::uint64_t seed = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thinning = 1;
  std::vector<std::uint64_t> step;
  std::vector<std::int64_t> v_t;
  std::vector<std::int64_t> e;
  std::vector<std::int64_t> dt_greedy;
  std::vector<std::uint64_t> accepted;  // cumulative accepted proposals
  double acceptance_rate = 0.0;
  Graph final_graph{1};
  TriangleStats final_stats;
};

/// Single-edge-flip Metropolis kernel with uniform pair proposals for the
/// measure p^E (1-p)^{N-E} exp(log_tilt[V_T]).
class MetropolisKernel {
 public:
  MetropolisKernel(std::size_t n, double lambda, std::vector<double> log_tilt);

  static MetropolisKernel linear(std::size_t n, const LinearTilt& tilt);
  static MetropolisKernel functional(std::size_t n, const PowerLawTilt& tilt);

  std::size_t n() const { return n_; }
  double edge_probability() const { return p_; }
  const std::vector<double>& log_tilt() const { return log_tilt_; }

  /// Unnormalised log density E log(p/(1-p)) + log_tilt[V_T].
  double log_density(const Graph& g) const;
  double log_acceptance_ratio(const FlipEffect& effect, std::size_t v_t) const;
  double acceptance_probability(const Graph& g, const TriangleStats& stats, Vertex u,
                                Vertex v) const;
  /// Probability that one step moves g to g with {u, v} flipped.
  double transition_probability(const Graph& g, const TriangleStats& stats, Vertex u,
                                Vertex v) const;

 private:
  std::size_t n_;
  double p_;
  double log_odds_;
  std::vector<double> log_tilt_;
};

ChainSummary run_chain(Graph initial, const MetropolisKernel& kernel, const ChainConfig& config,
                       Rng& rng);

/// Chain for the linear tilt; warm start is sample_planted at a*(theta, lambda).
ChainSummary mcmc_linear(std::size_t n, const LinearTilt& tilt, const ChainConfig& config);

/// Chain for the power-law tilt; warm start is sample_planted at its a*.
ChainSummary mcmc_functional(std::size_t n, const PowerLawTilt& tilt, const ChainConfig& config);

/// Runs `chains` independent chains on worker threads; chain i uses seed
/// chain_seed(config.seed, i). Results are ordered by chain index.
std::vector<ChainSummary> run_chains(
    std::size_t chains, const ChainConfig& config,
    const std::function<ChainSummary(const ChainConfig&)>& run_one);

}  // namespace vtergm
