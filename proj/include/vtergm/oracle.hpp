#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vtergm/graph.hpp"
#include "vtergm/rates.hpp"
#include "vtergm/triangles.hpp"

namespace vtergm {

inline constexpr std::size_t kMaxEnumerationN = 7;
inline constexpr std::size_t kMaxQBasicEnumerationN = 6;

/// Labeled graph on n <= 7 vertices decoded from an edge mask; bit k of the
/// mask is the k-th pair (u, v), u < v, in row order.
Graph graph_from_mask(std::size_t n, std::uint64_t mask);
std::vector<Edge> pair_order(std::size_t n);

/// Exact joint law of (V_T, E) under G(n, lambda/n), indexed [v_t][e].
struct ExactLaw {
  std::size_t n = 0;
  double lambda = 0.0;
  std::size_t pairs = 0;
  std::vector<std::vector<std::uint64_t>> count;  // labeled graphs per cell
  std::vector<std::vector<double>> mass;
  double total_mass = 0.0;

  double prob_vt(std::size_t q) const;
  double prob_vt_at_least(std::size_t q) const;
};

struct EnumerationOptions {
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  std::size_t threads = 0;
  /// Cross-check V_T against vertices_in_triangles on every graph whose mask
  /// is divisible by this stride (1% sample by default).
  std::uint64_t spot_check_stride = 101;
};

/// Iterates all 2^{C(n,2)} edge masks. Throws ResourceError for n > 7.
ExactLaw enumerate_exact_law(std::size_t n, double lambda, const EnumerationOptions& options = {});

/// Normaliser of a tilted law and the tilted joint table.
struct TiltedLaw {
  double partition_function = 0.0;
  std::vector<std::vector<double>> joint;  // [v_t][e], sums to 1

  double mean_vt() const;
  double mean_e() const;
};

/// Z = sum mass(v_t, e) exp(log_weight[v_t]); log_weight has n + 1 entries.
TiltedLaw exact_partition_function(const ExactLaw& law, const std::vector<double>& log_weight);
TiltedLaw exact_partition_function(const ExactLaw& law, const LinearTilt& tilt);
TiltedLaw exact_partition_function(const ExactLaw& law, const PowerLawTilt& tilt);

enum class Conditioning { kEqual, kAtLeast };

/// Law of E given V_T = q (or V_T >= q). Throws DomainError on a null event.
std::vector<double> exact_conditional_edge_law(const ExactLaw& law, std::size_t q,
                                               Conditioning mode);

/// Number of labeled q-basic graphs on n <= 6 vertices; with `config`, only
/// those whose decompose_q_basic output has that configuration.
std::uint64_t count_qbasic(std::size_t n, std::size_t q,
                           const std::optional<QBasicConfig>& config = std::nullopt);

}  // namespace vtergm
