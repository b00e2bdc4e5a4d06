#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sgf/graph.hpp"
#include "sgf/graphon.hpp"
#include "sgf/rational.hpp"
#include "sgf/rng.hpp"

namespace sgf {

/// Latent labels U_1..U_n. For a step graphon the kernel only sees the block;
/// the coordinate is kept so a general kernel could use it.
struct Latents {
  std::vector<double> coords;
  std::vector<std::uint32_t> blocks;

  std::size_t size() const { return coords.size(); }
  /// Number of latents in each of `block_count` blocks.
  std::vector<std::size_t> occupancy(std::size_t block_count) const;
};

/// One realization of G(n, rho, W).
struct SampledGraph {
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  Latents latents;
  std::vector<VertexPair> edges;  ///< (i, j), i < j, sorted

  Graph adjacency() const { return Graph(n, edges); }
};

Latents draw_latents(const StepGraphon& w, std::size_t n, Xoshiro256& rng);

/// Includes each pair (i, j) independently with probability
/// rho * W(block_i, block_j). Pairs are visited block pair by block pair
/// (b <= c); inside a block pair the probability is constant, so gaps between
/// included pairs are drawn as geometric skips.
std::vector<VertexPair> draw_edges(const StepGraphon& w, const Latents& latents, double rho,
                                   Xoshiro256& rng);

/// Latents then edges from Xoshiro256(seed). Throws std::invalid_argument
/// unless n >= 1 and rho in (0, 1].
SampledGraph sample(const StepGraphon& w, std::size_t n, double rho, std::uint64_t seed);

/// Fresh edge layer over fixed latents, from Xoshiro256(seed).
SampledGraph sample_given_latents(const StepGraphon& w, const Latents& latents, double rho,
                                  std::uint64_t seed);

/// rho_n = min(1, amplitude * n^-exponent).
struct SparsitySchedule {
  double amplitude = 1.0;
  double exponent = 0.0;

  /// Throws std::invalid_argument unless amplitude > 0 and exponent >= 0.
  void validate() const;
  double rho(std::size_t n) const;
};

double schedule_rho(const SparsitySchedule& s, std::size_t n);

enum class Regime {
  below_containment,  ///< gamma > 1/m(H)
  at_containment,     ///< gamma = 1/m(H)
  edge_dominated,     ///< 1/m1(H) < gamma < 1/m(H)
  critical,           ///< gamma = 1/m1(H)
  label_dominated,    ///< 0 < gamma < 1/m1(H)
  dense,              ///< gamma = 0
};

std::string_view to_string(Regime r);

/// Regime of rho_n = a n^-gamma for H, by exact rational comparison.
Regime classify_regime(const Motif& m, const Rational& gamma);
/// Snaps gamma to a fraction with denominator <= 10^6 when within 1e-12,
/// otherwise compares in floating point against the exact thresholds.
Regime classify_regime(const Motif& m, double gamma);

}  // namespace sgf
