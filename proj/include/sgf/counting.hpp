#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgf/graph.hpp"
#include "sgf/graphon.hpp"
#include "sgf/motif.hpp"
#include "sgf/sampler.hpp"

namespace sgf {

/// Exact pair-enumeration oracles refuse hosts larger than this.
inline constexpr std::size_t kMaxOracleVertices = 12;
inline constexpr int kMaxOracleMotifVertices = 4;

/// X(H, G): unlabeled, not necessarily induced copies. K2 and K3 take fast
/// paths; everything else goes through count_embeddings.
std::uint64_t count(const Graph& g, const Motif& m);
std::uint64_t count(const SampledGraph& g, const Motif& m);

/// Triangles by forward intersection of degree-ordered adjacency lists.
std::uint64_t count_triangles(const Graph& g);

/// E[X] = (n)_k / |Aut(H)| * rho^|E| * t(H, W).
double expected_count(const Motif& m, const StepGraphon& w, std::size_t n, double rho);

/// E[X | U] from block occupancy: for every block assignment beta of V(H),
/// the kernel product times prod_b (n_b)_(c_b), where c_b vertices of H sit
/// in block b.
double conditional_expected_count(const std::vector<std::size_t>& occupancy, const Motif& m,
                                  const StepGraphon& w, double rho);
double conditional_expected_count(const Latents& latents, const Motif& m, const StepGraphon& w,
                                  double rho);

struct Decomposition {
  std::uint64_t x = 0;
  double expected = 0.0;
  double conditional_expected = 0.0;
  double delta = 0.0;   ///< x - expected
  double delta1 = 0.0;  ///< x - conditional_expected
  double delta2 = 0.0;  ///< conditional_expected - expected
};

Decomposition decompose(const SampledGraph& g, const Motif& m, const StepGraphon& w);
/// Same, with X already counted.
Decomposition decompose(std::uint64_t x, const SampledGraph& g, const Motif& m,
                        const StepGraphon& w);

/// Centered label U-statistic T with delta2 = C(n, k) rho^|E| T. Throws
/// std::invalid_argument when n < k.
double ustat_T(const Latents& latents, const Motif& m, const StepGraphon& w);

/// Var[X] by enumerating ordered pairs of copies in K_n that share a vertex.
/// Throws std::length_error past kMaxOracleVertices / kMaxOracleMotifVertices.
double exact_variance(const Motif& m, const StepGraphon& w, std::size_t n, double rho);

/// Var[X | U] at the given latents: pairs of copies sharing an edge.
double conditional_variance(const Latents& latents, const Motif& m, const StepGraphon& w,
                            double rho);

struct VarianceOrders {
  double mean_order = 0.0;  ///< n^|V| rho^|E|
  double var_order = 0.0;   ///< max_F n^(2|V|-|V(F)|) rho^(2|E|-|E(F)|)
  double phi = 0.0;         ///< min_F n^|V(F)| rho^|E(F)|
  Motif var_argmax = Motif::edgeless(1);
  Motif phi_argmin = Motif::edgeless(1);
};

/// F ranges over induced subgraphs on nonempty vertex subsets; ties go to
/// the first subset in increasing mask order. Arg classes are canonical.
VarianceOrders mean_variance_orders(const Motif& m, double n, double rho);

}  // namespace sgf
