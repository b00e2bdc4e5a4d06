#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "sgf/motif.hpp"

namespace sgf {

/// Default cap on K^(free vertices) block assignments per density sum.
inline constexpr double kMaxBlockAssignments = 1.0e7;
inline constexpr double kDefaultRegularityTolerance = 1.0e-10;

/// Block (step) graphon: K blocks of widths pi_1..pi_K and a symmetric
/// K x K value matrix with entries in [0, 1].
class StepGraphon {
 public:
  /// Throws std::invalid_argument unless the widths are positive and sum to 1
  /// within 1e-12, the matrix is square, symmetric and in [0, 1], and the edge
  /// density is positive.
  StepGraphon(std::vector<double> block_measures, std::vector<std::vector<double>> values);

  static StepGraphon constant(double p);

  std::size_t block_count() const { return pi_.size(); }
  const std::vector<double>& block_measures() const { return pi_; }
  double measure(std::size_t b) const { return pi_[b]; }
  double value(std::size_t b, std::size_t c) const { return values_[b * pi_.size() + c]; }
  std::vector<std::vector<double>> values() const;
  double max_value() const;
  /// Sum_{b,c} pi_b pi_c W[b][c] = t(K2, W).
  double edge_density() const;

  /// Block containing the latent coordinate u in [0, 1).
  std::size_t block_of(double u) const;

 private:
  std::vector<double> pi_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

/// Named fixtures: "const:p", "W_sym" (pi .5/.5, [[.8,.2],[.2,.8]]) and
/// "W_asym" (pi .5/.5, [[.9,.3],[.3,.1]]). Returns nullopt for unknown names.
std::optional<StepGraphon> named_graphon(std::string_view name);

/// Vertex -> block pins for conditional densities.
using BlockPins = std::map<int, std::size_t>;

/// t(H, W) as an exact sum over all block assignments of V(H).
double hom_density(const Motif& m, const StepGraphon& w,
                   double max_assignments = kMaxBlockAssignments);

/// Conditional homomorphism density with the pinned vertices fixed to the
/// given blocks (no measure weight on pinned vertices).
double multipoint_density(const Motif& m, const BlockPins& pinned, const StepGraphon& w,
                          double max_assignments = kMaxBlockAssignments);

/// t_a(x, H, W) for x in the given block.
double rooted_density(const Motif& m, int vertex, std::size_t block, const StepGraphon& w);

/// Vertex-averaged rooted density at the given block.
double mean_rooted_density(const Motif& m, std::size_t block, const StepGraphon& w);

/// d_W(x) per block.
std::vector<double> degree_function(const StepGraphon& w);

struct RegularityReport {
  std::vector<double> per_block_mean_rooted;
  double t = 0.0;
  bool is_regular = false;
  double max_deviation = 0.0;
};

RegularityReport is_H_regular(const Motif& m, const StepGraphon& w,
                              double tol = kDefaultRegularityTolerance);

/// First-projection covariance of the label U-statistic kernel, from
/// vertex-join densities. Requires at least one edge.
double xi1(const Motif& m, const StepGraphon& w);

/// Limiting share of Var[Delta] carried by Delta_1 when n rho^{m1(H)} -> c.
/// Throws std::domain_error when W is H-regular.
double kappa(const Motif& m, const StepGraphon& w, double c);

/// Closed form of kappa for strictly strongly balanced motifs.
/// Throws std::invalid_argument if H is not strictly strongly balanced and
/// std::domain_error when W is H-regular.
double kappa_strictly_strongly_balanced(const Motif& m, const StepGraphon& w, double c);

}  // namespace sgf
