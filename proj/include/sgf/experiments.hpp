#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sgf/counting.hpp"
#include "sgf/graphon.hpp"
#include "sgf/motif.hpp"
#include "sgf/sampler.hpp"
#include "sgf/stats.hpp"

namespace sgf {

enum class ExperimentKind { containment, clt, variance_ratio, critical_kappa, conditional_clt };

std::string_view to_string(ExperimentKind k);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::clt;
  Motif motif = Motif::complete(2);
  StepGraphon graphon = StepGraphon::constant(1.0);
  SparsitySchedule schedule;
  std::vector<std::size_t> n_values;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  /// n rho^m1 = c for critical_kappa; the schedule is derived from it.
  std::optional<double> critical_c;
  /// 0 means hardware concurrency. Never changes results.
  std::size_t threads = 0;
  /// Keep per-replicate rows in the result.
  bool keep_replicates = false;

  /// Throws std::invalid_argument on a malformed config or one whose regime
  /// violates the experiment's precondition.
  void validate() const;
  /// The schedule actually used: for critical_kappa, exponent 1/m1 and
  /// amplitude c^(1/m1); otherwise `schedule`.
  SparsitySchedule effective_schedule() const;
};

struct ReplicateRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double rho = 0.0;
  Decomposition d;
};

struct CellSummary {
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t replicates = 0;
  std::uint64_t cell_seed = 0;

  double expected = 0.0;  ///< E[X]
  double mean_x = 0.0;
  double var_x = 0.0;
  double mean_x_se = 0.0;
  double containment_fraction = 0.0;  ///< share of replicates with X > 0

  double mean_delta1 = 0.0;
  double mean_delta2 = 0.0;
  double var_delta1 = 0.0;
  double var_delta2 = 0.0;
  double cov_delta12 = 0.0;
  double cov_delta12_se = 0.0;
  std::optional<double> corr_delta12;
  std::optional<VarianceRatio> ratio;

  /// Each standardized by its own empirical mean and sd.
  std::optional<NormalityReport> ks_z;
  std::optional<NormalityReport> ks_delta1;
  std::optional<NormalityReport> ks_delta2;

  std::optional<double> kappa;  ///< theoretical kappa at critical_c
  /// conditional_clt only: E[X | U] at the fixed latents, and the exact
  /// conditional variance when the oracle is feasible.
  std::optional<double> conditional_expected;
  std::optional<double> conditional_variance_oracle;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellSummary> cells;
  std::vector<std::vector<ReplicateRow>> replicate_rows;  ///< per cell, when kept
  double runtime_seconds = 0.0;  ///< not part of the serialized summary
};

/// Stream index of the fixed latents in run_conditional_clt; replicate
/// streams use indices below it.
inline constexpr std::uint64_t kLatentStream = 0xFFFF'FFFF'FFFF'FFFFull;

/// Seed of the n_values[i] cell: derive_seed(cfg.seed, i).
std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t cell_index);

ExperimentResult run_containment(const ExperimentConfig& cfg);
ExperimentResult run_clt(const ExperimentConfig& cfg);
ExperimentResult run_variance_ratio(const ExperimentConfig& cfg);
ExperimentResult run_critical_kappa(const ExperimentConfig& cfg);
ExperimentResult run_conditional_clt(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace sgf
