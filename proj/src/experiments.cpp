#include "sgf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "sgf/rng.hpp"

namespace sgf {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::containment: return "containment";
    case ExperimentKind::clt: return "clt";
    case ExperimentKind::variance_ratio: return "variance_ratio";
    case ExperimentKind::critical_kappa: return "critical_kappa";
    case ExperimentKind::conditional_clt: return "conditional_clt";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::containment, ExperimentKind::clt, ExperimentKind::variance_ratio,
                 ExperimentKind::critical_kappa, ExperimentKind::conditional_clt}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

SparsitySchedule ExperimentConfig::effective_schedule() const {
  if (kind != ExperimentKind::critical_kappa) return schedule;
  if (!critical_c) throw std::invalid_argument("critical_kappa needs critical_c");
  const double inv_m1 = density_exponents(motif).m1.reciprocal().to_double();
  return SparsitySchedule{std::pow(*critical_c, inv_m1), inv_m1};
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (n_values.empty()) throw std::invalid_argument("n_values must be nonempty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw std::invalid_argument("every n must be at least 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("n_values must be strictly ascending");
    }
  }
  if (motif.edge_count() < 1) throw std::invalid_argument("experiments need a motif with an edge");

  if (kind == ExperimentKind::critical_kappa) {
    if (!critical_c || !(*critical_c > 0.0) || !std::isfinite(*critical_c)) {
      throw std::invalid_argument("critical_kappa needs a positive critical_c");
    }
    if (is_H_regular(motif, graphon).is_regular) {
      throw std::invalid_argument("critical constant undefined in regular case");
    }
    return;
  }
  schedule.validate();
  if (kind == ExperimentKind::containment) return;
  const Regime r = classify_regime(motif, schedule.exponent);
  if (r == Regime::below_containment || r == Regime::at_containment) {
    throw std::invalid_argument("schedule lies at or below the containment threshold");
  }
}

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t cell_index) {
  return derive_seed(cfg.seed, cell_index);
}

namespace {

std::size_t thread_count(const ExperimentConfig& cfg) {
  std::size_t t = cfg.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return std::min(t, cfg.replicates);
}

// Fills rows[r] = job(r) for r in [0, rows.size()) on a small pool. Every
// slot depends only on r, so the result is the same for any thread count.
template <typename Job>
void parallel_fill(std::vector<ReplicateRow>& rows, std::size_t threads, Job job) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= rows.size()) return;
      try {
        rows[r] = job(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(rows.size());
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

std::optional<NormalityReport> standardized_ks(const std::vector<double>& xs) {
  if (xs.size() < kMinKsSamples) return std::nullopt;
  const double sd = sample_sd(xs);
  if (!(sd > 0.0)) return std::nullopt;
  return ks_test(standardize(xs, mean(xs), sd));
}

CellSummary summarize(const std::vector<ReplicateRow>& rows) {
  CellSummary s;
  s.replicates = rows.size();
  std::vector<double> x, d1, d2;
  x.reserve(rows.size());
  d1.reserve(rows.size());
  d2.reserve(rows.size());
  std::size_t hit = 0;
  for (const auto& row : rows) {
    x.push_back(static_cast<double>(row.d.x));
    d1.push_back(row.d.delta1);
    d2.push_back(row.d.delta2);
    if (row.d.x > 0) ++hit;
  }
  s.containment_fraction = static_cast<double>(hit) / static_cast<double>(rows.size());
  s.mean_x = mean(x);
  s.mean_delta1 = mean(d1);
  s.mean_delta2 = mean(d2);
  if (rows.size() >= 2) {
    s.var_x = sample_variance(x);
    s.mean_x_se = mean_standard_error(x);
    s.var_delta1 = sample_variance(d1);
    s.var_delta2 = sample_variance(d2);
    s.cov_delta12 = covariance(d1, d2);
    s.cov_delta12_se = covariance_standard_error(d1, d2);
    if (s.var_delta1 > 0.0 && s.var_delta2 > 0.0) s.corr_delta12 = correlation(d1, d2);
  }
  if (rows.size() >= kMinRatioSamples && s.var_delta1 + s.var_delta2 > 0.0) {
    s.ratio = variance_ratio(d1, d2);
  }
  s.ks_z = standardized_ks(x);
  s.ks_delta1 = standardized_ks(d1);
  s.ks_delta2 = standardized_ks(d2);
  return s;
}

void require_kind(const ExperimentConfig& cfg, ExperimentKind k) {
  if (cfg.kind != k) {
    throw std::invalid_argument("config kind is " + std::string(to_string(cfg.kind)) +
                                ", expected " + std::string(to_string(k)));
  }
  cfg.validate();
}

// Unconditional replicates: fresh latents and edges per replicate.
ExperimentResult run_unconditional(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = cfg;
  const SparsitySchedule schedule = cfg.effective_schedule();
  const std::size_t threads = thread_count(cfg);
  std::optional<double> kappa_ref;
  if (cfg.kind == ExperimentKind::critical_kappa) {
    kappa_ref = kappa(cfg.motif, cfg.graphon, *cfg.critical_c);
  }
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    const std::size_t n = cfg.n_values[i];
    const double rho = schedule.rho(n);
    const std::uint64_t cseed = cell_seed(cfg, i);
    std::vector<ReplicateRow> rows(cfg.replicates);
    parallel_fill(rows, threads, [&](std::size_t r) {
      ReplicateRow row;
      row.seed = derive_seed(cseed, r);
      row.n = n;
      row.rho = rho;
      row.d = decompose(sample(cfg.graphon, n, rho, row.seed), cfg.motif, cfg.graphon);
      return row;
    });
    CellSummary s = summarize(rows);
    s.n = n;
    s.rho = rho;
    s.cell_seed = cseed;
    s.expected = rows.front().d.expected;
    s.kappa = kappa_ref;
    if (cfg.kind == ExperimentKind::clt && !(s.var_x > 0.0)) {
      throw std::domain_error("zero empirical variance of X at n = " + std::to_string(n));
    }
    result.cells.push_back(std::move(s));
    if (cfg.keep_replicates) result.replicate_rows.push_back(std::move(rows));
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

ExperimentResult run_containment(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::containment);
  return run_unconditional(cfg);
}

ExperimentResult run_clt(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::clt);
  return run_unconditional(cfg);
}

ExperimentResult run_variance_ratio(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::variance_ratio);
  return run_unconditional(cfg);
}

ExperimentResult run_critical_kappa(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::critical_kappa);
  return run_unconditional(cfg);
}

ExperimentResult run_conditional_clt(const ExperimentConfig& cfg) {
  require_kind(cfg, ExperimentKind::conditional_clt);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = cfg;
  const std::size_t threads = thread_count(cfg);
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    const std::size_t n = cfg.n_values[i];
    const double rho = cfg.schedule.rho(n);
    const std::uint64_t cseed = cell_seed(cfg, i);
    Xoshiro256 latent_rng(derive_seed(cseed, kLatentStream));
    const Latents latents = draw_latents(cfg.graphon, n, latent_rng);
    const double cond = conditional_expected_count(latents, cfg.motif, cfg.graphon, rho);
    std::vector<ReplicateRow> rows(cfg.replicates);
    parallel_fill(rows, threads, [&](std::size_t r) {
      ReplicateRow row;
      row.seed = derive_seed(cseed, r);
      row.n = n;
      row.rho = rho;
      const SampledGraph g = sample_given_latents(cfg.graphon, latents, rho, row.seed);
      row.d = decompose(count(g, cfg.motif), g, cfg.motif, cfg.graphon);
      return row;
    });
    CellSummary s = summarize(rows);
    s.n = n;
    s.rho = rho;
    s.cell_seed = cseed;
    s.expected = rows.front().d.expected;
    s.conditional_expected = cond;
    if (n <= kMaxOracleVertices && cfg.motif.vertex_count() <= kMaxOracleMotifVertices) {
      s.conditional_variance_oracle = conditional_variance(latents, cfg.motif, cfg.graphon, rho);
    }
    result.cells.push_back(std::move(s));
    if (cfg.keep_replicates) result.replicate_rows.push_back(std::move(rows));
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::containment: return run_containment(cfg);
    case ExperimentKind::clt: return run_clt(cfg);
    case ExperimentKind::variance_ratio: return run_variance_ratio(cfg);
    case ExperimentKind::critical_kappa: return run_critical_kappa(cfg);
    case ExperimentKind::conditional_clt: return run_conditional_clt(cfg);
  }
  throw std::invalid_argument("unknown experiment kind");
}

}  // namespace sgf
