#include "sgf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgf {

std::vector<std::size_t> Latents::occupancy(std::size_t block_count) const {
  std::vector<std::size_t> counts(block_count, 0);
  for (std::uint32_t b : blocks) {
    if (b >= block_count) throw std::out_of_range("latent block outside graphon");
    ++counts[b];
  }
  return counts;
}

Latents draw_latents(const StepGraphon& w, std::size_t n, Xoshiro256& rng) {
  Latents l;
  l.coords.resize(n);
  l.blocks.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    l.coords[i] = u;
    l.blocks[i] = static_cast<std::uint32_t>(w.block_of(u));
  }
  return l;
}

namespace {

// Row-major decode of a linear index over pairs i < j of a block's members.
std::pair<std::size_t, std::size_t> decode_within(std::uint64_t idx) {
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (j * (j - 1) / 2 > idx) --j;
  while ((j + 1) * j / 2 <= idx) ++j;
  return {static_cast<std::size_t>(idx - j * (j - 1) / 2), static_cast<std::size_t>(j)};
}

void check_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
}

}  // namespace

std::vector<VertexPair> draw_edges(const StepGraphon& w, const Latents& latents, double rho,
                                   Xoshiro256& rng) {
  check_rho(rho);
  const std::size_t k = w.block_count();
  std::vector<std::vector<VertexId>> members(k);
  for (std::size_t i = 0; i < latents.size(); ++i) {
    members.at(latents.blocks[i]).push_back(static_cast<VertexId>(i));
  }

  std::vector<VertexPair> edges;
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t c = b; c < k; ++c) {
      const auto& mb = members[b];
      const auto& mc = members[c];
      const std::uint64_t total = (b == c) ? mb.size() * (mb.size() - (mb.empty() ? 0 : 1)) / 2
                                           : static_cast<std::uint64_t>(mb.size()) * mc.size();
      const double p = rho * w.value(b, c);
      if (total == 0 || p <= 0.0) continue;

      auto emit = [&](std::uint64_t idx) {
        VertexId u = 0, v = 0;
        if (b == c) {
          const auto [i, j] = decode_within(idx);
          u = mb[i];
          v = mb[j];
        } else {
          u = mb[static_cast<std::size_t>(idx / mc.size())];
          v = mc[static_cast<std::size_t>(idx % mc.size())];
        }
        edges.emplace_back(std::min(u, v), std::max(u, v));
      };

      if (p >= 1.0) {
        for (std::uint64_t idx = 0; idx < total; ++idx) emit(idx);
        continue;
      }
      const double log_q = std::log1p(-p);
      std::uint64_t idx = 0;
      for (;;) {
        const double skip = std::floor(std::log(rng.uniform_open_low()) / log_q);
        if (skip >= static_cast<double>(total - idx)) break;
        idx += static_cast<std::uint64_t>(skip);
        emit(idx);
        if (++idx >= total) break;
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

SampledGraph sample(const StepGraphon& w, std::size_t n, double rho, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample needs n >= 1");
  check_rho(rho);
  Xoshiro256 rng(seed);
  SampledGraph g;
  g.n = n;
  g.rho = rho;
  g.seed = seed;
  g.latents = draw_latents(w, n, rng);
  g.edges = draw_edges(w, g.latents, rho, rng);
  return g;
}

SampledGraph sample_given_latents(const StepGraphon& w, const Latents& latents, double rho,
                                  std::uint64_t seed) {
  check_rho(rho);
  Xoshiro256 rng(seed);
  SampledGraph g;
  g.n = latents.size();
  g.rho = rho;
  g.seed = seed;
  g.latents = latents;
  g.edges = draw_edges(w, latents, rho, rng);
  return g;
}

void SparsitySchedule::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("schedule amplitude must be positive");
  }
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw std::invalid_argument("schedule exponent must be nonnegative");
  }
}

double SparsitySchedule::rho(std::size_t n) const {
  if (n < 1) throw std::invalid_argument("schedule needs n >= 1");
  validate();
  return std::min(1.0, amplitude * std::pow(static_cast<double>(n), -exponent));
}

double schedule_rho(const SparsitySchedule& s, std::size_t n) { return s.rho(n); }

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::below_containment: return "below_containment";
    case Regime::at_containment: return "at_containment";
    case Regime::edge_dominated: return "edge_dominated";
    case Regime::critical: return "critical";
    case Regime::label_dominated: return "label_dominated";
    case Regime::dense: return "dense";
  }
  return "unknown";
}

Regime classify_regime(const Motif& m, const Rational& gamma) {
  if (gamma < Rational(0)) throw std::invalid_argument("sparsity exponent must be nonnegative");
  const DensityProfile p = density_exponents(m);
  const Rational containment = p.m.reciprocal();
  const Rational critical = p.m1.reciprocal();
  if (gamma == Rational(0)) return Regime::dense;
  if (gamma > containment) return Regime::below_containment;
  if (gamma == containment) return Regime::at_containment;
  if (gamma > critical) return Regime::edge_dominated;
  if (gamma == critical) return Regime::critical;
  return Regime::label_dominated;
}

Regime classify_regime(const Motif& m, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("sparsity exponent must be nonnegative");
  if (auto exact = Rational::approximate(gamma, 1'000'000, 1e-12)) return classify_regime(m, *exact);
  const DensityProfile p = density_exponents(m);
  const double containment = p.m.reciprocal().to_double();
  const double critical = p.m1.reciprocal().to_double();
  if (gamma > containment) return Regime::below_containment;
  if (gamma > critical) return Regime::edge_dominated;
  return Regime::label_dominated;
}

}  // namespace sgf
