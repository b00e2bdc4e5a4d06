#include "sgf/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sgf {

StepGraphon::StepGraphon(std::vector<double> block_measures, std::vector<std::vector<double>> values)
    : pi_(std::move(block_measures)) {
  const std::size_t k = pi_.size();
  if (k == 0) throw std::invalid_argument("graphon needs at least one block");
  double total = 0.0;
  for (double p : pi_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("block measures must be positive");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("block measures must sum to 1");
  if (values.size() != k) throw std::invalid_argument("value matrix must be K x K");
  values_.resize(k * k);
  for (std::size_t b = 0; b < k; ++b) {
    if (values[b].size() != k) throw std::invalid_argument("value matrix must be K x K");
    for (std::size_t c = 0; c < k; ++c) {
      const double v = values[b][c];
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("graphon values must lie in [0, 1]");
      values_[b * k + c] = v;
    }
  }
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t c = 0; c < b; ++c) {
      if (values_[b * k + c] != values_[c * k + b]) {
        throw std::invalid_argument("graphon value matrix must be symmetric");
      }
    }
  }
  if (!(edge_density() > 0.0)) throw std::invalid_argument("graphon edge density must be positive");
  cumulative_.resize(k);
  std::partial_sum(pi_.begin(), pi_.end(), cumulative_.begin());
}

StepGraphon StepGraphon::constant(double p) { return StepGraphon({1.0}, {{p}}); }

std::vector<std::vector<double>> StepGraphon::values() const {
  const std::size_t k = pi_.size();
  std::vector<std::vector<double>> out(k, std::vector<double>(k));
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t c = 0; c < k; ++c) out[b][c] = value(b, c);
  }
  return out;
}

double StepGraphon::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double StepGraphon::edge_density() const {
  double t = 0.0;
  for (std::size_t b = 0; b < pi_.size(); ++b) {
    for (std::size_t c = 0; c < pi_.size(); ++c) t += pi_[b] * pi_[c] * values_[b * pi_.size() + c];
  }
  return t;
}

std::size_t StepGraphon::block_of(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto b = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(b, pi_.size() - 1);
}

std::optional<StepGraphon> named_graphon(std::string_view name) {
  if (name == "W_sym") return StepGraphon({0.5, 0.5}, {{0.8, 0.2}, {0.2, 0.8}});
  if (name == "W_asym") return StepGraphon({0.5, 0.5}, {{0.9, 0.3}, {0.3, 0.1}});
  constexpr std::string_view prefix = "const:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string text(name.substr(prefix.size()));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(text, &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != text.size()) return std::nullopt;
    return StepGraphon::constant(p);
  }
  return std::nullopt;
}

namespace {

// Sum over block assignments of the free vertices of
//   prod_{free a} pi(beta_a) * prod_{(a,b) in E} W(beta_a, beta_b).
class AssignmentSum {
 public:
  AssignmentSum(const Motif& m, const BlockPins& pinned, const StepGraphon& w, double cap)
      : w_(w), k_(m.vertex_count()) {
    fixed_.assign(static_cast<std::size_t>(k_), -1);
    int free_count = 0;
    for (const auto& [v, b] : pinned) {
      if (v < 0 || v >= k_) throw std::out_of_range("pinned vertex out of range");
      if (b >= w.block_count()) throw std::out_of_range("pinned block out of range");
      fixed_[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
    for (int v = 0; v < k_; ++v) {
      if (fixed_[static_cast<std::size_t>(v)] < 0) ++free_count;
    }
    if (std::pow(static_cast<double>(w.block_count()), free_count) > cap) {
      throw std::length_error("motif too large for exact block-assignment sum");
    }
    earlier_.resize(static_cast<std::size_t>(k_));
    for (const auto& [a, b] : m.edges()) earlier_[static_cast<std::size_t>(b)].push_back(a);
    beta_.assign(static_cast<std::size_t>(k_), 0);
  }

  double run() { return visit(0); }

 private:
  double visit(int v) {
    if (v == k_) return 1.0;
    const auto idx = static_cast<std::size_t>(v);
    auto step = [&](std::size_t b, double weight) {
      for (int u : earlier_[idx]) {
        weight *= w_.value(beta_[static_cast<std::size_t>(u)], b);
        if (weight == 0.0) return 0.0;
      }
      beta_[idx] = b;
      return weight * visit(v + 1);
    };
    if (fixed_[idx] >= 0) return step(static_cast<std::size_t>(fixed_[idx]), 1.0);
    double total = 0.0;
    for (std::size_t b = 0; b < w_.block_count(); ++b) total += step(b, w_.measure(b));
    return total;
  }

  const StepGraphon& w_;
  int k_;
  std::vector<int> fixed_;
  std::vector<std::vector<int>> earlier_;
  std::vector<std::size_t> beta_;
};

std::uint64_t factorial_u64(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

double factorial_d(int k) { return static_cast<double>(factorial_u64(k)); }

}  // namespace

double hom_density(const Motif& m, const StepGraphon& w, double max_assignments) {
  return AssignmentSum(m, {}, w, max_assignments).run();
}

double multipoint_density(const Motif& m, const BlockPins& pinned, const StepGraphon& w,
                          double max_assignments) {
  return AssignmentSum(m, pinned, w, max_assignments).run();
}

double rooted_density(const Motif& m, int vertex, std::size_t block, const StepGraphon& w) {
  return multipoint_density(m, {{vertex, block}}, w);
}

double mean_rooted_density(const Motif& m, std::size_t block, const StepGraphon& w) {
  double sum = 0.0;
  for (int a = 0; a < m.vertex_count(); ++a) sum += rooted_density(m, a, block, w);
  return sum / m.vertex_count();
}

std::vector<double> degree_function(const StepGraphon& w) {
  std::vector<double> d(w.block_count(), 0.0);
  for (std::size_t b = 0; b < w.block_count(); ++b) {
    for (std::size_t c = 0; c < w.block_count(); ++c) d[b] += w.measure(c) * w.value(b, c);
  }
  return d;
}

RegularityReport is_H_regular(const Motif& m, const StepGraphon& w, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("regularity tolerance must be positive");
  RegularityReport r;
  r.t = hom_density(m, w);
  for (std::size_t b = 0; b < w.block_count(); ++b) {
    const double mean = mean_rooted_density(m, b, w);
    r.per_block_mean_rooted.push_back(mean);
    r.max_deviation = std::max(r.max_deviation, std::fabs(mean - r.t));
  }
  r.is_regular = r.max_deviation <= tol;
  return r;
}

double xi1(const Motif& m, const StepGraphon& w) {
  if (m.edge_count() < 1) throw std::invalid_argument("xi1 needs a motif with an edge");
  const int k = m.vertex_count();
  const double t = hom_density(m, w);
  // H(+)_{a,b}H and H(+)_{b,a}H are isomorphic.
  double join_sum = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      const double tj = hom_density(vertex_join(m, a, b), w);
      join_sum += (a == b) ? tj : 2.0 * tj;
    }
  }
  const double copies = factorial_d(k) / static_cast<double>(automorphism_count(m));
  const double kk = static_cast<double>(k) * k;
  return copies * copies / kk * (join_sum - kk * t * t);
}

double kappa(const Motif& m, const StepGraphon& w, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("kappa needs c > 0");
  if (is_H_regular(m, w).is_regular) {
    throw std::domain_error("critical constant undefined in regular case");
  }
  const int k = m.vertex_count();
  const double kf = factorial_d(k);
  const double label_part = static_cast<double>(k) * k / (kf * kf) * xi1(m, w);
  const DensityProfile profile = density_exponents(m);
  double edge_part = 0.0;
  for (const Motif& f : profile.m1_maximizers) {
    const JoinCatalog catalog = join_catalog(m, f);
    double inner = 0.0;
    for (const auto& cls : catalog.unions) {
      inner += static_cast<double>(cls.eta) * hom_density(cls.union_graph, w);
    }
    const int vf = f.vertex_count();
    edge_part += inner / (std::pow(c, vf - 1) * factorial_d(2 * k - vf));
  }
  return 1.0 - label_part / (label_part + edge_part);
}

double kappa_strictly_strongly_balanced(const Motif& m, const StepGraphon& w, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("kappa needs c > 0");
  if (!density_exponents(m).strictly_strongly_balanced) {
    throw std::invalid_argument("closed-form kappa needs a strictly strongly balanced motif");
  }
  if (is_H_regular(m, w).is_regular) {
    throw std::domain_error("critical constant undefined in regular case");
  }
  const int k = m.vertex_count();
  const double t_over_aut = hom_density(m, w) / static_cast<double>(automorphism_count(m));
  const double km1 = factorial_d(k - 1);
  const double label = std::pow(c, k - 1) * xi1(m, w) / (km1 * km1);
  return t_over_aut / (t_over_aut + label);
}

}  // namespace sgf
