#include "sgf/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sgf {

std::uint64_t count_triangles(const Graph& g) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  auto before = [&](VertexId a, VertexId b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da < db || (da == db && a < b);
  };
  // Orient each edge toward the higher (degree, id) endpoint; every triangle
  // is then seen exactly once from its lowest vertex.
  std::vector<std::vector<VertexId>> out(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (before(u, v)) out[u].push_back(v);
    }
  }
  std::uint64_t total = 0;
  for (VertexId u = 0; u < n; ++u) {
    const auto& ou = out[u];
    for (VertexId v : ou) {
      const auto& ov = out[v];
      auto i = ou.begin();
      auto j = ov.begin();
      while (i != ou.end() && j != ov.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++total;
          ++i;
          ++j;
        }
      }
    }
  }
  return total;
}

std::uint64_t count(const Graph& g, const Motif& m) {
  if (m.vertex_count() == 2 && m.edge_count() == 1) return g.edge_count();
  if (m.vertex_count() == 3 && m.edge_count() == 3) return count_triangles(g);
  return count_embeddings(g, m);
}

std::uint64_t count(const SampledGraph& g, const Motif& m) {
  if (m.vertex_count() == 2 && m.edge_count() == 1) return g.edges.size();
  return count(g.adjacency(), m);
}

namespace {

long double falling(std::size_t n, int k) {
  long double out = 1.0L;
  for (int i = 0; i < k; ++i) {
    if (n < static_cast<std::size_t>(i)) return 0.0L;
    out *= static_cast<long double>(n - static_cast<std::size_t>(i));
  }
  return out;
}

long double binomial(std::size_t n, int k) {
  long double out = 1.0L;
  for (int i = 0; i < k; ++i) {
    out *= static_cast<long double>(n - static_cast<std::size_t>(i));
    out /= static_cast<long double>(i + 1);
  }
  return out;
}

// S(U) = sum_beta prod_E W * prod_b (n_b)_(c_b). Placing vertex v into block b
// while c_b earlier vertices already sit there contributes a factor n_b - c_b.
class OccupancySum {
 public:
  OccupancySum(const Motif& m, const StepGraphon& w, const std::vector<std::size_t>& occ)
      : w_(w), occ_(occ), k_(m.vertex_count()) {
    earlier_.resize(static_cast<std::size_t>(k_));
    for (const auto& [a, b] : m.edges()) earlier_[static_cast<std::size_t>(b)].push_back(a);
    beta_.assign(static_cast<std::size_t>(k_), 0);
    used_.assign(w.block_count(), 0);
  }

  long double run() { return visit(0); }

 private:
  long double visit(int v) {
    if (v == k_) return 1.0L;
    const auto idx = static_cast<std::size_t>(v);
    long double total = 0.0L;
    for (std::size_t b = 0; b < w_.block_count(); ++b) {
      if (used_[b] >= occ_[b]) continue;
      long double weight = static_cast<long double>(occ_[b] - used_[b]);
      for (int u : earlier_[idx]) weight *= w_.value(beta_[static_cast<std::size_t>(u)], b);
      if (weight == 0.0L) continue;
      beta_[idx] = b;
      ++used_[b];
      total += weight * visit(v + 1);
      --used_[b];
    }
    return total;
  }

  const StepGraphon& w_;
  const std::vector<std::size_t>& occ_;
  int k_;
  std::vector<std::vector<int>> earlier_;
  std::vector<std::size_t> beta_;
  std::vector<std::size_t> used_;
};

long double occupancy_sum(const std::vector<std::size_t>& occupancy, const Motif& m,
                          const StepGraphon& w) {
  if (occupancy.size() != w.block_count()) {
    throw std::invalid_argument("occupancy vector does not match the graphon's blocks");
  }
  return OccupancySum(m, w, occupancy).run();
}

std::size_t total_of(const std::vector<std::size_t>& occupancy) {
  std::size_t n = 0;
  for (std::size_t c : occupancy) n += c;
  return n;
}

}  // namespace

double expected_count(const Motif& m, const StepGraphon& w, std::size_t n, double rho) {
  const long double copies = falling(n, m.vertex_count()) / automorphism_count(m);
  return static_cast<double>(copies * std::pow(static_cast<long double>(rho), m.edge_count()) *
                             hom_density(m, w));
}

double conditional_expected_count(const std::vector<std::size_t>& occupancy, const Motif& m,
                                  const StepGraphon& w, double rho) {
  const long double s = occupancy_sum(occupancy, m, w);
  return static_cast<double>(std::pow(static_cast<long double>(rho), m.edge_count()) * s /
                             automorphism_count(m));
}

double conditional_expected_count(const Latents& latents, const Motif& m, const StepGraphon& w,
                                  double rho) {
  return conditional_expected_count(latents.occupancy(w.block_count()), m, w, rho);
}

Decomposition decompose(std::uint64_t x, const SampledGraph& g, const Motif& m,
                        const StepGraphon& w) {
  Decomposition d;
  d.x = x;
  d.expected = expected_count(m, w, g.n, g.rho);
  d.conditional_expected = conditional_expected_count(g.latents, m, w, g.rho);
  const double xd = static_cast<double>(x);
  d.delta = xd - d.expected;
  d.delta1 = xd - d.conditional_expected;
  d.delta2 = d.conditional_expected - d.expected;
  return d;
}

Decomposition decompose(const SampledGraph& g, const Motif& m, const StepGraphon& w) {
  return decompose(count(g, m), g, m, w);
}

double ustat_T(const Latents& latents, const Motif& m, const StepGraphon& w) {
  const std::vector<std::size_t> occ = latents.occupancy(w.block_count());
  const std::size_t n = total_of(occ);
  const int k = m.vertex_count();
  if (n < static_cast<std::size_t>(k)) throw std::invalid_argument("ustat_T needs n >= |V(H)|");
  const long double fall = falling(n, k);
  const long double s = occupancy_sum(occ, m, w);
  const long double centered = s - fall * hom_density(m, w);
  // T = (1 / C(n,k)) * sum over k-subsets of the centered kernel average.
  return static_cast<double>(centered / (binomial(n, k) * automorphism_count(m)));
}

namespace {

__extension__ using Mask128 = unsigned __int128;

struct Copy {
  std::uint32_t vertices = 0;
  Mask128 edges = 0;
};

// Every copy of H inside K_n, as vertex and global edge masks.
std::vector<Copy> copies_in_kn(const Motif& m, std::size_t n) {
  const int k = m.vertex_count();
  if (n > kMaxOracleVertices || k > kMaxOracleMotifVertices) {
    throw std::length_error("instance too large for the pair-enumeration oracle");
  }
  std::vector<Copy> out;
  if (n < static_cast<std::size_t>(k)) return out;
  const std::vector<std::uint64_t> local = labeled_copy_masks(m);
  std::vector<std::pair<int, int>> local_pairs;
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < j; ++i) local_pairs.emplace_back(i, j);
  }
  const auto nn = static_cast<std::uint32_t>(n);
  for (std::uint32_t subset = 0; subset < (1u << nn); ++subset) {
    if (std::popcount(subset) != k) continue;
    std::vector<int> members;
    for (int v = 0; v < static_cast<int>(n); ++v) {
      if ((subset >> v) & 1u) members.push_back(v);
    }
    for (std::uint64_t mask : local) {
      Copy c;
      c.vertices = subset;
      for (std::size_t p = 0; p < local_pairs.size(); ++p) {
        if (!((mask >> p) & 1u)) continue;
        const int a = members[static_cast<std::size_t>(local_pairs[p].first)];
        const int b = members[static_cast<std::size_t>(local_pairs[p].second)];
        c.edges |= Mask128{1} << pair_index(a, b);
      }
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> pair_table(std::size_t n) {
  std::vector<std::pair<int, int>> table;
  for (int j = 1; j < static_cast<int>(n); ++j) {
    for (int i = 0; i < j; ++i) table.emplace_back(i, j);
  }
  return table;
}

template <typename F>
void for_each_bit(Mask128 mask, F&& f) {
  while (mask != 0) {
    const auto lo = static_cast<std::uint64_t>(mask);
    const int bit = lo != 0 ? std::countr_zero(lo)
                            : 64 + std::countr_zero(static_cast<std::uint64_t>(mask >> 64));
    f(bit);
    mask &= mask - 1;
  }
}

// t(R, W) for the concrete union graph, keyed by the union relabeled onto
// 0..v-1 in increasing vertex order.
class UnionDensity {
 public:
  UnionDensity(const StepGraphon& w, std::size_t n) : w_(w), pairs_(pair_table(n)) {}

  double operator()(std::uint32_t vertices, Mask128 edges) {
    std::array<int, 32> rank{};
    int v_count = 0;
    for (int v = 0; v < 32; ++v) {
      if ((vertices >> v) & 1u) rank[static_cast<std::size_t>(v)] = v_count++;
    }
    std::uint64_t local = 0;
    for_each_bit(edges, [&](int bit) {
      const auto [a, b] = pairs_[static_cast<std::size_t>(bit)];
      local |= std::uint64_t{1} << pair_index(rank[static_cast<std::size_t>(a)],
                                              rank[static_cast<std::size_t>(b)]);
    });
    const std::uint64_t key = (static_cast<std::uint64_t>(v_count) << 56) | local;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double t = hom_density(motif_from_mask(v_count, local), w_);
    memo_.emplace(key, t);
    return t;
  }

 private:
  const StepGraphon& w_;
  std::vector<std::pair<int, int>> pairs_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

double exact_variance(const Motif& m, const StepGraphon& w, std::size_t n, double rho) {
  const std::vector<Copy> copies = copies_in_kn(m, n);
  const int e = m.edge_count();
  const double t = hom_density(m, w);
  const double base = std::pow(rho, 2 * e) * t * t;
  UnionDensity density(w, n);
  long double var = 0.0L;
  for (const Copy& s : copies) {
    for (const Copy& c : copies) {
      if ((s.vertices & c.vertices) == 0) continue;
      const Mask128 shared = s.edges & c.edges;
      int shared_edges = 0;
      for_each_bit(shared, [&](int) { ++shared_edges; });
      const double tu = density(s.vertices | c.vertices, s.edges | c.edges);
      var += std::pow(rho, 2 * e - shared_edges) * tu - base;
    }
  }
  return static_cast<double>(var);
}

double conditional_variance(const Latents& latents, const Motif& m, const StepGraphon& w,
                            double rho) {
  const std::size_t n = latents.size();
  const std::vector<Copy> copies = copies_in_kn(m, n);
  const auto pairs = pair_table(n);
  std::vector<double> p(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    p[i] = rho * w.value(latents.blocks.at(static_cast<std::size_t>(a)),
                         latents.blocks.at(static_cast<std::size_t>(b)));
  }
  auto product = [&](Mask128 edges) {
    double out = 1.0;
    for_each_bit(edges, [&](int bit) { out *= p[static_cast<std::size_t>(bit)]; });
    return out;
  };
  std::vector<double> single(copies.size());
  for (std::size_t i = 0; i < copies.size(); ++i) single[i] = product(copies[i].edges);
  long double var = 0.0L;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    for (std::size_t j = 0; j < copies.size(); ++j) {
      if ((copies[i].edges & copies[j].edges) == 0) continue;
      var += product(copies[i].edges | copies[j].edges) - single[i] * single[j];
    }
  }
  return static_cast<double>(var);
}

VarianceOrders mean_variance_orders(const Motif& m, double n, double rho) {
  if (m.edge_count() < 1) throw std::invalid_argument("variance orders need a motif with an edge");
  const int k = m.vertex_count();
  if (k > kMaxExponentVertices) throw std::length_error("motif too large for subset enumeration");
  const int e = m.edge_count();
  VarianceOrders out;
  out.mean_order = std::pow(n, k) * std::pow(rho, e);
  std::uint32_t best_var = 0, best_phi = 0;
  out.phi = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const Motif f = m.induced(mask);
    const int vf = f.vertex_count(), ef = f.edge_count();
    const double var = std::pow(n, 2 * k - vf) * std::pow(rho, 2 * e - ef);
    const double phi = std::pow(n, vf) * std::pow(rho, ef);
    if (var > out.var_order) {
      out.var_order = var;
      best_var = mask;
    }
    if (phi < out.phi) {
      out.phi = phi;
      best_phi = mask;
    }
  }
  out.var_argmax = canonical_representative(m.induced(best_var));
  out.phi_argmin = canonical_representative(m.induced(best_phi));
  return out;
}

}  // namespace sgf
