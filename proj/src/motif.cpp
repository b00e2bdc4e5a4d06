#include "sgf/motif.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace sgf {

namespace {

using Cells = std::vector<std::vector<int>>;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error(what);
  return out;
}

// Equitable refinement: split every cell by the vector of neighbor counts
// into the current cells, repeat until stable. Subcells are ordered by that
// vector, so the result is isomorphism-equivariant.
void refine(Cells& cells, const std::vector<std::uint32_t>& adj) {
  for (;;) {
    std::vector<std::uint32_t> cell_mask(cells.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) cell_mask[c] |= 1u << v;
    }
    Cells next;
    next.reserve(adj.size());
    bool split = false;
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> keyed;
      keyed.reserve(cell.size());
      for (int v : cell) {
        std::vector<int> sig(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
          sig[c] = std::popcount(adj[static_cast<std::size_t>(v)] & cell_mask[c]);
        }
        keyed.emplace_back(std::move(sig), v);
      }
      std::sort(keyed.begin(), keyed.end());
      std::size_t start = 0;
      for (std::size_t i = 1; i <= keyed.size(); ++i) {
        if (i == keyed.size() || keyed[i].first != keyed[start].first) {
          std::vector<int> sub;
          for (std::size_t j = start; j < i; ++j) sub.push_back(keyed[j].second);
          next.push_back(std::move(sub));
          if (i < keyed.size()) split = true;
          start = i;
        }
      }
    }
    cells = std::move(next);
    if (!split) return;
  }
}

std::vector<std::uint32_t> adjacency_of(const Motif& m) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(m.vertex_count()));
  for (int v = 0; v < m.vertex_count(); ++v) adj[static_cast<std::size_t>(v)] = m.neighbor_mask(v);
  return adj;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Motif& m) : n_(m.vertex_count()), adj_(adjacency_of(m)) {
    twins_.assign(static_cast<std::size_t>(n_), 0);
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (u == v) continue;
        const std::uint32_t nu = adj_[static_cast<std::size_t>(u)] & ~(1u << v);
        const std::uint32_t nv = adj_[static_cast<std::size_t>(v)] & ~(1u << u);
        if (nu == nv) twins_[static_cast<std::size_t>(u)] |= 1u << v;
      }
    }
    edge_count_ = m.edge_count();
  }

  CanonicalLabeling run() {
    Cells cells(1);
    for (int v = 0; v < n_; ++v) cells[0].push_back(v);
    search(std::move(cells));
    return {std::move(best_), std::move(best_order_)};
  }

 private:
  void search(Cells cells) {
    refine(cells, adj_);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() > 1) {
        target = c;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    // Swapping two twins is an automorphism that fixes everything already
    // individualized, so their subtrees yield the same certificates.
    std::uint32_t tried = 0;
    for (int v : cells[target]) {
      if (twins_[static_cast<std::size_t>(v)] & tried) continue;
      tried |= 1u << v;
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < target; ++c) child.push_back(cells[c]);
      child.push_back({v});
      std::vector<int> rest;
      for (int u : cells[target]) {
        if (u != v) rest.push_back(u);
      }
      child.push_back(std::move(rest));
      for (std::size_t c = target + 1; c < cells.size(); ++c) child.push_back(cells[c]);
      search(std::move(child));
    }
  }

  void leaf(const Cells& cells) {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n_));
    for (const auto& c : cells) order.push_back(c.front());
    CanonicalForm form;
    form.vertex_count = n_;
    form.edge_count = edge_count_;
    const int pairs = n_ * (n_ - 1) / 2;
    form.bits.assign(static_cast<std::size_t>((pairs + 63) / 64), 0);
    for (int j = 1; j < n_; ++j) {
      const std::uint32_t row = adj_[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
      for (int i = 0; i < j; ++i) {
        if ((row >> order[static_cast<std::size_t>(i)]) & 1u) {
          const int idx = pair_index(i, j);
          form.bits[static_cast<std::size_t>(idx / 64)] |= std::uint64_t{1} << (idx % 64);
        }
      }
    }
    if (!have_best_ || form > best_) {
      best_ = std::move(form);
      best_order_ = std::move(order);
      have_best_ = true;
    }
  }

  int n_;
  int edge_count_ = 0;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> twins_;
  bool have_best_ = false;
  CanonicalForm best_;
  std::vector<int> best_order_;
};

// Backtracking search for an automorphism extending the prescribed images.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Motif& m) : n_(m.vertex_count()), adj_(adjacency_of(m)) {
    Cells cells(1);
    for (int v = 0; v < n_; ++v) cells[0].push_back(v);
    refine(cells, adj_);
    color_.assign(static_cast<std::size_t>(n_), 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) color_[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }

  bool same_color(int a, int b) const {
    return color_[static_cast<std::size_t>(a)] == color_[static_cast<std::size_t>(b)];
  }

  // image[v] = -1 means free.
  bool exists(std::vector<int> image) {
    image_ = std::move(image);
    used_ = 0;
    order_.clear();
    std::uint32_t placed = 0;
    for (int v = 0; v < n_; ++v) {
      if (image_[static_cast<std::size_t>(v)] >= 0) {
        order_.push_back(v);
        placed |= 1u << v;
      }
    }
    while (static_cast<int>(order_.size()) < n_) {
      int best = -1;
      int best_links = -1;
      for (int v = 0; v < n_; ++v) {
        if ((placed >> v) & 1u) continue;
        const int links = std::popcount(adj_[static_cast<std::size_t>(v)] & placed);
        if (links > best_links) {
          best = v;
          best_links = links;
        }
      }
      order_.push_back(best);
      placed |= 1u << best;
    }
    return extend(0);
  }

 private:
  bool consistent(std::size_t depth, int v, int target) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const int w = order_[i];
      const int tw = image_[static_cast<std::size_t>(w)];
      const bool e1 = (adj_[static_cast<std::size_t>(v)] >> w) & 1u;
      const bool e2 = (adj_[static_cast<std::size_t>(target)] >> tw) & 1u;
      if (e1 != e2) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int v = order_[depth];
    const int fixed = image_[static_cast<std::size_t>(v)];
    if (fixed >= 0) {
      if ((used_ >> fixed) & 1u) return false;
      if (!same_color(v, fixed) || !consistent(depth, v, fixed)) return false;
      used_ |= 1u << fixed;
      const bool ok = extend(depth + 1);
      used_ &= ~(1u << fixed);
      return ok;
    }
    for (int t = 0; t < n_; ++t) {
      if ((used_ >> t) & 1u) continue;
      if (!same_color(v, t) || !consistent(depth, v, t)) continue;
      image_[static_cast<std::size_t>(v)] = t;
      used_ |= 1u << t;
      if (extend(depth + 1)) return true;
      used_ &= ~(1u << t);
      image_[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  int n_;
  std::vector<std::uint32_t> adj_;
  std::vector<int> color_;
  std::vector<int> image_;
  std::vector<int> order_;
  std::uint32_t used_ = 0;
};

std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f = checked_mul(f, static_cast<std::uint64_t>(i), "factorial overflow");
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Motif

Motif::Motif(int vertex_count, std::vector<MotifEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1 || vertex_count_ > kMaxMotifVertices) {
    throw std::invalid_argument("motif vertex count must be in [1, " +
                                std::to_string(kMaxMotifVertices) + "]");
  }
  adjacency_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_) {
      throw std::invalid_argument("motif edge endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("motif has a self-loop");
    if (a > b) std::swap(a, b);
    if (adjacent(a, b)) throw std::invalid_argument("motif has a duplicate edge");
    adjacency_[static_cast<std::size_t>(a)] |= 1u << b;
    adjacency_[static_cast<std::size_t>(b)] |= 1u << a;
  }
  std::sort(edges_.begin(), edges_.end());
}

Motif Motif::complete(int k) {
  std::vector<MotifEdge> e;
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < j; ++i) e.emplace_back(i, j);
  }
  return Motif(k, std::move(e));
}

Motif Motif::path(int k) {
  std::vector<MotifEdge> e;
  for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
  return Motif(k, std::move(e));
}

Motif Motif::cycle(int k) {
  if (k < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<MotifEdge> e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return Motif(k, std::move(e));
}

Motif Motif::edgeless(int k) { return Motif(k, {}); }

int Motif::degree(int v) const { return std::popcount(adjacency_[static_cast<std::size_t>(v)]); }

Motif Motif::induced(std::uint32_t vertex_mask) const {
  std::vector<int> relabel(static_cast<std::size_t>(vertex_count_), -1);
  int next = 0;
  for (int v = 0; v < vertex_count_; ++v) {
    if ((vertex_mask >> v) & 1u) relabel[static_cast<std::size_t>(v)] = next++;
  }
  if (next == 0) throw std::invalid_argument("induced subgraph on empty vertex set");
  std::vector<MotifEdge> e;
  for (const auto& [a, b] : edges_) {
    const int ra = relabel[static_cast<std::size_t>(a)];
    const int rb = relabel[static_cast<std::size_t>(b)];
    if (ra >= 0 && rb >= 0) e.emplace_back(ra, rb);
  }
  return Motif(next, std::move(e));
}

Motif Motif::relabeled(std::span<const int> new_label) const {
  if (static_cast<int>(new_label.size()) != vertex_count_) {
    throw std::invalid_argument("relabeling has wrong length");
  }
  std::vector<MotifEdge> e;
  e.reserve(edges_.size());
  for (const auto& [a, b] : edges_) {
    e.emplace_back(new_label[static_cast<std::size_t>(a)], new_label[static_cast<std::size_t>(b)]);
  }
  return Motif(vertex_count_, std::move(e));
}

// ---------------------------------------------------------------------------
// Isomorphism

std::size_t CanonicalFormHash::operator()(const CanonicalForm& f) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(f.vertex_count);
  for (std::uint64_t w : f.bits) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

CanonicalLabeling canonical_labeling(const Motif& m) { return CanonicalSearch(m).run(); }

CanonicalForm canonical_form(const Motif& m) { return canonical_labeling(m).form; }

Motif canonical_representative(const Motif& m) {
  const auto lab = canonical_labeling(m);
  std::vector<int> new_label(lab.order.size());
  for (std::size_t i = 0; i < lab.order.size(); ++i) {
    new_label[static_cast<std::size_t>(lab.order[i])] = static_cast<int>(i);
  }
  return m.relabeled(new_label);
}

bool isomorphic(const Motif& a, const Motif& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> da, db;
  for (int v = 0; v < a.vertex_count(); ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a) == canonical_form(b);
}

std::uint64_t automorphism_count(const Motif& m) {
  AutomorphismSearch search(m);
  const int n = m.vertex_count();
  std::vector<int> base_image(static_cast<std::size_t>(n), -1);
  std::uint64_t order = 1;
  for (int b = 0; b < n; ++b) {
    std::uint64_t orbit = 0;
    for (int u = 0; u < n; ++u) {
      if (!search.same_color(b, u)) continue;
      if (base_image[static_cast<std::size_t>(u)] >= 0 && u != b) continue;
      auto image = base_image;
      image[static_cast<std::size_t>(b)] = u;
      if (search.exists(std::move(image))) ++orbit;
    }
    order = checked_mul(order, orbit, "automorphism group order exceeds 64 bits");
    base_image[static_cast<std::size_t>(b)] = b;
  }
  return order;
}

std::uint64_t copies_in_complete(const Motif& m, std::uint64_t n) {
  const auto k = static_cast<std::uint64_t>(m.vertex_count());
  if (n < k) return 0;
  const std::uint64_t per_set = factorial(m.vertex_count()) / automorphism_count(m);
  return checked_mul(binomial_checked(n, k), per_set, "copy count exceeds 64 bits");
}

std::vector<std::uint64_t> labeled_copy_masks(const Motif& m) {
  const int k = m.vertex_count();
  if (k > kMaxLabelingVertices) {
    throw std::length_error("labeled copy enumeration limited to " +
                            std::to_string(kMaxLabelingVertices) + " vertices");
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> masks;
  do {
    std::uint64_t mask = 0;
    for (const auto& [a, b] : m.edges()) {
      mask |= std::uint64_t{1} << pair_index(perm[static_cast<std::size_t>(a)],
                                             perm[static_cast<std::size_t>(b)]);
    }
    masks.push_back(mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

Motif motif_from_mask(int vertex_count, std::uint64_t edge_mask) {
  std::vector<MotifEdge> e;
  for (int j = 1; j < vertex_count; ++j) {
    for (int i = 0; i < j; ++i) {
      if ((edge_mask >> pair_index(i, j)) & 1u) e.emplace_back(i, j);
    }
  }
  return Motif(vertex_count, std::move(e));
}

// ---------------------------------------------------------------------------
// Density exponents

DensityProfile density_exponents(const Motif& h) {
  const int k = h.vertex_count();
  if (k > kMaxExponentVertices) {
    throw std::length_error("density exponents limited to " +
                            std::to_string(kMaxExponentVertices) + " vertices");
  }
  if (h.edge_count() == 0) throw std::invalid_argument("density exponents need at least one edge");

  const std::uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);
  auto edges_within = [&](std::uint32_t s) {
    int twice = 0;
    for (int v = 0; v < k; ++v) {
      if ((s >> v) & 1u) twice += std::popcount(h.neighbor_mask(v) & s);
    }
    return twice / 2;
  };

  DensityProfile p;
  p.m = Rational(0);
  p.m1 = Rational(0);
  std::vector<std::uint32_t> m_hits, m1_hits;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int v = std::popcount(s);
    const int e = edges_within(s);
    const Rational r(e, v);
    if (r > p.m) {
      p.m = r;
      m_hits.clear();
    }
    if (r == p.m) m_hits.push_back(s);
    if (v >= 2 && e >= 1) {
      const Rational r1(e, v - 1);
      if (r1 > p.m1) {
        p.m1 = r1;
        m1_hits.clear();
      }
      if (r1 == p.m1) m1_hits.push_back(s);
    }
  }

  auto classes = [&](const std::vector<std::uint32_t>& hits) {
    std::vector<Motif> out;
    std::vector<CanonicalForm> seen;
    for (std::uint32_t s : hits) {
      Motif f = h.induced(s);
      CanonicalForm cf = canonical_form(f);
      if (std::find(seen.begin(), seen.end(), cf) == seen.end()) {
        seen.push_back(std::move(cf));
        out.push_back(canonical_representative(f));
      }
    }
    return out;
  };
  p.m_maximizers = classes(m_hits);
  p.m1_maximizers = classes(m1_hits);

  const bool full_m = std::find(m_hits.begin(), m_hits.end(), full) != m_hits.end();
  const bool full_m1 = std::find(m1_hits.begin(), m1_hits.end(), full) != m1_hits.end();
  p.balanced = full_m;
  p.strictly_balanced = full_m && m_hits.size() == 1;
  p.strongly_balanced = full_m1;
  p.strictly_strongly_balanced = full_m1 && m1_hits.size() == 1;
  return p;
}

// ---------------------------------------------------------------------------
// Vertex joins and join catalogs

Motif vertex_join(const Motif& m, int a, int b) {
  const int k = m.vertex_count();
  if (a < 0 || a >= k || b < 0 || b >= k) throw std::out_of_range("vertex join index out of range");
  if (2 * k - 1 > kMaxMotifVertices) throw std::length_error("vertex join too large");
  auto second = [&](int v) {
    if (v == b) return a;
    return k + (v < b ? v : v - 1);
  };
  std::vector<MotifEdge> e = m.edges();
  for (const auto& [x, y] : m.edges()) e.emplace_back(second(x), second(y));
  return Motif(2 * k - 1, std::move(e));
}

namespace {

JoinCatalog compute_join_catalog(const Motif& h, const Motif& f, const CanonicalForm& f_form) {
  const int k = h.vertex_count();
  const int shared = f.vertex_count();
  const int total = 2 * k - shared;

  const auto copy_masks = labeled_copy_masks(h);
  std::uint64_t h_mask = 0;
  for (const auto& [a, b] : h.edges()) h_mask |= std::uint64_t{1} << pair_index(a, b);

  // Fix V1 = {0..k-1} carrying H itself; by relabeling symmetry every choice
  // of V1 and every copy on it contributes equally, so the totals below are
  // scaled by C(total, k) * k!/|Aut(H)| at the end.
  std::map<CanonicalForm, std::pair<Motif, std::uint64_t>> found;
  std::unordered_map<std::uint64_t, CanonicalForm> union_forms;
  std::unordered_map<std::uint64_t, bool> intersection_ok;

  std::vector<int> v2(static_cast<std::size_t>(k));
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    if (std::popcount(s) != shared) continue;
    int idx = 0;
    for (int v = 0; v < k; ++v) {
      if ((s >> v) & 1u) v2[static_cast<std::size_t>(idx++)] = v;
    }
    for (int v = k; v < total; ++v) v2[static_cast<std::size_t>(idx++)] = v;

    for (std::uint64_t local : copy_masks) {
      std::uint64_t mask2 = 0;
      for (int j = 1; j < k; ++j) {
        for (int i = 0; i < j; ++i) {
          if ((local >> pair_index(i, j)) & 1u) {
            mask2 |= std::uint64_t{1} << pair_index(v2[static_cast<std::size_t>(i)],
                                                   v2[static_cast<std::size_t>(j)]);
          }
        }
      }
      const std::uint64_t common = h_mask & mask2;
      const std::uint64_t ikey = (static_cast<std::uint64_t>(s) << 40) ^ common;
      auto it = intersection_ok.find(ikey);
      if (it == intersection_ok.end()) {
        std::vector<MotifEdge> ie;
        std::vector<int> compact(static_cast<std::size_t>(k), -1);
        int c = 0;
        for (int v = 0; v < k; ++v) {
          if ((s >> v) & 1u) compact[static_cast<std::size_t>(v)] = c++;
        }
        for (int j = 1; j < k; ++j) {
          for (int i = 0; i < j; ++i) {
            if ((common >> pair_index(i, j)) & 1u) {
              ie.emplace_back(compact[static_cast<std::size_t>(i)], compact[static_cast<std::size_t>(j)]);
            }
          }
        }
        const Motif inter(shared, std::move(ie));
        const bool ok = inter.edge_count() == f.edge_count() && canonical_form(inter) == f_form;
        it = intersection_ok.emplace(ikey, ok).first;
      }
      if (!it->second) continue;

      const std::uint64_t umask = h_mask | mask2;
      auto uf = union_forms.find(umask);
      if (uf == union_forms.end()) {
        uf = union_forms.emplace(umask, canonical_form(motif_from_mask(total, umask))).first;
      }
      auto slot = found.find(uf->second);
      if (slot == found.end()) {
        found.emplace(uf->second,
                      std::make_pair(canonical_representative(motif_from_mask(total, umask)),
                                     std::uint64_t{1}));
      } else {
        ++slot->second.second;
      }
    }
  }

  const std::uint64_t scale =
      checked_mul(binomial_checked(static_cast<std::uint64_t>(total), static_cast<std::uint64_t>(k)),
                  static_cast<std::uint64_t>(copy_masks.size()), "join multiplicity overflow");
  JoinCatalog out{canonical_representative(f), {}};
  for (auto& [form, entry] : found) {
    out.unions.push_back({std::move(entry.first), checked_mul(entry.second, scale, "join multiplicity overflow")});
  }
  return out;
}

bool embeds(const Motif& f, const Motif& h) {
  if (f.vertex_count() > h.vertex_count() || f.edge_count() > h.edge_count()) return false;
  const Graph host = to_graph(h);
  return count_injective_homomorphisms(host, f) > 0;
}

}  // namespace

JoinCatalog join_catalog(const Motif& h, const Motif& f) {
  if (h.vertex_count() > kMaxJoinCatalogVertices) {
    throw std::length_error("join catalog limited to motifs with " +
                            std::to_string(kMaxJoinCatalogVertices) + " vertices");
  }
  if (f.edge_count() < 1) throw std::invalid_argument("join catalog needs an intersection with an edge");
  if (!embeds(f, h)) throw std::invalid_argument("intersection graph is not a subgraph of the motif");

  const Motif hc = canonical_representative(h);
  const CanonicalForm hf = canonical_form(hc);
  const CanonicalForm ff = canonical_form(f);

  static std::mutex mutex;
  static std::map<std::pair<CanonicalForm, CanonicalForm>, JoinCatalog> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({hf, ff});
    if (it != cache.end()) return it->second;
  }
  JoinCatalog computed = compute_join_catalog(hc, f, ff);
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_pair(hf, ff), std::move(computed)).first->second;
}

// ---------------------------------------------------------------------------
// Embedding counts

Graph to_graph(const Motif& m) {
  std::vector<VertexPair> e;
  for (const auto& [a, b] : m.edges()) e.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  return Graph(static_cast<std::size_t>(m.vertex_count()), e);
}

namespace {

class EmbeddingCounter {
 public:
  EmbeddingCounter(const Graph& host, const Motif& m) : host_(host) {
    const int k = m.vertex_count();
    std::uint32_t placed = 0;
    for (int step = 0; step < k; ++step) {
      int best = -1;
      int best_links = -1;
      int best_degree = -1;
      for (int v = 0; v < k; ++v) {
        if ((placed >> v) & 1u) continue;
        const int links = std::popcount(m.neighbor_mask(v) & placed);
        const int deg = m.degree(v);
        if (links > best_links || (links == best_links && deg > best_degree)) {
          best = v;
          best_links = links;
          best_degree = deg;
        }
      }
      Step st;
      st.vertex = best;
      st.min_degree = static_cast<std::size_t>(best_degree);
      for (int i = 0; i < step; ++i) {
        if (m.adjacent(best, order_[static_cast<std::size_t>(i)].vertex)) st.earlier_neighbors.push_back(i);
      }
      order_.push_back(std::move(st));
      placed |= 1u << best;
    }
    image_.assign(static_cast<std::size_t>(k), 0);
    used_.assign(host.vertex_count(), 0);
  }

  std::uint64_t run() { return extend(0); }

 private:
  struct Step {
    int vertex = 0;
    std::size_t min_degree = 0;
    std::vector<int> earlier_neighbors;  // positions in order_
  };

  bool admissible(const Step& st, VertexId cand) const {
    if (used_[cand] || host_.degree(cand) < st.min_degree) return false;
    for (std::size_t i = 1; i < st.earlier_neighbors.size(); ++i) {
      if (!host_.has_edge(image_[static_cast<std::size_t>(st.earlier_neighbors[i])], cand)) return false;
    }
    return true;
  }

  std::uint64_t extend(std::size_t depth) {
    if (depth == order_.size()) return 1;
    const Step& st = order_[depth];
    std::uint64_t total = 0;
    auto visit = [&](VertexId cand) {
      if (!admissible(st, cand)) return;
      image_[depth] = cand;
      used_[cand] = 1;
      total += extend(depth + 1);
      used_[cand] = 0;
    };
    if (st.earlier_neighbors.empty()) {
      for (VertexId v = 0; v < host_.vertex_count(); ++v) visit(v);
    } else {
      for (VertexId v : host_.neighbors(image_[static_cast<std::size_t>(st.earlier_neighbors.front())])) visit(v);
    }
    return total;
  }

  const Graph& host_;
  std::vector<Step> order_;
  std::vector<VertexId> image_;  // indexed by position in order_
  std::vector<char> used_;
};

}  // namespace

std::uint64_t count_injective_homomorphisms(const Graph& host, const Motif& m) {
  if (static_cast<std::size_t>(m.vertex_count()) > host.vertex_count()) return 0;
  return EmbeddingCounter(host, m).run();
}

std::uint64_t count_embeddings(const Graph& host, const Motif& m) {
  return count_injective_homomorphisms(host, m) / automorphism_count(m);
}

// ---------------------------------------------------------------------------
// Named motifs

namespace {
constexpr std::array<std::string_view, 9> kMotifNames = {
    "edge", "path3", "triangle", "k4", "c4", "c5", "triangle_pendant", "fig1b", "fig2a"};
}

std::span<const std::string_view> motif_names() { return kMotifNames; }

std::optional<Motif> named_motif(std::string_view name) {
  if (name == "edge") return Motif::complete(2);
  if (name == "path3") return Motif::path(3);
  if (name == "triangle") return Motif::complete(3);
  if (name == "k4") return Motif::complete(4);
  if (name == "c4") return Motif::cycle(4);
  if (name == "c5") return Motif::cycle(5);
  // Triangle {0,1,2} with a pendant edge at vertex 0.
  if (name == "triangle_pendant") return Motif(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  // K4 minus the edge {0,3}, plus a pendant edge {0,4}.
  if (name == "fig1b") return Motif(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}});
  // Triangle {0,1,2} sharing the edge {1,2} with the 5-cycle 1-3-5-4-2.
  if (name == "fig2a") return Motif(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}});
  return std::nullopt;
}

}  // namespace sgf
