#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sgf/graph.hpp"
#include "sgf/rational.hpp"

namespace sgf {

/// Largest vertex count a Motif can hold (adjacency is a 32-bit mask).
inline constexpr int kMaxMotifVertices = 32;
/// Density exponents, balancedness and variance orders enumerate all 2^k
/// vertex subsets.
inline constexpr int kMaxExponentVertices = 12;
/// Labeled-copy enumeration walks all k! permutations.
inline constexpr int kMaxLabelingVertices = 8;
/// Join catalogs enumerate ordered copy pairs on up to 2k-1 vertices.
inline constexpr int kMaxJoinCatalogVertices = 6;

/// Motif vertices are 0-based inside the library; file formats are 1-based.
using MotifEdge = std::pair<int, int>;

/// Index of the unordered pair {i, j} (i < j) in the column-major upper
/// triangle: j(j-1)/2 + i.
constexpr int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

/// A small simple undirected graph H: the pattern whose copies are counted.
class Motif {
 public:
  /// Edges are normalized to (min, max) and sorted. Throws
  /// std::invalid_argument for self-loops, duplicates, out-of-range
  /// endpoints, or a vertex count outside [1, kMaxMotifVertices].
  Motif(int vertex_count, std::vector<MotifEdge> edges);

  static Motif complete(int k);
  static Motif path(int k);
  static Motif cycle(int k);
  static Motif edgeless(int k);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<MotifEdge>& edges() const { return edges_; }

  std::uint32_t neighbor_mask(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const;
  bool adjacent(int a, int b) const { return (adjacency_[static_cast<std::size_t>(a)] >> b) & 1u; }

  /// Induced subgraph on the vertices in `vertex_mask`, relabeled 0.. in
  /// increasing original order.
  Motif induced(std::uint32_t vertex_mask) const;
  /// Vertex v becomes new_label[v]; new_label must be a permutation.
  Motif relabeled(std::span<const int> new_label) const;

  /// Labeled equality (same vertex count and identical edge set).
  friend bool operator==(const Motif& a, const Motif& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_;
  std::vector<MotifEdge> edges_;
  std::vector<std::uint32_t> adjacency_;
};

/// Isomorphism-class key. Two motifs have equal forms iff they are
/// isomorphic.
struct CanonicalForm {
  int vertex_count = 0;
  int edge_count = 0;
  std::vector<std::uint64_t> bits;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept;
};

struct CanonicalLabeling {
  CanonicalForm form;
  /// order[i] is the original vertex placed at canonical position i.
  std::vector<int> order;
};

CanonicalLabeling canonical_labeling(const Motif& m);
CanonicalForm canonical_form(const Motif& m);
/// The motif relabeled into its canonical order; isomorphic inputs give
/// identical (labeled-equal) outputs.
Motif canonical_representative(const Motif& m);
bool isomorphic(const Motif& a, const Motif& b);

/// |Aut(H)|, via orbit-stabilizer over an invariant-pruned search.
/// Throws std::overflow_error if the group order exceeds 64 bits.
std::uint64_t automorphism_count(const Motif& m);

/// Number of copies of H in K_n: (n)_k / |Aut(H)|; 0 when n < k.
/// Throws std::overflow_error when the result does not fit in 64 bits.
std::uint64_t copies_in_complete(const Motif& m, std::uint64_t n);

/// Edge masks (bit pair_index(i, j)) of every subgraph of K_k on vertex set
/// {0..k-1} isomorphic to H, sorted ascending. There are k!/|Aut(H)| of
/// them. Requires k <= kMaxLabelingVertices.
std::vector<std::uint64_t> labeled_copy_masks(const Motif& m);

/// Motif from an edge mask over pairs of {0..k-1}.
Motif motif_from_mask(int vertex_count, std::uint64_t edge_mask);

struct DensityProfile {
  Rational m;   ///< max |E(F)| / |V(F)| over nonempty subgraphs
  Rational m1;  ///< max |E(F)| / (|V(F)| - 1) over subgraphs with >= 2 vertices
  std::vector<Motif> m_maximizers;   ///< isomorphism classes attaining m
  std::vector<Motif> m1_maximizers;  ///< classes attaining m1 with >= 1 edge
  bool balanced = false;
  bool strictly_balanced = false;
  bool strongly_balanced = false;
  bool strictly_strongly_balanced = false;
};

/// Exact density exponents. Maximizers are always induced subgraphs (adding
/// the missing edges on the same vertex set only raises either ratio), so the
/// search runs over the 2^k vertex subsets. Throws std::invalid_argument for
/// an edgeless motif and std::length_error above kMaxExponentVertices.
DensityProfile density_exponents(const Motif& m);

/// (a, b)-vertex join: vertex a of one copy identified with vertex b of a
/// second copy. The result has 2k-1 vertices and exactly 2|E| edges; copy-1
/// vertices keep their labels.
Motif vertex_join(const Motif& m, int a, int b);

struct JoinClass {
  Motif union_graph;  ///< R
  std::uint64_t eta;  ///< ordered copy pairs on {0..2k-|V(F)|-1} with union ~ R
};

struct JoinCatalog {
  Motif intersection;  ///< F
  std::vector<JoinClass> unions;
};

/// All isomorphism classes R of H1 u H2 over ordered pairs of H-copies on
/// the labeled vertex set of size 2|V(H)|-|V(F)| whose intersection is
/// isomorphic to F, with multiplicities eta(H, F, R). Representatives are
/// canonical and listed in canonical-form order. Results are memoized per
/// isomorphism class of (H, F).
///
/// Throws std::invalid_argument if F has no edge or is not isomorphic to a
/// subgraph of H, and std::length_error when |V(H)| > kMaxJoinCatalogVertices.
JoinCatalog join_catalog(const Motif& h, const Motif& f);

/// Number of injective maps V(H) -> V(host) sending edges to edges.
std::uint64_t count_injective_homomorphisms(const Graph& host, const Motif& m);

/// Number of unlabeled (not necessarily induced) copies of H in the host:
/// injective homomorphisms divided by |Aut(H)|.
std::uint64_t count_embeddings(const Graph& host, const Motif& m);

/// The motif as a host graph.
Graph to_graph(const Motif& m);

/// Built-in motifs: edge, path3, triangle, k4, c4, c5, triangle_pendant,
/// fig1b, fig2a.
std::optional<Motif> named_motif(std::string_view name);
std::span<const std::string_view> motif_names();

}  // namespace sgf
