#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sgf {

using VertexId = std::uint32_t;
using VertexPair = std::pair<VertexId, VertexId>;

/// Simple undirected host graph in compressed sparse row form. Neighbor lists
/// are sorted, so adjacency queries are binary searches.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicate edges, or
  /// endpoints outside [0, vertex_count).
  Graph(std::size_t vertex_count, std::span<const VertexPair> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  /// Edges as (u, v) with u < v, sorted.
  std::vector<VertexPair> edge_list() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
};

}  // namespace sgf
