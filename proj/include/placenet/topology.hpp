#pragma once

#include <optional>
#include <vector>

#include "placenet/snapshot.hpp"

namespace placenet {

/// Compact adjacency of a PlaceGraph. Local index k refers to graph.nodes()[k].
/// Neighbour lists are sorted local indices.
class Topology {
 public:
  explicit Topology(const PlaceGraph& graph);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<VenueIndex>& nodes() const noexcept { return nodes_; }
  VenueIndex venue(std::size_t local) const { return nodes_[local]; }
  std::optional<std::size_t> local(VenueIndex v) const;

  /// Undirected projection: each neighbour appears once regardless of direction.
  const std::vector<std::size_t>& neighbors(std::size_t k) const { return undirected_[k]; }
  const std::vector<std::size_t>& out_neighbors(std::size_t k) const { return out_[k]; }
  const std::vector<std::size_t>& in_neighbors(std::size_t k) const { return in_[k]; }
  std::size_t degree(std::size_t k) const { return undirected_[k].size(); }

  /// Number of edges in the undirected projection.
  std::size_t undirected_edge_count() const noexcept { return undirected_edges_; }

 private:
  std::vector<VenueIndex> nodes_;
  std::vector<std::vector<std::size_t>> undirected_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::size_t undirected_edges_ = 0;
};

/// Size of the intersection of two sorted ranges.
std::size_t sorted_intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace placenet
