#include "placenet/topology.hpp"

#include <algorithm>

namespace placenet {

Topology::Topology(const PlaceGraph& graph)
    : nodes_(graph.nodes()), undirected_(nodes_.size()), out_(nodes_.size()), in_(nodes_.size()) {
  for (const auto& e : graph.edges()) {
    const auto o = *local(e.origin);
    const auto d = *local(e.dest);
    out_[o].push_back(d);
    in_[d].push_back(o);
    undirected_[o].push_back(d);
    undirected_[d].push_back(o);
  }
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    auto& nb = undirected_[k];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    undirected_edges_ += nb.size();
    std::sort(in_[k].begin(), in_[k].end());
    // out_ is already sorted: edges are ordered by (origin, dest).
  }
  undirected_edges_ /= 2;
}

std::optional<std::size_t> Topology::local(VenueIndex v) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t sorted_intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace placenet
