#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "placenet/error.hpp"
#include "placenet/snapshot.hpp"

namespace placenet {

/// value -> count
using Histogram = std::map<std::int64_t, std::size_t>;

struct DegreeDistributions {
  Histogram in_degree;
  Histogram out_degree;
  Histogram undirected_degree;
  Histogram edge_weight;
};

DegreeDistributions degree_and_weight_distributions(const PlaceGraph& graph);

/// Undirected degree of every node, aligned with graph.nodes().
std::vector<std::int64_t> undirected_degrees(const PlaceGraph& graph);

struct Clustering {
  double mean = 0.0;
  std::vector<double> per_node;  // aligned with graph.nodes()
};

/// Local clustering on the undirected projection; nodes of degree < 2 count as 0
/// and the mean runs over all nodes.
Clustering clustering_coefficient(const PlaceGraph& graph);

/// Degree assortativity of the undirected projection. nullopt when undefined
/// (fewer than two edges or constant end degrees).
std::optional<double> assortativity(const PlaceGraph& graph);

struct PathStats {
  double mean_shortest_path = 0.0;
  std::int64_t diameter = 0;
  bool sampled = false;  // diameter is then a lower bound
  std::size_t sources = 0;
};

inline constexpr std::size_t kExactPathLimit = 5000;

/// BFS statistics on the giant component of the undirected projection. Exact when
/// the component has at most kExactPathLimit nodes, otherwise from
/// `sample_sources` uniformly sampled sources.
PathStats path_stats(const PlaceGraph& graph, std::size_t sample_sources = 1000, std::uint64_t seed = 0);

/// Largest weakly connected component, sorted. Ties go to the component holding
/// the smallest venue index (equivalently the smallest venue_id).
std::vector<VenueIndex> giant_component(const PlaceGraph& graph);

/// Degree-preserving double-edge swaps on the undirected projection. Exactly
/// swaps_per_edge * |E| attempts; swaps creating self-loops or multi-edges are
/// rejected. The result stores each undirected edge once as min -> max with weight 1.
PlaceGraph rewire_null_model(const PlaceGraph& graph, std::uint64_t seed, std::size_t swaps_per_edge = 10);

class ConvergenceError : public DomainError {
 public:
  ConvergenceError(const std::string& what, double residual) : DomainError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct PageRank {
  std::vector<VenueIndex> nodes;
  Eigen::VectorXd scores;  // aligned with nodes
  int iterations = 0;
  double residual = 0.0;

  /// Throws DomainError for venues outside the graph.
  double score(VenueIndex v) const;
};

/// Weighted-transition PageRank; dangling nodes spread their mass uniformly.
/// Throws ConvergenceError when the L1 change stays above tol after max_iter steps.
PageRank pagerank(const PlaceGraph& graph, double damping = 0.85, double tol = 1e-9, int max_iter = 100);

/// Edge-weight histogram per destination category.
std::array<Histogram, kCategoryCount> category_weight_profile(const PlaceGraph& graph,
                                                              const VenueRegistry& registry);

/// 24x24 matrix: cell (o, d) is the share of edge weight going from venues that
/// peak at hour o to venues that peak at hour d. Needs T = 24 profiles.
Eigen::Matrix<double, 24, 24> peak_hour_interaction_matrix(const PlaceGraph& graph,
                                                           const ActivityProfiles& day_profiles);

struct TopologyOptions {
  std::size_t sample_sources = 1000;
  std::size_t null_model_seeds = 0;  // 0 disables the null model
  std::size_t swaps_per_edge = 10;
  std::uint64_t seed = 42;
};

struct NullModelStats {
  std::size_t seeds = 0;
  double clustering = 0.0;
  double diameter = 0.0;
  double mean_path = 0.0;
};

struct TopologyReport {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::size_t n_undirected_edges = 0;
  double mean_clustering = 0.0;
  std::int64_t diameter_estimate = 0;
  bool diameter_sampled = false;
  std::size_t path_sources = 0;
  double mean_shortest_path = 0.0;
  double mean_degree = 0.0;
  std::optional<double> assortativity;
  double giant_component_fraction = 0.0;
  std::optional<NullModelStats> null_model;
};

TopologyReport topology_report(const PlaceGraph& graph, const TopologyOptions& options = {});

}  // namespace placenet
