#include "placenet/netstats.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_set>

#include "placenet/topology.hpp"

namespace placenet {

namespace {

void require_nonempty(const PlaceGraph& graph, const char* what) {
  if (graph.empty()) throw DomainError(std::string(what) + ": graph is empty");
}

/// Hop distances from `source` over the undirected projection; -1 = unreachable.
std::vector<std::int64_t> bfs(const Topology& topo, std::size_t source) {
  std::vector<std::int64_t> dist(topo.size(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto v : topo.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

/// Induced subgraph on `keep` (sorted venue indices).
PlaceGraph restrict_to(const PlaceGraph& graph, const std::vector<VenueIndex>& keep) {
  std::vector<WeightedEdge> edges;
  for (const auto& e : graph.edges()) {
    if (std::binary_search(keep.begin(), keep.end(), e.origin) &&
        std::binary_search(keep.begin(), keep.end(), e.dest)) {
      edges.push_back(e);
    }
  }
  return PlaceGraph(graph.window(), std::move(edges));
}

}  // namespace

DegreeDistributions degree_and_weight_distributions(const PlaceGraph& graph) {
  require_nonempty(graph, "degree distributions");
  const Topology topo(graph);
  DegreeDistributions d;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    ++d.in_degree[static_cast<std::int64_t>(topo.in_neighbors(k).size())];
    ++d.out_degree[static_cast<std::int64_t>(topo.out_neighbors(k).size())];
    ++d.undirected_degree[static_cast<std::int64_t>(topo.degree(k))];
  }
  for (const auto& e : graph.edges()) ++d.edge_weight[e.weight];
  return d;
}

std::vector<std::int64_t> undirected_degrees(const PlaceGraph& graph) {
  const Topology topo(graph);
  std::vector<std::int64_t> deg(topo.size());
  for (std::size_t k = 0; k < topo.size(); ++k) deg[k] = static_cast<std::int64_t>(topo.degree(k));
  return deg;
}

Clustering clustering_coefficient(const PlaceGraph& graph) {
  require_nonempty(graph, "clustering");
  const Topology topo(graph);
  Clustering c;
  c.per_node.assign(topo.size(), 0.0);
  for (std::size_t u = 0; u < topo.size(); ++u) {
    const auto k = topo.degree(u);
    if (k < 2) continue;
    std::size_t links = 0;  // each neighbour-neighbour link is seen twice
    for (const auto v : topo.neighbors(u)) links += sorted_intersection_size(topo.neighbors(u), topo.neighbors(v));
    const double triangles = static_cast<double>(links) / 2.0;
    c.per_node[u] = triangles / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
  }
  c.mean = std::accumulate(c.per_node.begin(), c.per_node.end(), 0.0) / static_cast<double>(topo.size());
  return c;
}

std::optional<double> assortativity(const PlaceGraph& graph) {
  const Topology topo(graph);
  if (topo.undirected_edge_count() < 2) return std::nullopt;
  // Integer moments over both orientations of every undirected edge.
  __int128 m = 0, sx = 0, sxx = 0, sxy = 0;
  for (std::size_t u = 0; u < topo.size(); ++u) {
    const auto ku = static_cast<__int128>(topo.degree(u));
    for (const auto v : topo.neighbors(u)) {
      const auto kv = static_cast<__int128>(topo.degree(v));
      ++m;
      sx += ku;
      sxx += ku * ku;
      sxy += ku * kv;
    }
  }
  const __int128 var = m * sxx - sx * sx;
  if (var == 0) return std::nullopt;
  const __int128 cov = m * sxy - sx * sx;
  return static_cast<double>(static_cast<long double>(cov) / static_cast<long double>(var));
}

PathStats path_stats(const PlaceGraph& graph, std::size_t sample_sources, std::uint64_t seed) {
  const auto gc = giant_component(graph);
  if (gc.empty()) throw DomainError("path statistics: empty giant component");
  const PlaceGraph core = restrict_to(graph, gc);
  const Topology topo(core);

  std::vector<std::size_t> sources(topo.size());
  std::iota(sources.begin(), sources.end(), std::size_t{0});
  PathStats stats;
  if (topo.size() > kExactPathLimit) {
    if (sample_sources == 0) throw DomainError("path statistics: sample_sources must be positive");
    std::vector<std::size_t> chosen;
    std::mt19937_64 rng(seed);
    std::sample(sources.begin(), sources.end(), std::back_inserter(chosen),
                std::min(sample_sources, sources.size()), rng);
    sources = std::move(chosen);
    stats.sampled = true;
  }
  stats.sources = sources.size();

  long double total = 0.0L;
  std::size_t pairs = 0;
  for (const auto s : sources) {
    const auto dist = bfs(topo, s);
    for (std::size_t t = 0; t < dist.size(); ++t) {
      if (t == s || dist[t] < 0) continue;
      total += static_cast<long double>(dist[t]);
      ++pairs;
      stats.diameter = std::max(stats.diameter, dist[t]);
    }
  }
  stats.mean_shortest_path = pairs ? static_cast<double>(total / static_cast<long double>(pairs)) : 0.0;
  return stats;
}

std::vector<VenueIndex> giant_component(const PlaceGraph& graph) {
  const Topology topo(graph);
  std::vector<bool> seen(topo.size(), false);
  std::vector<std::size_t> best;
  for (std::size_t start = 0; start < topo.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (const auto v : topo.neighbors(comp[head])) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    // Components are discovered in order of their smallest node, so strict
    // comparison keeps the smallest-id component on ties.
    if (comp.size() > best.size()) best = std::move(comp);
  }
  std::vector<VenueIndex> out;
  out.reserve(best.size());
  for (const auto k : best) out.push_back(topo.venue(k));
  std::sort(out.begin(), out.end());
  return out;
}

PlaceGraph rewire_null_model(const PlaceGraph& graph, std::uint64_t seed, std::size_t swaps_per_edge) {
  const Topology topo(graph);
  const auto n = static_cast<std::uint64_t>(topo.size());
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < topo.size(); ++u) {
    for (const auto v : topo.neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  auto key = [n](std::size_t a, std::size_t b) {
    return a < b ? static_cast<std::uint64_t>(a) * n + b : static_cast<std::uint64_t>(b) * n + a;
  };
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) present.insert(key(a, b));

  if (edges.size() >= 2) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::bernoulli_distribution flip(0.5);
    const auto attempts = swaps_per_edge * edges.size();
    for (std::size_t t = 0; t < attempts; ++t) {
      const auto i = pick(rng);
      const auto j = pick(rng);
      const bool cross = flip(rng);
      if (i == j) continue;
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      // (a,b),(c,d) -> (a,d),(c,b)  or  (a,c),(b,d)
      const auto [p1, q1, p2, q2] = cross ? std::array{a, d, c, b} : std::array{a, c, b, d};
      if (p1 == q1 || p2 == q2) continue;
      const auto k1 = key(p1, q1);
      const auto k2 = key(p2, q2);
      if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
      present.erase(key(a, b));
      present.erase(key(c, d));
      present.insert(k1);
      present.insert(k2);
      edges[i] = {std::min(p1, q1), std::max(p1, q1)};
      edges[j] = {std::min(p2, q2), std::max(p2, q2)};
    }
  }

  std::vector<WeightedEdge> out;
  out.reserve(edges.size());
  for (const auto& [a, b] : edges) out.push_back({topo.venue(a), topo.venue(b), 1});
  return PlaceGraph(graph.window(), std::move(out));
}

double PageRank::score(VenueIndex v) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) throw DomainError("no PageRank score for venue index " + std::to_string(v));
  return scores[it - nodes.begin()];
}

PageRank pagerank(const PlaceGraph& graph, double damping, double tol, int max_iter) {
  require_nonempty(graph, "pagerank");
  const Topology topo(graph);
  const auto n = static_cast<Eigen::Index>(topo.size());

  Eigen::VectorXd out_weight = Eigen::VectorXd::Zero(n);
  for (const auto& e : graph.edges()) out_weight[static_cast<Eigen::Index>(*topo.local(e.origin))] += e.weight;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    const auto o = static_cast<Eigen::Index>(*topo.local(e.origin));
    const auto d = static_cast<Eigen::Index>(*topo.local(e.dest));
    triplets.emplace_back(d, o, static_cast<double>(e.weight) / out_weight[o]);
  }
  Eigen::SparseMatrix<double> transition(n, n);
  transition.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::ArrayXd dangling = (out_weight.array() == 0.0).cast<double>();

  PageRank pr;
  pr.nodes = topo.nodes();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= max_iter; ++it) {
    const double dangling_mass = (dangling * x.array()).sum();
    Eigen::VectorXd next = damping * (transition * x);
    next.array() += (damping * dangling_mass + (1.0 - damping)) / static_cast<double>(n);
    pr.residual = (next - x).lpNorm<1>();
    x = std::move(next);
    pr.iterations = it;
    if (pr.residual < tol) {
      pr.scores = x / x.sum();
      return pr;
    }
  }
  throw ConvergenceError("pagerank did not converge after " + std::to_string(max_iter) +
                             " iterations (residual " + std::to_string(pr.residual) + ")",
                         pr.residual);
}

std::array<Histogram, kCategoryCount> category_weight_profile(const PlaceGraph& graph,
                                                              const VenueRegistry& registry) {
  std::array<Histogram, kCategoryCount> profile;
  for (const auto& e : graph.edges()) {
    if (e.dest >= registry.size() || e.origin >= registry.size()) {
      throw DomainError("graph node " + std::to_string(e.dest) + " is not in the registry");
    }
    ++profile[static_cast<std::size_t>(registry[e.dest].category)][e.weight];
  }
  return profile;
}

Eigen::Matrix<double, 24, 24> peak_hour_interaction_matrix(const PlaceGraph& graph,
                                                           const ActivityProfiles& day_profiles) {
  require_nonempty(graph, "peak-hour matrix");
  Eigen::Matrix<double, 24, 24> m = Eigen::Matrix<double, 24, 24>::Zero();
  for (const auto& e : graph.edges()) {
    m(peak_hour(day_profiles, e.origin), peak_hour(day_profiles, e.dest)) += static_cast<double>(e.weight);
  }
  return m / m.sum();
}

TopologyReport topology_report(const PlaceGraph& graph, const TopologyOptions& options) {
  require_nonempty(graph, "topology report");
  const Topology topo(graph);
  TopologyReport r;
  r.n_nodes = graph.node_count();
  r.n_edges = graph.edge_count();
  r.n_undirected_edges = topo.undirected_edge_count();
  r.mean_clustering = clustering_coefficient(graph).mean;
  const auto paths = path_stats(graph, options.sample_sources, options.seed);
  r.diameter_estimate = paths.diameter;
  r.diameter_sampled = paths.sampled;
  r.path_sources = paths.sources;
  r.mean_shortest_path = paths.mean_shortest_path;
  r.mean_degree = 2.0 * static_cast<double>(r.n_undirected_edges) / static_cast<double>(r.n_nodes);
  r.assortativity = assortativity(graph);
  r.giant_component_fraction =
      static_cast<double>(giant_component(graph).size()) / static_cast<double>(r.n_nodes);
  if (options.null_model_seeds > 0) {
    NullModelStats null;
    null.seeds = options.null_model_seeds;
    for (std::size_t s = 0; s < options.null_model_seeds; ++s) {
      const auto rewired = rewire_null_model(graph, options.seed + s, options.swaps_per_edge);
      const auto rp = path_stats(rewired, options.sample_sources, options.seed);
      null.clustering += clustering_coefficient(rewired).mean;
      null.diameter += static_cast<double>(rp.diameter);
      null.mean_path += rp.mean_shortest_path;
    }
    const auto k = static_cast<double>(options.null_model_seeds);
    null.clustering /= k;
    null.diameter /= k;
    null.mean_path /= k;
    r.null_model = null;
  }
  return r;
}

}  // namespace placenet
