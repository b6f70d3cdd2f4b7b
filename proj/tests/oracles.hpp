#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "placenet/snapshot.hpp"
#include "placenet/types.hpp"

namespace oracle {

using placenet::PlaceGraph;
using placenet::VenueIndex;

inline std::string venue_name(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "v%03zu", k);
  return buf;
}

// Registry of n venues laid on a small grid around central London.
inline placenet::RegistryPtr grid_registry(std::size_t n, placenet::Category c = placenet::Category::food) {
  std::vector<placenet::Venue> venues;
  for (std::size_t k = 0; k < n; ++k) {
    venues.push_back({venue_name(k), 51.50 + 0.002 * static_cast<double>(k % 10),
                      -0.12 + 0.003 * static_cast<double>(k / 10), c});
  }
  return std::make_shared<const placenet::VenueRegistry>(std::move(venues));
}

// Directed graph on n venues, each ordered pair present with probability p,
// weights uniform in [1, max_weight].
inline PlaceGraph random_graph(std::size_t n, double p, std::uint64_t seed, std::int64_t max_weight = 5) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<std::int64_t> w(1, max_weight);
  std::vector<placenet::WeightedEdge> edges;
  for (VenueIndex a = 0; a < n; ++a) {
    for (VenueIndex b = 0; b < n; ++b) {
      if (a != b && coin(rng)) edges.push_back({a, b, w(rng)});
    }
  }
  return PlaceGraph({0, 1}, std::move(edges));
}

// Undirected adjacency as a dense map from node to neighbour set.
inline std::map<VenueIndex, std::set<VenueIndex>> undirected(const PlaceGraph& g) {
  std::map<VenueIndex, std::set<VenueIndex>> adj;
  for (const auto& e : g.edges()) {
    adj[e.origin].insert(e.dest);
    adj[e.dest].insert(e.origin);
  }
  return adj;
}

inline double clustering(const PlaceGraph& g) {
  const auto adj = undirected(g);
  if (adj.empty()) return 0.0;
  double total = 0.0;
  for (const auto& [u, nb] : adj) {
    const std::vector<VenueIndex> list(nb.begin(), nb.end());
    const double k = static_cast<double>(list.size());
    if (list.size() < 2) continue;
    double links = 0.0;
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (adj.at(list[a]).count(list[b])) links += 1.0;
      }
    }
    total += 2.0 * links / (k * (k - 1.0));
  }
  return total / static_cast<double>(adj.size());
}

// Pearson correlation of end degrees over both orientations of every
// undirected edge; NaN when undefined.
inline double assortativity(const PlaceGraph& g) {
  const auto adj = undirected(g);
  std::vector<double> xs, ys;
  for (const auto& [u, nb] : adj) {
    for (const auto v : nb) {
      xs.push_back(static_cast<double>(adj.at(u).size()));
      ys.push_back(static_cast<double>(adj.at(v).size()));
    }
  }
  if (xs.size() < 4) return std::nan("");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

struct Paths {
  double mean = 0.0;
  std::int64_t diameter = 0;
  std::size_t giant = 0;
};

// Floyd-Warshall on the undirected projection, restricted to the largest
// component (ties to the component with the smallest node).
inline Paths all_pairs(const PlaceGraph& g) {
  const auto adj = undirected(g);
  std::vector<VenueIndex> nodes;
  for (const auto& [u, nb] : adj) nodes.push_back(u);
  const std::size_t n = nodes.size();
  constexpr std::int64_t inf = 1 << 30;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  std::map<VenueIndex, std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) pos[nodes[k]] = k;
  for (std::size_t k = 0; k < n; ++k) {
    d[k][k] = 0;
    for (const auto v : adj.at(nodes[k])) d[k][pos[v]] = 1;
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
  std::size_t best = 0, best_size = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t size = 0;
    for (std::size_t b = 0; b < n; ++b) size += d[k][b] < inf;
    if (size > best_size) {
      best_size = size;
      best = k;
    }
  }
  Paths out;
  out.giant = best_size;
  double sum = 0.0, count = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (d[best][a] >= inf) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || d[best][b] >= inf) continue;
      sum += static_cast<double>(d[a][b]);
      count += 1.0;
      out.diameter = std::max(out.diameter, d[a][b]);
    }
  }
  out.mean = count > 0 ? sum / count : 0.0;
  return out;
}

// Stationary distribution from a dense linear solve of
// (I - d M) x = (1 - d) / n, with dangling columns spread uniformly.
inline Eigen::VectorXd pagerank(const PlaceGraph& g, double damping = 0.85) {
  const auto& nodes = g.nodes();
  const auto n = static_cast<Eigen::Index>(nodes.size());
  std::map<VenueIndex, Eigen::Index> pos;
  for (Eigen::Index k = 0; k < n; ++k) pos[nodes[static_cast<std::size_t>(k)]] = k;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd out_w = Eigen::VectorXd::Zero(n);
  for (const auto& e : g.edges()) out_w[pos[e.origin]] += static_cast<double>(e.weight);
  for (const auto& e : g.edges()) {
    M(pos[e.dest], pos[e.origin]) += static_cast<double>(e.weight) / out_w[pos[e.origin]];
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    if (out_w[c] == 0.0) M.col(c).setConstant(1.0 / static_cast<double>(n));
  }
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - damping * M;
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(n, (1.0 - damping) / static_cast<double>(n));
  return A.fullPivLu().solve(b);
}

// P(score+ > score-) + 0.5 P(tie) over all positive-negative pairs.
inline double pairwise_auc(std::span<const double> scores, std::span<const int> labels) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (labels[a] != 1) continue;
    for (std::size_t b = 0; b < scores.size(); ++b) {
      if (labels[b] != 0) continue;
      pairs += 1.0;
      if (scores[a] > scores[b]) wins += 1.0;
      else if (scores[a] == scores[b]) wins += 0.5;
    }
  }
  return wins / pairs;
}

inline std::vector<std::int64_t> undirected_degree_multiset(const PlaceGraph& g) {
  std::vector<std::int64_t> out;
  for (const auto& [u, nb] : undirected(g)) out.push_back(static_cast<std::int64_t>(nb.size()));
  std::sort(out.begin(), out.end());
  return out;
}

// Inverse-CDF sampler for p(x) = x^-beta / zeta(beta, x_min), x >= x_min,
// with the CDF accumulated by direct summation up to a cutoff.
class DiscretePowerLaw {
 public:
  DiscretePowerLaw(double beta, std::int64_t x_min, std::int64_t cutoff = 2'000'000) : x_min_(x_min) {
    cdf_.reserve(static_cast<std::size_t>(cutoff - x_min + 1));
    double acc = 0.0;
    for (std::int64_t x = x_min; x <= cutoff; ++x) {
      acc += std::pow(static_cast<double>(x), -beta);
      cdf_.push_back(acc);
    }
    // mass beyond the cutoff, integral approximation
    total_ = acc + std::pow(static_cast<double>(cutoff) + 0.5, 1.0 - beta) / (beta - 1.0);
  }
  template <typename Rng>
  std::int64_t operator()(Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, total_);
    const double r = u(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), r);
    if (it == cdf_.end()) return x_min_ + static_cast<std::int64_t>(cdf_.size());
    return x_min_ + static_cast<std::int64_t>(it - cdf_.begin());
  }

 private:
  std::int64_t x_min_;
  std::vector<double> cdf_;
  double total_ = 0.0;
};

inline double direct_zeta(double s, double q, std::int64_t terms = 2'000'000) {
  double sum = 0.0;
  for (std::int64_t k = terms - 1; k >= 0; --k) sum += std::pow(static_cast<double>(k) + q, -s);
  // integral tail plus half the first omitted term
  const double tail_start = static_cast<double>(terms) + q;
  return sum + std::pow(tail_start, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(tail_start, -s);
}

// Check-in stream whose node-addition events trace e = round(n^alpha): before
// each new venue joins, fresh edges among existing venues top the edge count
// up so that the joining transition lands on the target. One user per
// transition keeps every transition independent.
inline placenet::CheckinStream densification_stream(double alpha, std::size_t n_final, placenet::Timestamp t0) {
  auto reg = grid_registry(n_final);
  std::vector<placenet::CheckinEvent> events;
  placenet::Timestamp t = t0;
  std::size_t user = 0;
  auto move = [&](VenueIndex a, VenueIndex b) {
    const auto id = "d" + std::to_string(user++);
    events.push_back({id, a, t});
    events.push_back({id, b, t + 60});
    t += 120;
  };
  std::set<std::pair<VenueIndex, VenueIndex>> present{{0, 1}};
  std::deque<std::pair<VenueIndex, VenueIndex>> unused{{1, 0}};
  move(0, 1);
  for (std::size_t n = 3; n <= n_final; ++n) {
    const auto target = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), alpha)));
    while (present.size() + 1 < target && !unused.empty()) {
      const auto pair = unused.front();
      unused.pop_front();
      if (present.insert(pair).second) move(pair.first, pair.second);
    }
    const auto joining = static_cast<VenueIndex>(n - 1);
    const auto anchor = static_cast<VenueIndex>((n * 7919) % (n - 1));
    present.insert({anchor, joining});
    move(anchor, joining);
    for (VenueIndex v = 0; v < joining; ++v) {
      unused.push_back({joining, v});
      if (v != anchor) unused.push_back({v, joining});
    }
  }
  return placenet::CheckinStream(std::move(events), std::move(reg));
}

// Clustered fixture: ring of cliques, each clique joined to the next by one edge.
inline PlaceGraph ring_of_cliques(std::size_t cliques, std::size_t size) {
  std::vector<placenet::WeightedEdge> edges;
  for (std::size_t c = 0; c < cliques; ++c) {
    const auto base = static_cast<VenueIndex>(c * size);
    for (VenueIndex a = 0; a < size; ++a)
      for (VenueIndex b = a + 1; b < size; ++b) edges.push_back({base + a, base + b, 1});
    const auto next = static_cast<VenueIndex>(((c + 1) % cliques) * size);
    edges.push_back({base, next + 1, 1});
  }
  return PlaceGraph({0, 1}, std::move(edges));
}

}  // namespace oracle
