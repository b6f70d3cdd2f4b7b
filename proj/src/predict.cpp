#include "placenet/predict.hpp"

#include <cmath>

#include "placenet/error.hpp"
#include "placenet/geo.hpp"

namespace placenet {

namespace {

const std::vector<std::size_t> kNoNeighbors;

const std::vector<std::size_t>& neighbors_or_empty(const Topology& topo, std::optional<std::size_t> k) {
  return k ? topo.neighbors(*k) : kNoNeighbors;
}

constexpr std::array<std::string_view, 13> kPredictorNames = {
    "CommonNeighbors", "NeighborOverlap", "AdamicAdar", "DegreeProduct", "InOutDegreeProduct",
    "PlaceRank",       "EdgeWeight",      "GeoDistance", "Popularity",   "DiurnalSim",
    "WeeklySim",       "Gravity",         "DynamicGravity"};

}  // namespace

TriadicScores triadic_scores(const Topology& topo, VenueIndex i, VenueIndex j) {
  if (i == j) throw DomainError("triadic scores need two distinct venues");
  const auto li = topo.local(i);
  const auto lj = topo.local(j);
  const auto& gi = neighbors_or_empty(topo, li);
  const auto& gj = neighbors_or_empty(topo, lj);

  TriadicScores s;
  std::size_t common = 0;
  double aa = 0.0;
  auto a = gi.begin();
  auto b = gj.begin();
  while (a != gi.end() && b != gj.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      // z neighbours both i and j, so |Γ_z| >= 2 and the log is positive.
      aa += 1.0 / std::log(static_cast<double>(topo.degree(*a)));
      ++a;
      ++b;
    }
  }
  const auto uni = gi.size() + gj.size() - common;
  s.common_neighbors = static_cast<double>(common);
  s.neighbor_overlap = uni ? static_cast<double>(common) / static_cast<double>(uni) : 0.0;
  s.adamic_adar = aa + 1.0;
  return s;
}

CentralityScores centrality_scores(const Topology& topo, const PageRank& ranks, VenueIndex i, VenueIndex j) {
  const auto li = topo.local(i);
  const auto lj = topo.local(j);
  CentralityScores s;
  if (!li || !lj) return s;
  s.degree_product = static_cast<double>(topo.degree(*li)) * static_cast<double>(topo.degree(*lj));
  s.in_out_degree_product =
      static_cast<double>(topo.out_neighbors(*li).size()) * static_cast<double>(topo.in_neighbors(*lj).size());
  s.place_rank = ranks.score(i) * ranks.score(j);
  return s;
}

MobilityScores mobility_scores(const ActivityProfiles& day, const ActivityProfiles& week,
                               const VenueRegistry& registry, VenueIndex i, VenueIndex j) {
  if (i >= registry.size() || j >= registry.size()) throw DomainError("venue has no registry coordinates");
  if (day.T != 24 || week.T != 168) throw DomainError("mobility scores need T = 24 and T = 168 profiles");
  if (i >= day.venue_count() || j >= day.venue_count() || i >= week.venue_count() || j >= week.venue_count()) {
    throw DomainError("venue has no activity profile");
  }
  const auto& vi = registry[i];
  const auto& vj = registry[j];
  MobilityScores s;
  s.geo_distance_km = floored_distance_km(vi.lat, vi.lon, vj.lat, vj.lon);
  s.popularity_product = week.popularity(i) * week.popularity(j);
  s.diurnal_sim = cosine_similarity(day.checkins.row(i), day.checkins.row(j));
  s.weekly_sim = cosine_similarity(week.checkins.row(i), week.checkins.row(j));
  return s;
}

double dynamic_gravity_score(const ActivityProfiles& profiles, double adamic_adar, VenueIndex i, VenueIndex j,
                             double distance_km, int T, double beta) {
  if (profiles.T != T) {
    throw DomainError("DynamicGravity expects T = " + std::to_string(T) + " profiles, got T = " +
                      std::to_string(profiles.T));
  }
  if (i >= profiles.venue_count() || j >= profiles.venue_count()) throw DomainError("venue has no activity profile");
  return dynamic_gravity_score(profiles.out_strength.row(i), profiles.in_strength.row(j), adamic_adar, distance_km,
                               beta);
}

double edge_weight_baseline(const PlaceGraph& prev_graph, VenueIndex i, VenueIndex j) {
  return static_cast<double>(prev_graph.weight(i, j));
}

FeatureContext::FeatureContext(const PlaceGraph& graph_, const CheckinStream& stream, Seconds utc_offset, int T_,
                               double beta_, Seconds gap_threshold, int pagerank_max_iter)
    : graph(graph_),
      registry(stream.registry()),
      topology(graph_),
      ranks(graph_.empty() ? PageRank{} : pagerank(graph_, 0.85, 1e-9, pagerank_max_iter)),
      day(activity_profiles(stream, graph_, 24, utc_offset, gap_threshold)),
      week(activity_profiles(stream, graph_, 168, utc_offset, gap_threshold)),
      strengths(T_ == 168 ? week : activity_profiles(stream, graph_, T_, utc_offset, gap_threshold)),
      T(T_),
      beta(beta_) {}

PairFeatures compute_features(const FeatureContext& ctx, VenueIndex i, VenueIndex j) {
  const auto tri = triadic_scores(ctx.topology, i, j);
  const auto cen = centrality_scores(ctx.topology, ctx.ranks, i, j);
  const auto mob = mobility_scores(ctx.day, ctx.week, ctx.registry, i, j);
  PairFeatures f;
  f.common_neighbors = tri.common_neighbors;
  f.neighbor_overlap = tri.neighbor_overlap;
  f.adamic_adar = tri.adamic_adar;
  f.degree_product = cen.degree_product;
  f.in_out_degree_product = cen.in_out_degree_product;
  f.place_rank = cen.place_rank;
  f.geo_distance_km = mob.geo_distance_km;
  f.popularity_product = mob.popularity_product;
  f.diurnal_sim = mob.diurnal_sim;
  f.weekly_sim = mob.weekly_sim;
  f.edge_weight_prev = edge_weight_baseline(ctx.graph, i, j);
  f.gravity = gravity_score(ctx.week.popularity(i), ctx.week.popularity(j), mob.geo_distance_km, ctx.beta);
  f.dynamic_gravity = dynamic_gravity_score(ctx.strengths, tri.adamic_adar, i, j, mob.geo_distance_km, ctx.T, ctx.beta);
  return f;
}

std::string_view predictor_name(Predictor p) { return kPredictorNames[static_cast<std::size_t>(p)]; }

std::optional<Predictor> parse_predictor(std::string_view name) {
  for (std::size_t k = 0; k < kPredictorNames.size(); ++k) {
    if (kPredictorNames[k] == name) return static_cast<Predictor>(k);
  }
  return std::nullopt;
}

double predictor_score(Predictor p, const PairFeatures& f) {
  switch (p) {
    case Predictor::common_neighbors: return f.common_neighbors;
    case Predictor::neighbor_overlap: return f.neighbor_overlap;
    case Predictor::adamic_adar: return f.adamic_adar;
    case Predictor::degree_product: return f.degree_product;
    case Predictor::in_out_degree_product: return f.in_out_degree_product;
    case Predictor::place_rank: return f.place_rank;
    case Predictor::edge_weight: return f.edge_weight_prev;
    case Predictor::geo_distance: return -f.geo_distance_km;
    case Predictor::popularity: return f.popularity_product;
    case Predictor::diurnal_sim: return f.diurnal_sim;
    case Predictor::weekly_sim: return f.weekly_sim;
    case Predictor::gravity: return f.gravity;
    case Predictor::dynamic_gravity: return f.dynamic_gravity;
  }
  throw DomainError("unknown predictor");
}

Eigen::VectorXd logistic_inputs(const PairFeatures& f) {
  Eigen::VectorXd x(kLogisticInputs);
  x << f.common_neighbors, f.neighbor_overlap, f.adamic_adar, f.degree_product, f.in_out_degree_product,
      f.place_rank, f.geo_distance_km, f.popularity_product, f.diurnal_sim, f.weekly_sim;
  return x;
}

}  // namespace placenet
