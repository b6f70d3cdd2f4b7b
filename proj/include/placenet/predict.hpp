#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <string_view>

#include "placenet/netstats.hpp"
#include "placenet/snapshot.hpp"
#include "placenet/topology.hpp"

namespace placenet {

/// Every per-pair signal used by the predictors, for an ordered pair (i, j).
struct PairFeatures {
  double common_neighbors = 0.0;
  double neighbor_overlap = 0.0;
  double adamic_adar = 1.0;  // extended form, always >= 1
  double degree_product = 0.0;
  double in_out_degree_product = 0.0;
  double place_rank = 0.0;
  double geo_distance_km = 0.0;
  double popularity_product = 0.0;
  double diurnal_sim = 0.0;
  double weekly_sim = 0.0;
  double edge_weight_prev = 0.0;
  double gravity = 0.0;
  double dynamic_gravity = 0.0;

  static constexpr std::array<std::string_view, 13> kFieldNames = {
      "common_neighbors", "neighbor_overlap",   "adamic_adar", "degree_product", "in_out_degree_product",
      "place_rank",       "geo_distance_km",    "popularity_product", "diurnal_sim", "weekly_sim",
      "edge_weight_prev", "gravity",            "dynamic_gravity"};

  std::array<double, 13> values() const {
    return {common_neighbors, neighbor_overlap,   adamic_adar, degree_product, in_out_degree_product,
            place_rank,       geo_distance_km,    popularity_product, diurnal_sim, weekly_sim,
            edge_weight_prev, gravity,            dynamic_gravity};
  }
};

struct TriadicScores {
  double common_neighbors = 0.0;
  double neighbor_overlap = 0.0;
  double adamic_adar = 1.0;
};

/// Neighbourhoods on the undirected projection. Adamic-Adar is the extended form
/// sum 1/ln|Γ_z| + 1. Venues outside the graph have empty neighbourhoods.
TriadicScores triadic_scores(const Topology& topo, VenueIndex i, VenueIndex j);

struct CentralityScores {
  double degree_product = 0.0;
  double in_out_degree_product = 0.0;
  double place_rank = 0.0;
};

/// Degree product (undirected), |Γ_i^+|·|Γ_j^-|, and rw(i)·rw(j). Venues outside
/// the graph score 0; a graph node missing from `ranks` is an error.
CentralityScores centrality_scores(const Topology& topo, const PageRank& ranks, VenueIndex i, VenueIndex j);

template <typename DerivedA, typename DerivedB>
double cosine_similarity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

struct MobilityScores {
  double geo_distance_km = 0.0;
  double popularity_product = 0.0;
  double diurnal_sim = 0.0;
  double weekly_sim = 0.0;
};

/// Floored haversine distance, check-in popularity product, and cosine
/// similarity of the T = 24 and T = 168 check-in vectors.
MobilityScores mobility_scores(const ActivityProfiles& day, const ActivityProfiles& week,
                               const VenueRegistry& registry, VenueIndex i, VenueIndex j);

template <typename Scalar>
Scalar gravity_score(Scalar popularity_i, Scalar popularity_j, Scalar distance_km, Scalar beta = Scalar(1)) {
  return popularity_i * popularity_j / std::pow(distance_km, beta);
}

/// a_ij · <out_i, in_j> / d^beta over the hour-slot strength vectors.
template <typename DerivedA, typename DerivedB>
double dynamic_gravity_score(const Eigen::MatrixBase<DerivedA>& out_strength_i,
                             const Eigen::MatrixBase<DerivedB>& in_strength_j, double adamic_adar,
                             double distance_km, double beta = 1.0) {
  if (out_strength_i.size() != in_strength_j.size()) throw DomainError("strength vectors differ in length");
  return adamic_adar * out_strength_i.dot(in_strength_j) / std::pow(distance_km, beta);
}

/// Profile-based form. Throws when profiles.T differs from T.
double dynamic_gravity_score(const ActivityProfiles& profiles, double adamic_adar, VenueIndex i, VenueIndex j,
                             double distance_km, int T = 168, double beta = 1.0);

/// Directed weight of (i, j) in the previous snapshot, 0 when absent.
double edge_weight_baseline(const PlaceGraph& prev_graph, VenueIndex i, VenueIndex j);

/// Everything the per-pair features need from one training snapshot.
struct FeatureContext {
  FeatureContext(const PlaceGraph& graph, const CheckinStream& stream, Seconds utc_offset, int T = 168,
                 double beta = 1.0, Seconds gap_threshold = kDefaultGapThreshold, int pagerank_max_iter = 100);

  const PlaceGraph& graph;
  const VenueRegistry& registry;
  Topology topology;
  PageRank ranks;
  ActivityProfiles day;
  ActivityProfiles week;
  ActivityProfiles strengths;  // profiles at the DynamicGravity resolution T
  int T;
  double beta;
};

PairFeatures compute_features(const FeatureContext& ctx, VenueIndex i, VenueIndex j);

enum class Predictor {
  common_neighbors,
  neighbor_overlap,
  adamic_adar,
  degree_product,
  in_out_degree_product,
  place_rank,
  edge_weight,
  geo_distance,
  popularity,
  diurnal_sim,
  weekly_sim,
  gravity,
  dynamic_gravity,
};

inline constexpr std::array<Predictor, 13> kAllPredictors = {
    Predictor::common_neighbors, Predictor::neighbor_overlap, Predictor::adamic_adar,
    Predictor::degree_product,   Predictor::in_out_degree_product, Predictor::place_rank,
    Predictor::edge_weight,      Predictor::geo_distance,     Predictor::popularity,
    Predictor::diurnal_sim,      Predictor::weekly_sim,       Predictor::gravity,
    Predictor::dynamic_gravity};

std::string_view predictor_name(Predictor p);
std::optional<Predictor> parse_predictor(std::string_view name);

/// Ranking score: higher means a link is more likely. GeoDistance ranks closer
/// pairs higher, so its score is the negated distance.
double predictor_score(Predictor p, const PairFeatures& f);

/// Inputs of the supervised model: the network and mobility features, in
/// PairFeatures order from common_neighbors to weekly_sim.
inline constexpr int kLogisticInputs = 10;
Eigen::VectorXd logistic_inputs(const PairFeatures& f);

}  // namespace placenet
