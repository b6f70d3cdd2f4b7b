#include <Eigen/Geometry>

#include "doctest.h"
#include "oracles.hpp"
#include "placenet/error.hpp"
#include "placenet/geo.hpp"
#include "placenet/predict.hpp"

using namespace placenet;
using doctest::Approx;

namespace {

// Central angle from 3-D unit vectors, atan2 form.
double vector_distance_km(double lat1, double lon1, double lat2, double lon2) {
  auto unit = [](double lat, double lon) {
    const double r = M_PI / 180.0;
    return Eigen::Vector3d(std::cos(lat * r) * std::cos(lon * r), std::cos(lat * r) * std::sin(lon * r),
                           std::sin(lat * r));
  };
  const auto p = unit(lat1, lon1);
  const auto q = unit(lat2, lon2);
  return 6371.0088 * std::atan2(p.cross(q).norm(), p.dot(q));
}

PlaceGraph undirected_graph(std::initializer_list<std::pair<VenueIndex, VenueIndex>> pairs) {
  std::vector<WeightedEdge> edges;
  for (const auto& [a, b] : pairs) edges.push_back({a, b, 1});
  return PlaceGraph({0, 1}, std::move(edges));
}

constexpr Timestamp kStart = 1356998400;

// Small stream with repeated movements among 12 venues over two days.
CheckinStream toy_stream() {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> venue(0, 11);
  std::uniform_int_distribution<Seconds> gap(60, 2 * kHour);
  std::vector<CheckinEvent> events;
  for (int u = 0; u < 15; ++u) {
    Timestamp t = kStart + u * 1800;
    for (int k = 0; k < 30; ++k) {
      events.push_back({"u" + std::to_string(u), static_cast<VenueIndex>(venue(rng)), t});
      t += gap(rng);
    }
  }
  return CheckinStream(std::move(events), oracle::grid_registry(12));
}

}  // namespace

TEST_CASE("haversine: London to Paris") {
  const double d = haversine_km(51.5007, -0.1246, 48.8584, 2.2945);
  CHECK(d == Approx(340.54).epsilon(0.005));
  CHECK(d == Approx(vector_distance_km(51.5007, -0.1246, 48.8584, 2.2945)).epsilon(1e-10));
}

TEST_CASE("haversine: agrees with the vector form on random pairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-179, 179);
  for (int k = 0; k < 200; ++k) {
    const double a = lat(rng), b = lon(rng), c = lat(rng), d = lon(rng);
    CHECK(haversine_km(a, b, c, d) == Approx(vector_distance_km(a, b, c, d)).epsilon(1e-9));
  }
  CHECK(floored_distance_km(51.5, 0.0, 51.5, 0.0) == kDistanceFloorKm);
}

TEST_CASE("triadic: hand examples") {
  const Topology t(undirected_graph({{0, 2}, {1, 2}}));
  const auto s = triadic_scores(t, 0, 1);
  CHECK(s.common_neighbors == 1);
  CHECK(s.neighbor_overlap == 1.0);
  CHECK(s.adamic_adar == Approx(1.0 / std::log(2.0) + 1.0).epsilon(1e-15));
  CHECK(s.adamic_adar == Approx(2.4427).epsilon(1e-4));

  const Topology none(undirected_graph({{0, 2}, {1, 3}}));
  const auto n = triadic_scores(none, 0, 1);
  CHECK(n.common_neighbors == 0);
  CHECK(n.neighbor_overlap == 0.0);
  CHECK(n.adamic_adar == 1.0);
  CHECK_THROWS_AS(triadic_scores(t, 1, 1), DomainError);
  CHECK(triadic_scores(t, 0, 9).adamic_adar == 1.0);
}

TEST_CASE("triadic: extended Adamic-Adar is above one iff neighbours are shared") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = oracle::random_graph(15, 0.15, seed);
    const Topology t(g);
    for (const auto i : g.nodes()) {
      for (const auto j : g.nodes()) {
        if (i == j) continue;
        const auto s = triadic_scores(t, i, j);
        CHECK(s.adamic_adar >= 1.0);
        CHECK((s.adamic_adar > 1.0) == (s.common_neighbors >= 1));
      }
    }
  }
}

TEST_CASE("centrality: products and isolation") {
  const PlaceGraph g({0, 1}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {4, 5, 1}, {6, 5, 1}, {5, 0, 1}});
  const Topology t(g);
  const auto ranks = pagerank(g, 0.85, 1e-12, 1000);
  CHECK(centrality_scores(t, ranks, 0, 5).in_out_degree_product == 6);
  const auto sym_a = centrality_scores(t, ranks, 0, 4);
  const auto sym_b = centrality_scores(t, ranks, 4, 0);
  CHECK(sym_a.degree_product == sym_b.degree_product);
  CHECK(sym_a.in_out_degree_product != sym_b.in_out_degree_product);
  CHECK(sym_a.place_rank == Approx(ranks.score(0) * ranks.score(4)));
  const auto iso = centrality_scores(t, ranks, 0, 9);
  CHECK(iso.degree_product == 0);
  CHECK(iso.in_out_degree_product == 0);
  CHECK(iso.place_rank == 0);
}

TEST_CASE("cosine similarity") {
  Eigen::VectorXd a(4), b(4), z = Eigen::VectorXd::Zero(4);
  a << 1, 0, 1, 0;
  b << 0, 1, 0, 0;
  CHECK(cosine_similarity(a, a) == Approx(1.0));
  CHECK(cosine_similarity(a, b) == 0.0);
  CHECK(cosine_similarity(a, z) == 0.0);
}

TEST_CASE("gravity: formula") {
  CHECK(gravity_score(10.0, 20.0, 2.0) == 100.0);
  CHECK(gravity_score(0.0, 20.0, 2.0) == 0.0);
  CHECK(gravity_score(10.0, 20.0, 7.3, 0.0) == 200.0);
}

TEST_CASE("dynamic gravity: formula and disjoint support") {
  Eigen::Vector2d out(2, 0), in(3, 1);
  CHECK(dynamic_gravity_score(out, in, 2.0, 1.0) == 12.0);
  Eigen::VectorXd oi = Eigen::VectorXd::Zero(24), ij = Eigen::VectorXd::Zero(24);
  oi[9] = 4;
  ij[20] = 7;
  CHECK(dynamic_gravity_score(oi, ij, 5.0, 0.3) == 0.0);
  Eigen::VectorXd shorter = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(dynamic_gravity_score(oi, shorter, 1.0, 1.0), DomainError);
}

TEST_CASE("dynamic gravity: degenerates to gravity with one bin") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pop(1, 500), dist(0.05, 20);
  for (int k = 0; k < 100; ++k) {
    const double ci = std::round(pop(rng)), cj = std::round(pop(rng)), d = dist(rng);
    Eigen::Matrix<double, 1, 1> oi(ci), ij(cj);
    CHECK(dynamic_gravity_score(oi, ij, 1.0, d) == gravity_score(ci, cj, d));
  }
}

TEST_CASE("edge weight baseline is directed") {
  const PlaceGraph g({0, 1}, {{0, 1, 7}});
  CHECK(edge_weight_baseline(g, 0, 1) == 7);
  CHECK(edge_weight_baseline(g, 1, 0) == 0);
  CHECK(edge_weight_baseline(g, 0, 2) == 0);
}

TEST_CASE("feature context: scores are finite and consistent") {
  const auto s = toy_stream();
  const auto graphs = window_stream(s, 2 * kDay, kStart);
  const auto& g = graphs.front();
  const FeatureContext ctx(g, s, 0);
  for (const auto i : g.nodes()) {
    for (const auto j : g.nodes()) {
      if (i == j) continue;
      const auto f = compute_features(ctx, i, j);
      for (const auto v : f.values()) CHECK(std::isfinite(v));
      CHECK(f.gravity == Approx(f.popularity_product / f.geo_distance_km));
      const double dg = f.adamic_adar * ctx.week.out_strength.row(i).dot(ctx.week.in_strength.row(j)) /
                        f.geo_distance_km;
      CHECK(f.dynamic_gravity == Approx(dg));
      CHECK(predictor_score(Predictor::geo_distance, f) == -f.geo_distance_km);
      CHECK(predictor_score(Predictor::edge_weight, f) == static_cast<double>(g.weight(i, j)));
      CHECK(logistic_inputs(f).size() == kLogisticInputs);
    }
  }
  CHECK_THROWS_AS(dynamic_gravity_score(ctx.day, 1.0, 0, 1, 1.0, 168), DomainError);
}

TEST_CASE("feature context: scaling check-ins scales gravity scores by k squared") {
  const auto s = toy_stream();
  std::vector<CheckinEvent> tripled;
  for (const auto& e : s.events()) {
    for (int copy = 0; copy < 3; ++copy) tripled.push_back({e.user + "_" + std::to_string(copy), e.venue, e.timestamp});
  }
  const CheckinStream s3(tripled, s.registry_ptr());
  const auto g1 = window_stream(s, 2 * kDay, kStart).front();
  const auto g3 = window_stream(s3, 2 * kDay, kStart).front();
  const FeatureContext c1(g1, s, 0);
  const FeatureContext c3(g3, s3, 0);
  for (const auto i : g1.nodes()) {
    for (const auto j : g1.nodes()) {
      if (i == j) continue;
      const auto f1 = compute_features(c1, i, j);
      const auto f3 = compute_features(c3, i, j);
      CHECK(f3.gravity == Approx(9.0 * f1.gravity));
      CHECK(f3.dynamic_gravity == Approx(9.0 * f1.dynamic_gravity));
    }
  }
}

TEST_CASE("feature context: relabeling venues leaves dynamic gravity unchanged") {
  const auto s = toy_stream();
  // Reverse the registry order by renaming ids so indices map v -> 11 - v.
  std::vector<Venue> renamed;
  for (VenueIndex v = 0; v < 12; ++v) {
    auto venue = s.registry()[v];
    venue.id = oracle::venue_name(11 - v);
    renamed.push_back(venue);
  }
  const auto reg2 = std::make_shared<const VenueRegistry>(renamed);
  std::vector<CheckinEvent> events;
  for (const auto& e : s.events()) events.push_back({e.user, static_cast<VenueIndex>(11 - e.venue), e.timestamp});
  const CheckinStream s2(events, reg2);
  const auto g1 = window_stream(s, 2 * kDay, kStart).front();
  const auto g2 = window_stream(s2, 2 * kDay, kStart).front();
  const FeatureContext c1(g1, s, 0);
  const FeatureContext c2(g2, s2, 0);
  for (const auto i : g1.nodes()) {
    for (const auto j : g1.nodes()) {
      if (i == j) continue;
      CHECK(compute_features(c1, i, j).dynamic_gravity ==
            Approx(compute_features(c2, 11 - i, 11 - j).dynamic_gravity).epsilon(1e-12));
    }
  }
}

TEST_CASE("predictor names round trip") {
  for (const auto p : kAllPredictors) CHECK(parse_predictor(predictor_name(p)) == p);
  CHECK(predictor_name(Predictor::dynamic_gravity) == "DynamicGravity");
  CHECK_FALSE(parse_predictor("Nope").has_value());
}
