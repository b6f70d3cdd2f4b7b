#include "placenet/report.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace placenet {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

nlohmann::json histogram_json(const Histogram& h) {
  auto out = nlohmann::json::array();
  for (const auto& [value, count] : h) out.push_back({value, count});
  return out;
}

nlohmann::json fraction_json(const std::optional<Fraction>& f) {
  if (!f) return nullptr;
  return {{"numerator", f->numerator}, {"denominator", f->denominator}, {"value", f->value()}};
}

nlohmann::json topology_json(const TopologyReport& r) {
  nlohmann::json j = {{"n_nodes", r.n_nodes},
                      {"n_edges", r.n_edges},
                      {"n_undirected_edges", r.n_undirected_edges},
                      {"mean_clustering", r.mean_clustering},
                      {"diameter_estimate", r.diameter_estimate},
                      {"diameter_sampled", r.diameter_sampled},
                      {"path_sources", r.path_sources},
                      {"mean_shortest_path", r.mean_shortest_path},
                      {"mean_degree", r.mean_degree},
                      {"giant_component_fraction", r.giant_component_fraction}};
  j["assortativity"] = r.assortativity ? nlohmann::json(*r.assortativity) : nlohmann::json(nullptr);
  if (r.null_model) {
    j["null_model_clustering"] = r.null_model->clustering;
    j["null_diameter"] = r.null_model->diameter;
    j["null_mean_path"] = r.null_model->mean_path;
    j["null_model_seeds"] = r.null_model->seeds;
  } else {
    j["null_model_clustering"] = nullptr;
    j["null_diameter"] = nullptr;
    j["null_mean_path"] = nullptr;
    j["null_model_seeds"] = 0;
  }
  return j;
}

nlohmann::json power_law_json(const PowerLawFit& fit) {
  return {{"exponent", fit.exponent}, {"x_min", fit.x_min}, {"n_tail", fit.n_tail}, {"ks_statistic", fit.ks_statistic}};
}

nlohmann::json eval_report_json(const EvalReport& r) {
  nlohmann::json auc = nlohmann::json::object();
  for (const auto& [name, value] : r.auc) auc[name] = value;
  return {{"train_index", r.train_index},
          {"train_window", {r.train_window.start, r.train_window.end}},
          {"test_window", {r.test_window.start, r.test_window.end}},
          {"positives", r.positives},
          {"negatives", r.negatives},
          {"auc", auc}};
}

void write_growth_csv(std::ostream& out, const GrowthCurve& curve) {
  out << "nodes,edges\n";
  for (const auto& p : curve.points) out << p.nodes << ',' << p.edges << '\n';
}

void write_features_csv(std::ostream& out, const EvalResult& result) {
  for (const auto name : PairFeatures::kFieldNames) out << name << ',';
  out << "label\n";
  for (std::size_t k = 0; k < result.features.size(); ++k) {
    for (const auto v : result.features[k].values()) out << format_number(v) << ',';
    out << result.candidates.labels[k] << '\n';
  }
}

void write_scores_csv(std::ostream& out, const EvalResult& result, const VenueRegistry& registry) {
  out << "origin,dest,label";
  for (const auto& name : result.score_names) out << ',' << name;
  out << '\n';
  for (std::size_t k = 0; k < result.candidates.pairs.size(); ++k) {
    const auto& p = result.candidates.pairs[k];
    out << registry.at(p.origin).id << ',' << registry.at(p.dest).id << ',' << result.candidates.labels[k];
    for (Eigen::Index c = 0; c < result.scores.cols(); ++c) {
      out << ',' << format_number(result.scores(static_cast<Eigen::Index>(k), c));
    }
    out << '\n';
  }
}

}  // namespace placenet
