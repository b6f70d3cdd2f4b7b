#include "placenet/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "placenet/error.hpp"

namespace placenet {

namespace {

Timestamp floor_div(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Timestamp floor_mod(Timestamp a, Timestamp b) { return a - floor_div(a, b) * b; }

}  // namespace

PlaceGraph::PlaceGraph(TimeWindow window, std::vector<WeightedEdge> edges)
    : window_(window), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.key() < b.key(); });
  std::vector<WeightedEdge> merged;
  merged.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.origin == e.dest) throw DomainError("place graphs have no self-loops");
    if (e.weight <= 0) throw DomainError("edge weights must be positive");
    if (!merged.empty() && merged.back().key() == e.key()) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  edges_ = std::move(merged);
  nodes_.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    nodes_.push_back(e.origin);
    nodes_.push_back(e.dest);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
}

bool PlaceGraph::has_node(VenueIndex v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }

bool PlaceGraph::has_edge(VenueIndex origin, VenueIndex dest) const { return weight(origin, dest) > 0; }

std::int64_t PlaceGraph::weight(VenueIndex origin, VenueIndex dest) const {
  const EdgeKey key{origin, dest};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                                   [](const WeightedEdge& e, const EdgeKey& k) { return e.key() < k; });
  return (it != edges_.end() && it->key() == key) ? it->weight : 0;
}

std::int64_t PlaceGraph::total_weight() const {
  return std::accumulate(edges_.begin(), edges_.end(), std::int64_t{0},
                         [](std::int64_t acc, const WeightedEdge& e) { return acc + e.weight; });
}

std::vector<Transition> extract_transitions(const CheckinStream& stream, Seconds gap_threshold) {
  std::vector<Transition> out;
  const auto& ev = stream.events();
  for (std::size_t k = 1; k < ev.size(); ++k) {
    const auto& prev = ev[k - 1];
    const auto& cur = ev[k];
    if (prev.user != cur.user || prev.venue == cur.venue) continue;
    const auto gap = cur.timestamp - prev.timestamp;
    if (gap <= 0 || gap > gap_threshold) continue;
    out.push_back({prev.venue, cur.venue, cur.user, prev.timestamp, cur.timestamp});
  }
  return out;
}

PlaceGraph build_graph(std::span<const Transition> transitions, TimeWindow window) {
  std::vector<WeightedEdge> edges;
  for (const auto& t : transitions) {
    if (window.contains(t.t_origin)) edges.push_back({t.origin, t.dest, 1});
  }
  return PlaceGraph(window, std::move(edges));
}

std::vector<TimeWindow> make_windows(const CheckinStream& stream, Seconds window_length, Timestamp t0) {
  if (window_length <= 0) throw DomainError("window length must be positive");
  std::size_t count = 1;
  if (!stream.empty() && stream.max_time() >= t0) {
    count = static_cast<std::size_t>((stream.max_time() - t0) / window_length) + 1;
  }
  std::vector<TimeWindow> windows;
  windows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto start = t0 + static_cast<Timestamp>(k) * window_length;
    windows.push_back({start, start + window_length});
  }
  return windows;
}

std::vector<PlaceGraph> window_stream(const CheckinStream& stream, Seconds window_length, Timestamp t0,
                                      Seconds gap_threshold) {
  const auto windows = make_windows(stream, window_length, t0);
  const auto transitions = extract_transitions(stream, gap_threshold);
  std::vector<PlaceGraph> graphs;
  graphs.reserve(windows.size());
  for (const auto& w : windows) graphs.push_back(build_graph(transitions, w));
  return graphs;
}

int hour_slot(Timestamp t, Seconds utc_offset, int T) {
  const Timestamp local = t + utc_offset;
  const auto hour = static_cast<int>(floor_mod(local, kDay) / kHour);
  if (T == 24) return hour;
  if (T == 168) {
    // 1970-01-01 was a Thursday, i.e. weekday 3 when Monday is 0.
    const auto weekday = static_cast<int>(floor_mod(floor_div(local, kDay) + 3, 7));
    return weekday * 24 + hour;
  }
  throw DomainError("hour bins must be 24 or 168, got " + std::to_string(T));
}

ActivityProfiles activity_profiles(const CheckinStream& stream, const PlaceGraph& graph, int T,
                                   Seconds utc_offset, Seconds gap_threshold) {
  if (T != 24 && T != 168) throw DomainError("hour bins must be 24 or 168, got " + std::to_string(T));
  const auto n = static_cast<Eigen::Index>(stream.registry().size());
  ActivityProfiles p;
  p.T = T;
  p.checkins = Eigen::MatrixXd::Zero(n, T);
  p.out_strength = Eigen::MatrixXd::Zero(n, T);
  p.in_strength = Eigen::MatrixXd::Zero(n, T);
  const auto& window = graph.window();
  for (const auto& e : stream.events()) {
    if (window.contains(e.timestamp)) p.checkins(e.venue, hour_slot(e.timestamp, utc_offset, T)) += 1.0;
  }
  for (const auto& t : extract_transitions(stream, gap_threshold)) {
    if (!window.contains(t.t_origin) || !graph.has_edge(t.origin, t.dest)) continue;
    p.out_strength(t.origin, hour_slot(t.t_origin, utc_offset, T)) += 1.0;
    p.in_strength(t.dest, hour_slot(t.t_dest, utc_offset, T)) += 1.0;
  }
  return p;
}

int peak_hour(const ActivityProfiles& day_profiles, VenueIndex v) {
  if (day_profiles.T != 24) throw DomainError("peak hour needs T = 24 profiles");
  if (v >= day_profiles.venue_count()) throw DomainError("no profile for venue index " + std::to_string(v));
  Eigen::Index best = 0;
  day_profiles.checkins.row(v).maxCoeff(&best);  // first maximum on ties
  return static_cast<int>(best);
}

void write_snapshot_tsv(std::ostream& out, const PlaceGraph& graph, const VenueRegistry& registry) {
  for (const auto& e : graph.edges()) {
    out << registry.at(e.origin).id << '\t' << registry.at(e.dest).id << '\t' << e.weight << '\n';
  }
}

std::string snapshot_sidecar_json(const PlaceGraph& graph) {
  nlohmann::json j = {{"t_start", graph.window().start},
                      {"t_end", graph.window().end},
                      {"n_nodes", graph.node_count()},
                      {"n_edges", graph.edge_count()},
                      {"total_weight", graph.total_weight()}};
  return j.dump(2) + "\n";
}

PlaceGraph read_snapshot(const std::filesystem::path& tsv_path, const VenueRegistry& registry) {
  auto sidecar_path = tsv_path;
  sidecar_path.replace_extension(".json");
  std::ifstream sidecar(sidecar_path);
  if (!sidecar) throw Error("cannot open snapshot sidecar: " + sidecar_path.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(sidecar);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError("malformed snapshot sidecar " + sidecar_path.string() + ": " + ex.what(), 0);
  }
  const TimeWindow window{meta.at("t_start").get<Timestamp>(), meta.at("t_end").get<Timestamp>()};

  std::ifstream in(tsv_path);
  if (!in) throw Error("cannot open snapshot: " + tsv_path.string());
  std::vector<WeightedEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string origin, dest;
    std::int64_t weight = 0;
    if (!std::getline(fields, origin, '\t') || !std::getline(fields, dest, '\t') || !(fields >> weight)) {
      throw ParseError("expected origin<TAB>dest<TAB>weight in " + tsv_path.string(), line_no);
    }
    const auto o = registry.find(origin);
    const auto d = registry.find(dest);
    if (!o || !d) throw ParseError("snapshot references unknown venue", line_no);
    edges.push_back({*o, *d, weight});
  }
  return PlaceGraph(window, std::move(edges));
}

}  // namespace placenet
