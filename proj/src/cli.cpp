#include "placenet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "placenet/dynamics.hpp"
#include "placenet/error.hpp"
#include "placenet/ingest.hpp"
#include "placenet/netstats.hpp"
#include "placenet/powerlaw.hpp"
#include "placenet/report.hpp"

namespace fs = std::filesystem;

namespace placenet {

nlohmann::json RunConfig::to_json() const {
  nlohmann::json city_json = {{"n_venues", city.n_venues},
                              {"n_users", city.n_users},
                              {"lat_min", city.lat_min},
                              {"lat_max", city.lat_max},
                              {"lon_min", city.lon_min},
                              {"lon_max", city.lon_max},
                              {"zipf_exponent", city.zipf_exponent},
                              {"decay_exponent", city.decay_exponent},
                              {"decay_length_km", city.decay_length_km},
                              {"gap_median_hours", city.gap_median_hours},
                              {"gap_sigma", city.gap_sigma},
                              {"profile_floor", city.profile_floor},
                              {"span_days", city.span_days},
                              {"start", city.start},
                              {"utc_offset", city.utc_offset},
                              {"seed", city.seed}};
  for (int c = 0; c < kCategoryCount; ++c) {
    const auto name = std::string(to_string(static_cast<Category>(c)));
    city_json["category_mix"][name] = city.category_mix[static_cast<std::size_t>(c)];
    city_json["category_mass"][name] = city.category_mass[static_cast<std::size_t>(c)];
  }
  return {{"subcommand", subcommand},
          {"checkins", checkins},
          {"venues", venues},
          {"out", out},
          {"snapshots", snapshots},
          {"city_config", city_config},
          {"window_days", window_days},
          {"gap_hours", gap_hours},
          {"T", T},
          {"beta", beta},
          {"utc_offset_hours", utc_offset_hours},
          {"t0", t0 ? nlohmann::json(*t0) : nlohmann::json(nullptr)},
          {"seed", seed},
          {"negative_ratio", negative_ratio},
          {"candidates", candidates},
          {"new_edges_only", new_edges_only},
          {"null_model", null_model},
          {"null_seeds", null_seeds},
          {"sample_sources", sample_sources},
          {"dump_scores", dump_scores},
          {"threads", threads},
          {"pagerank_max_iter", pagerank_max_iter},
          {"city", city_json}};
}

namespace {

class Session {
 public:
  Session(RunConfig config, std::ostream& log) : cfg_(std::move(config)), log_(log) {
    if (cfg_.snapshots.empty()) cfg_.snapshots = (fs::path(cfg_.out) / "snapshots").string();
  }

  void execute() {
    const auto& sub = cfg_.subcommand;
    if (sub == "generate") generate();
    else if (sub == "snapshots") snapshots();
    else if (sub == "stats") stats();
    else if (sub == "dynamics") dynamics();
    else if (sub == "evaluate") evaluate();
    else if (sub == "pipeline") pipeline();
    else throw Error("unknown subcommand '" + sub + "'");
  }

  void remove_outputs() noexcept {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  Seconds gap() const { return static_cast<Seconds>(std::llround(cfg_.gap_hours * kHour)); }
  Seconds window_length() const { return static_cast<Seconds>(std::llround(cfg_.window_days * kDay)); }
  Seconds utc_offset() const { return static_cast<Seconds>(std::llround(cfg_.utc_offset_hours * kHour)); }

  nlohmann::json header() const { return {{"version", kVersion}, {"config", cfg_.to_json()}}; }

  void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path.string());
    out << content;
    if (!out) throw Error("failed writing output file: " + path.string());
    log_ << "wrote " << path.string() << '\n';
  }

  void write_json(const fs::path& path, const nlohmann::json& j) { write_file(path, j.dump(2) + "\n"); }

  static void require_file(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(std::string("missing required input ") + flag);
    if (!fs::exists(value)) throw Error(std::string("input not found for ") + flag + ": " + value);
  }

  const RegistryPtr& registry() {
    if (!registry_) {
      require_file(cfg_.venues, "--venues");
      registry_ = std::make_shared<const VenueRegistry>(load_registry(cfg_.venues));
      if (registry_->unknown_categories() > 0) {
        log_ << "warning: " << registry_->unknown_categories() << " venues with unknown category mapped to other\n";
      }
    }
    return registry_;
  }

  const CheckinStream& stream() {
    if (!stream_) {
      require_file(cfg_.checkins, "--checkins");
      auto loaded = load_checkins(cfg_.checkins, registry());
      if (loaded.counters.dropped() > 0) {
        log_ << "dropped " << loaded.counters.dropped_unknown_venue << " check-ins with unknown venues and "
             << loaded.counters.dropped_duplicate << " duplicates\n";
      }
      stream_ = std::move(loaded.stream);
    }
    return *stream_;
  }

  Timestamp t0() {
    if (cfg_.t0) return *cfg_.t0;
    const auto& s = stream();
    if (s.empty()) throw Error("check-in stream is empty: " + cfg_.checkins);
    return (s.min_time() / kDay) * kDay;
  }

  const std::vector<PlaceGraph>& load_snapshots() {
    if (graphs_) return *graphs_;
    const fs::path dir(cfg_.snapshots);
    if (!fs::is_directory(dir)) throw Error("snapshot directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (name.starts_with("snapshot_") && entry.path().extension() == ".tsv") files.push_back(entry.path());
    }
    if (files.empty()) throw Error("no snapshot_*.tsv files in " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<PlaceGraph> graphs;
    for (const auto& f : files) graphs.push_back(read_snapshot(f, *registry()));
    graphs_ = std::move(graphs);
    return *graphs_;
  }

  void generate() {
    const auto reg = std::make_shared<const VenueRegistry>(generate_city(cfg_.city));
    const auto checkins = generate_checkins(reg, cfg_.city);
    const fs::path out(cfg_.out);
    std::ostringstream venues_text, checkins_text;
    write_registry(venues_text, *reg);
    write_checkins(checkins_text, checkins);
    write_file(out / "venues.csv", venues_text.str());
    write_file(out / "checkins.jsonl", checkins_text.str());
    cfg_.venues = (out / "venues.csv").string();
    cfg_.checkins = (out / "checkins.jsonl").string();
    auto j = header();
    j["n_venues"] = reg->size();
    j["n_checkins"] = checkins.size();
    j["n_users"] = cfg_.city.n_users;
    j["time_span"] = {checkins.min_time(), checkins.max_time()};
    write_json(out / "generate.json", j);
  }

  void snapshots() {
    const auto& s = stream();
    const auto graphs = window_stream(s, window_length(), t0(), gap());
    const fs::path dir(cfg_.snapshots);
    auto summary = nlohmann::json::array();
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      char stem[32];
      std::snprintf(stem, sizeof stem, "snapshot_%03zu", k);
      std::ostringstream tsv;
      write_snapshot_tsv(tsv, graphs[k], *registry());
      write_file(dir / (std::string(stem) + ".tsv"), tsv.str());
      write_file(dir / (std::string(stem) + ".json"), snapshot_sidecar_json(graphs[k]));
      summary.push_back({{"index", k},
                         {"t_start", graphs[k].window().start},
                         {"t_end", graphs[k].window().end},
                         {"n_nodes", graphs[k].node_count()},
                         {"n_edges", graphs[k].edge_count()},
                         {"total_weight", graphs[k].total_weight()}});
    }
    auto j = header();
    j["snapshots"] = summary;
    write_json(fs::path(cfg_.out) / "snapshots.json", j);
    graphs_ = graphs;
  }

  static nlohmann::json try_fit(const std::vector<std::int64_t>& samples) {
    try {
      return power_law_json(fit_power_law(samples));
    } catch (const DomainError& ex) {
      return {{"error", ex.what()}};
    }
  }

  void stats() {
    const auto& graphs = load_snapshots();
    const auto& s = stream();
    TopologyOptions opts;
    opts.sample_sources = cfg_.sample_sources;
    opts.null_model_seeds = cfg_.null_model ? cfg_.null_seeds : 0;
    opts.seed = cfg_.seed;
    auto per_snapshot = nlohmann::json::array();
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const auto& g = graphs[k];
      nlohmann::json entry = {{"index", k}, {"t_start", g.window().start}, {"t_end", g.window().end}};
      if (g.empty()) {
        entry["empty"] = true;
        per_snapshot.push_back(entry);
        continue;
      }
      entry["empty"] = false;
      entry.update(topology_json(topology_report(g, opts)));
      const auto dist = degree_and_weight_distributions(g);
      entry["histograms"] = {{"in_degree", histogram_json(dist.in_degree)},
                             {"out_degree", histogram_json(dist.out_degree)},
                             {"undirected_degree", histogram_json(dist.undirected_degree)},
                             {"edge_weight", histogram_json(dist.edge_weight)}};
      std::vector<std::int64_t> weights;
      for (const auto& e : g.edges()) weights.push_back(e.weight);
      entry["power_law"] = {{"undirected_degree", try_fit(undirected_degrees(g))}, {"edge_weight", try_fit(weights)}};
      const auto categories = category_weight_profile(g, *registry());
      nlohmann::json cat_json = nlohmann::json::object();
      for (int c = 0; c < kCategoryCount; ++c) {
        cat_json[std::string(to_string(static_cast<Category>(c)))] =
            histogram_json(categories[static_cast<std::size_t>(c)]);
      }
      entry["category_edge_weights"] = cat_json;
      const auto day = activity_profiles(s, g, 24, utc_offset(), gap());
      const auto matrix = peak_hour_interaction_matrix(g, day);
      auto rows = nlohmann::json::array();
      for (int r = 0; r < 24; ++r) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < 24; ++c) row.push_back(matrix(r, c));
        rows.push_back(row);
      }
      entry["peak_hour_matrix"] = rows;
      per_snapshot.push_back(entry);
    }
    auto j = header();
    j["snapshots"] = per_snapshot;
    write_json(fs::path(cfg_.out) / "stats.json", j);
  }

  void dynamics() {
    const auto& graphs = load_snapshots();
    const auto& s = stream();
    auto j = header();
    auto pairs = nlohmann::json::array();
    for (std::size_t k = 0; k + 1 < graphs.size(); ++k) {
      auto persistence = nlohmann::json::array();
      for (std::int64_t w = 1; w <= 10; ++w) {
        persistence.push_back({{"w", w}, {"p", fraction_json(weight_persistence(graphs[k], graphs[k + 1], w))}});
      }
      const auto nodes = node_turnover(graphs, k, 1);
      pairs.push_back({{"t", k},
                       {"new_edge_probability", fraction_json(new_edge_probability(graphs[k], graphs[k + 1]))},
                       {"new_node_probability", fraction_json(nodes.new_node)},
                       {"weight_persistence", persistence}});
    }
    j["pairs"] = pairs;
    auto edge_long = nlohmann::json::array();
    auto node_long = nlohmann::json::array();
    for (std::size_t base = 0; base + 1 < graphs.size(); ++base) {
      const auto horizon = graphs.size() - base - 1;
      auto series_json = [&](const std::optional<PersistenceSeries>& series) {
        nlohmann::json out = {{"base", base}};
        if (!series) {
          out["series"] = nullptr;
          return out;
        }
        out["series"] = nlohmann::json::array();
        for (const auto& f : series->probabilities) out["series"].push_back(fraction_json(f));
        return out;
      };
      edge_long.push_back(series_json(edge_longevity(graphs, base, horizon)));
      node_long.push_back(series_json(node_turnover(graphs, base, horizon).longevity));
    }
    j["edge_longevity"] = edge_long;
    j["node_longevity"] = node_long;

    const auto start = t0();
    try {
      const auto curve = growth_curve(s, start, gap());
      j["growth"] = {{"alpha", curve.alpha},
                     {"alpha_stderr", curve.alpha_stderr},
                     {"fit_points", curve.fit_points},
                     {"n_points", curve.points.size()},
                     {"saturation_cutoff", kSaturationCutoff}};
      std::ostringstream csv;
      write_growth_csv(csv, curve);
      write_file(fs::path(cfg_.out) / "growth_curve.csv", csv.str());
    } catch (const DomainError& ex) {
      j["growth"] = {{"error", ex.what()}};
    }
    auto weeks = nlohmann::json::array();
    const auto n_weeks = s.empty() ? 0 : (s.max_time() - start) / (7 * kDay) + 1;
    for (int w = 2; w <= n_weeks; ++w) {
      weeks.push_back({{"week", w}, {"fraction", fraction_json(new_venue_fraction(s, start, w))}});
    }
    j["new_venue_fraction"] = weeks;
    write_json(fs::path(cfg_.out) / "dynamics.json", j);
  }

  void evaluate() {
    const auto& graphs = load_snapshots();
    const auto& s = stream();
    if (graphs.size() < 2) throw Error("evaluate needs at least two snapshots in " + cfg_.snapshots);
    EvalConfig ec;
    if (cfg_.candidates == "full") ec.candidates.mode = CandidateMode::full;
    else if (cfg_.candidates == "sampled") ec.candidates.mode = CandidateMode::sampled;
    else throw Error("--candidates must be full or sampled, got '" + cfg_.candidates + "'");
    ec.candidates.negative_ratio = cfg_.negative_ratio;
    ec.candidates.seed = cfg_.seed;
    ec.candidates.new_edges_only = cfg_.new_edges_only;
    ec.T = cfg_.T;
    ec.beta = cfg_.beta;
    ec.utc_offset = utc_offset();
    ec.gap_threshold = gap();
    ec.threads = cfg_.threads;
    ec.pagerank_max_iter = cfg_.pagerank_max_iter;
    const auto results = temporal_cross_validation(graphs, s, ec);
    auto j = header();
    auto reports = nlohmann::json::array();
    for (const auto& r : results) {
      reports.push_back(eval_report_json(r.report));
      if (cfg_.dump_scores) {
        char name[48];
        std::snprintf(name, sizeof name, "_%03zu.csv", r.report.train_index);
        std::ostringstream scores, features;
        write_scores_csv(scores, r, *registry());
        write_features_csv(features, r);
        write_file(fs::path(cfg_.out) / (std::string("scores") + name), scores.str());
        write_file(fs::path(cfg_.out) / (std::string("features") + name), features.str());
      }
    }
    j["candidate_mode"] = cfg_.candidates;
    j["negative_ratio"] = cfg_.negative_ratio;
    j["new_edges_only"] = cfg_.new_edges_only;
    j["reports"] = reports;
    write_json(fs::path(cfg_.out) / "eval.json", j);
  }

  void pipeline() {
    if (cfg_.checkins.empty() && cfg_.venues.empty()) generate();
    snapshots();
    stats();
    dynamics();
    evaluate();
  }

  RunConfig cfg_;
  std::ostream& log_;
  std::vector<fs::path> written_;
  RegistryPtr registry_;
  std::optional<CheckinStream> stream_;
  std::optional<std::vector<PlaceGraph>> graphs_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Place-network analytics and link-prediction benchmarks"};
  app.require_subcommand(1, 1);

  std::optional<std::size_t> n_venues, n_users;
  std::optional<double> span_days;
  std::optional<Timestamp> t0;
  app.add_option("--checkins", cfg.checkins, "check-in file (JSON lines)");
  app.add_option("--venues", cfg.venues, "venue registry CSV");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--snapshots", cfg.snapshots, "snapshot directory (default <out>/snapshots)");
  app.add_option("--window-days", cfg.window_days, "snapshot window length in days")->check(CLI::PositiveNumber);
  app.add_option("--gap-hours", cfg.gap_hours, "maximum gap of a direct transition")->check(CLI::PositiveNumber);
  app.add_option("--T", cfg.T, "DynamicGravity hour bins")->check(CLI::IsMember({24, 168}));
  app.add_option("--beta", cfg.beta, "distance exponent of both gravity models");
  app.add_option("--utc-offset", cfg.utc_offset_hours, "local time offset in hours");
  app.add_option("--t0", t0, "first window start (epoch seconds)");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--negative-ratio", cfg.negative_ratio, "negatives per positive in sampled mode");
  app.add_option("--candidates", cfg.candidates, "full | sampled")->check(CLI::IsMember({"full", "sampled"}));
  app.add_flag("--new-edges-only", cfg.new_edges_only, "positives restricted to edges absent from training");
  app.add_flag("--null-model", cfg.null_model, "add rewired null-model statistics");
  app.add_option("--seeds", cfg.null_seeds, "number of null-model rewirings")->check(CLI::PositiveNumber);
  app.add_option("--sample-sources", cfg.sample_sources, "BFS sources when sampling path statistics");
  app.add_flag("--dump-scores", cfg.dump_scores, "write per-pair scores and features as CSV");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--pagerank-max-iter", cfg.pagerank_max_iter, "PageRank iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--config", cfg.city_config, "synthetic city key=value file");
  app.add_option("--n-venues", n_venues, "synthetic venues");
  app.add_option("--n-users", n_users, "synthetic users");
  app.add_option("--span-days", span_days, "synthetic simulation span in days");

  for (const auto* name : {"generate", "snapshots", "stats", "dynamics", "evaluate", "pipeline"}) {
    app.add_subcommand(name)->fallthrough();
  }

  std::vector<std::string> argv_storage{"placenet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.t0 = t0;

  try {
    if (!cfg.city_config.empty()) {
      std::ifstream in(cfg.city_config);
      if (!in) throw Error("cannot open city config: " + cfg.city_config);
      apply_config_file(in, cfg.city);
    }
    if (app.count("--seed")) cfg.city.seed = cfg.seed;
    else cfg.seed = cfg.city.seed;
    if (n_venues) cfg.city.n_venues = *n_venues;
    if (n_users) cfg.city.n_users = *n_users;
    if (span_days) cfg.city.span_days = *span_days;
    cfg.city.utc_offset = static_cast<Seconds>(std::llround(cfg.utc_offset_hours * kHour));
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  }

  Session session(cfg, err);
  try {
    session.execute();
  } catch (const std::exception& ex) {
    session.remove_outputs();
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace placenet
