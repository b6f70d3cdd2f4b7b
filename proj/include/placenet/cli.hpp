#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "placenet/eval.hpp"
#include "placenet/synthgen.hpp"

namespace placenet {

/// Effective configuration of one CLI invocation; echoed into every report.
struct RunConfig {
  std::string subcommand;
  std::string checkins;
  std::string venues;
  std::string out = "placenet_out";
  std::string snapshots;  // defaults to <out>/snapshots
  std::string city_config;
  double window_days = 90.0;
  double gap_hours = 3.0;
  int T = 168;
  double beta = 1.0;
  double utc_offset_hours = 0.0;
  std::optional<Timestamp> t0;  // defaults to the UTC day of the first check-in
  std::uint64_t seed = 42;
  std::size_t negative_ratio = 10;
  std::string candidates = "sampled";
  bool new_edges_only = false;
  bool null_model = false;
  std::size_t null_seeds = 5;
  std::size_t sample_sources = 1000;
  bool dump_scores = false;
  std::size_t threads = 1;
  int pagerank_max_iter = 100;
  CityConfig city;

  nlohmann::json to_json() const;
};

/// Runs one subcommand (generate, snapshots, stats, dynamics, evaluate, pipeline).
/// `args` excludes the program name. Returns the process exit code; diagnostics
/// go to `err`. Files written by a failing invocation are removed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace placenet
