#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "json.hpp"
#include "placenet/dynamics.hpp"
#include "placenet/eval.hpp"
#include "placenet/netstats.hpp"
#include "placenet/powerlaw.hpp"

namespace placenet {

inline constexpr std::string_view kVersion = "placenet 1.0.0";

/// Shortest decimal text that round-trips the double.
std::string format_number(double v);

nlohmann::json histogram_json(const Histogram& h);
nlohmann::json fraction_json(const std::optional<Fraction>& f);
nlohmann::json topology_json(const TopologyReport& r);
nlohmann::json power_law_json(const PowerLawFit& fit);
nlohmann::json eval_report_json(const EvalReport& r);

/// `nodes,edges` rows.
void write_growth_csv(std::ostream& out, const GrowthCurve& curve);
/// One row per candidate: the PairFeatures field names, then `label`.
void write_features_csv(std::ostream& out, const EvalResult& result);
/// One row per candidate: origin, dest, label, then one column per score.
void write_scores_csv(std::ostream& out, const EvalResult& result, const VenueRegistry& registry);

}  // namespace placenet
