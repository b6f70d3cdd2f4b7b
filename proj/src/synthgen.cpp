#include "placenet/synthgen.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <random>

#include "placenet/error.hpp"
#include "placenet/geo.hpp"
#include "placenet/snapshot.hpp"

namespace placenet {

namespace {

double bump(double hour, double centre, double width) {
  double d = std::abs(hour - centre);
  d = std::min(d, 24.0 - d);  // circular in the day
  return std::exp(-d * d / (2.0 * width * width));
}

std::string venue_id(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "v%05zu", k);
  return buf;
}

std::string user_id(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "u%05zu", k);
  return buf;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

constexpr std::uint64_t kCityStream = 0;
constexpr std::uint64_t kPopularityStream = 1;
constexpr std::uint64_t kFirstUserStream = 1000;

}  // namespace

void CityConfig::validate() const {
  if (n_venues < 2 || n_users == 0) throw DomainError("city needs at least 2 venues and 1 user");
  if (!(lat_min < lat_max) || !(lon_min < lon_max)) throw DomainError("bounding box has zero area");
  if (lat_min < -90 || lat_max > 90 || lon_min < -180 || lon_max > 180) {
    throw DomainError("bounding box outside valid coordinates");
  }
  double total = 0.0;
  for (const auto f : category_mix) {
    if (f < 0.0) throw DomainError("category fractions must be nonnegative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("category fractions must sum to 1");
  for (const auto m : category_mass) {
    if (!(m > 0.0)) throw DomainError("category masses must be positive");
  }
  if (!(decay_length_km > 0.0) || !(decay_exponent > 0.0)) throw DomainError("distance decay must be positive");
  if (!(gap_median_hours > 0.0) || !(gap_sigma > 0.0)) throw DomainError("gap distribution must be positive");
  if (!(profile_floor >= 0.0)) throw DomainError("profile floor must be nonnegative");
  if (!(span_days > 0.0)) throw DomainError("simulation span must be positive");
  if (start <= 0) throw DomainError("start timestamp must be positive");
}

double category_hour_profile(Category c, int hour_of_week, double base) {
  const int day = hour_of_week / 24;
  const double h = hour_of_week % 24;
  switch (c) {
    case Category::food: return base + bump(h, 12, 1.5) + bump(h, 19, 1.5);
    case Category::travel: return base + bump(h, 8, 1.5) + bump(h, 18, 1.5);
    case Category::nightlife: return base + bump(h, 0, 2.0);
    case Category::work: return (day < 5 && h >= 9 && h <= 17) ? base + 1.0 : base;
    default: return 1.0;
  }
}

VenueRegistry generate_city(const CityConfig& config) {
  config.validate();
  std::mt19937_64 rng(derived_seed(config.seed, kCityStream));
  const double mid_lat = 0.5 * (config.lat_min + config.lat_max);
  const double diag_km = haversine_km(config.lat_min, config.lon_min, config.lat_max, config.lon_max);
  const double sigma_km = 0.01 * diag_km;
  const double km_per_deg_lat = haversine_km(mid_lat - 0.5, 0.0, mid_lat + 0.5, 0.0);
  const double km_per_deg_lon = haversine_km(mid_lat, 0.0, mid_lat, 1.0);

  const std::size_t n_centres = std::max<std::size_t>(1, config.n_venues / 50);
  std::uniform_real_distribution<double> lat_u(config.lat_min, config.lat_max);
  std::uniform_real_distribution<double> lon_u(config.lon_min, config.lon_max);
  std::vector<std::pair<double, double>> centres(n_centres);
  for (auto& c : centres) c = {lat_u(rng), lon_u(rng)};

  std::uniform_int_distribution<std::size_t> pick_centre(0, n_centres - 1);
  std::normal_distribution<double> offset_lat(0.0, sigma_km / km_per_deg_lat);
  std::normal_distribution<double> offset_lon(0.0, sigma_km / km_per_deg_lon);
  std::discrete_distribution<int> pick_category(config.category_mix.begin(), config.category_mix.end());

  std::vector<Venue> venues;
  venues.reserve(config.n_venues);
  for (std::size_t k = 0; k < config.n_venues; ++k) {
    const auto& [clat, clon] = centres[pick_centre(rng)];
    Venue v;
    v.id = venue_id(k);
    v.lat = std::clamp(clat + offset_lat(rng), config.lat_min, config.lat_max);
    v.lon = std::clamp(clon + offset_lon(rng), config.lon_min, config.lon_max);
    v.category = static_cast<Category>(pick_category(rng));
    venues.push_back(std::move(v));
  }
  return VenueRegistry(std::move(venues));
}

CheckinStream generate_checkins(RegistryPtr registry, const CityConfig& config) {
  config.validate();
  if (!registry || registry->size() < 2) throw DomainError("check-in generation needs at least 2 venues");
  const auto& reg = *registry;
  const auto n = static_cast<Eigen::Index>(reg.size());

  // Zipf popularity over a random ranking of venues, times category mass.
  std::vector<std::size_t> rank(reg.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::mt19937_64 pop_rng(derived_seed(config.seed, kPopularityStream));
  std::shuffle(rank.begin(), rank.end(), pop_rng);
  Eigen::VectorXd mass(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto cat = static_cast<std::size_t>(reg[static_cast<VenueIndex>(v)].category);
    mass[v] = std::pow(static_cast<double>(rank[static_cast<std::size_t>(v)] + 1), -config.zipf_exponent) *
              config.category_mass[cat];
  }

  Eigen::MatrixXf decay(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto& va = reg[static_cast<VenueIndex>(a)];
    for (Eigen::Index b = 0; b <= a; ++b) {
      const auto& vb = reg[static_cast<VenueIndex>(b)];
      const double d = haversine_km(va.lat, va.lon, vb.lat, vb.lon);
      const auto k = static_cast<float>(std::exp(-std::pow(d / config.decay_length_km, config.decay_exponent)));
      decay(a, b) = k;
      decay(b, a) = k;
    }
  }

  // profile(v, slot): hour-of-week activity of the venue's category.
  Eigen::MatrixXd weighted_profile(n, 168);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto cat = reg[static_cast<VenueIndex>(v)].category;
    for (int s = 0; s < 168; ++s) weighted_profile(v, s) = mass[v] * category_hour_profile(cat, s, config.profile_floor);
  }

  const Timestamp end = config.start + static_cast<Timestamp>(std::llround(config.span_days * kDay));
  std::vector<CheckinEvent> events;
  Eigen::VectorXd cumulative(n);
  for (std::size_t u = 0; u < config.n_users; ++u) {
    std::mt19937_64 rng(derived_seed(config.seed, kFirstUserStream + u));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::lognormal_distribution<double> gap(std::log(config.gap_median_hours * kHour), config.gap_sigma);
    const auto user = user_id(u);

    auto draw = [&](const Eigen::Ref<const Eigen::VectorXd>& weights) {
      std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
      const double target = unit(rng) * cumulative[n - 1];
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
      return static_cast<VenueIndex>(std::min<Eigen::Index>(it - cumulative.begin(), n - 1));
    };

    Timestamp t = config.start + static_cast<Timestamp>(unit(rng) * kDay);
    VenueIndex current = draw(weighted_profile.col(hour_slot(t, config.utc_offset, 168)));
    Eigen::VectorXd weights(n);
    while (t < end) {
      events.push_back({user, current, t});
      t += std::max<Timestamp>(60, static_cast<Timestamp>(gap(rng)));
      if (t >= end) break;
      const int slot = hour_slot(t, config.utc_offset, 168);
      weights = weighted_profile.col(slot).cwiseProduct(decay.col(current).cast<double>());
      weights[current] = 0.0;
      current = draw(weights);
    }
  }
  return CheckinStream(std::move(events), std::move(registry));
}

void apply_config_value(const std::string& key, const std::string& value, CityConfig& c) {
  auto as_double = [&] {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ParseError("invalid numeric value for '" + key + "': " + value, 0);
    }
  };
  auto as_count = [&] {
    const double v = as_double();
    if (v < 0 || v != std::floor(v)) throw ParseError("'" + key + "' must be a nonnegative integer", 0);
    return static_cast<std::uint64_t>(v);
  };
  if (key == "n_venues") c.n_venues = as_count();
  else if (key == "n_users") c.n_users = as_count();
  else if (key == "lat_min") c.lat_min = as_double();
  else if (key == "lat_max") c.lat_max = as_double();
  else if (key == "lon_min") c.lon_min = as_double();
  else if (key == "lon_max") c.lon_max = as_double();
  else if (key == "zipf_exponent") c.zipf_exponent = as_double();
  else if (key == "decay_exponent") c.decay_exponent = as_double();
  else if (key == "decay_length_km") c.decay_length_km = as_double();
  else if (key == "gap_median_hours") c.gap_median_hours = as_double();
  else if (key == "gap_sigma") c.gap_sigma = as_double();
  else if (key == "profile_floor") c.profile_floor = as_double();
  else if (key == "span_days") c.span_days = as_double();
  else if (key == "start") c.start = static_cast<Timestamp>(as_count());
  else if (key == "utc_offset") c.utc_offset = static_cast<Seconds>(as_double());
  else if (key == "seed") c.seed = as_count();
  else if (key.starts_with("mix.") || key.starts_with("mass.")) {
    const auto dot = key.find('.');
    const auto cat = parse_category(std::string_view(key).substr(dot + 1));
    if (!cat) throw ParseError("unknown category in key '" + key + "'", 0);
    auto& target = key.starts_with("mix.") ? c.category_mix : c.category_mass;
    target[static_cast<std::size_t>(*cat)] = as_double();
  } else {
    throw ParseError("unknown city config key '" + key + "'", 0);
  }
}

void apply_config_file(std::istream& in, CityConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    try {
      apply_config_value(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), config);
    } catch (const ParseError& ex) {
      throw ParseError(ex.what(), line_no);
    }
  }
}

}  // namespace placenet
