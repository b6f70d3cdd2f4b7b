#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace placenet {

inline constexpr double kEarthRadiusKm = 6371.0088;
/// Lower bound applied to every venue-to-venue distance.
inline constexpr double kDistanceFloorKm = 0.05;

template <typename Scalar>
Scalar haversine_km(Scalar lat1, Scalar lon1, Scalar lat2, Scalar lon2) {
  constexpr Scalar rad = std::numbers::pi_v<Scalar> / Scalar(180);
  const Scalar dlat = (lat2 - lat1) * rad;
  const Scalar dlon = (lon2 - lon1) * rad;
  const Scalar s1 = std::sin(dlat / 2);
  const Scalar s2 = std::sin(dlon / 2);
  const Scalar h = s1 * s1 + std::cos(lat1 * rad) * std::cos(lat2 * rad) * s2 * s2;
  return Scalar(2) * Scalar(kEarthRadiusKm) * std::asin(std::sqrt(std::min(Scalar(1), h)));
}

template <typename Scalar>
Scalar floored_distance_km(Scalar lat1, Scalar lon1, Scalar lat2, Scalar lon2) {
  return std::max(Scalar(kDistanceFloorKm), haversine_km(lat1, lon1, lat2, lon2));
}

}  // namespace placenet
