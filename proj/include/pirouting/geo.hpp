#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pirouting/error.hpp"

namespace pirouting::geo {

inline constexpr double kEarthRadiusMiles = 3958.8;

constexpr double to_radians(double degrees) noexcept { return degrees * std::numbers::pi / 180.0; }
constexpr double to_degrees(double radians) noexcept { return radians * 180.0 / std::numbers::pi; }

/// Latitude in [-90, 90], longitude in (-180, 180], both in degrees.
class GeoPoint {
 public:
  GeoPoint(double lat, double lon) : lat_(lat), lon_(lon) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
      throw ValidationError({"latitude out of range [-90, 90]: " + std::to_string(lat)});
    }
    if (!(lon > -180.0 && lon <= 180.0)) {
      throw ValidationError({"longitude out of range (-180, 180]: " + std::to_string(lon)});
    }
  }

  double lat() const noexcept { return lat_; }
  double lon() const noexcept { return lon_; }

  bool operator==(const GeoPoint&) const = default;

 private:
  double lat_;
  double lon_;
};

/// Degrees clockwise from true north, always in [0, 360).
class Bearing {
 public:
  constexpr Bearing() = default;
  explicit Bearing(double degrees) : degrees_(normalize(degrees)) {}

  double degrees() const noexcept { return degrees_; }

  bool operator==(const Bearing&) const = default;

 private:
  static double normalize(double d) {
    double r = std::fmod(d, 360.0);
    if (r < 0.0) r += 360.0;
    // fmod of a tiny negative value plus 360 rounds up to exactly 360.
    if (r >= 360.0) r = 0.0;
    return r;
  }

  double degrees_ = 0.0;
};

class SectorParams {
 public:
  static constexpr double kDefaultHalfWidth = 50.0;

  SectorParams() = default;
  explicit SectorParams(double half_width) : half_width_(half_width) {
    if (!(half_width > 0.0 && half_width <= 180.0)) {
      throw ConfigError("sector half_width must be in (0, 180], got " + std::to_string(half_width));
    }
  }

  double half_width() const noexcept { return half_width_; }

 private:
  double half_width_ = kDefaultHalfWidth;
};

/// True when the two positions name the same place on the sphere (including
/// both poles, where longitude is meaningless).
inline bool coincident(const GeoPoint& a, const GeoPoint& b) noexcept {
  if (a.lat() == b.lat() && std::abs(a.lat()) == 90.0) return true;
  return a == b;
}

/// Great-circle distance in miles (haversine form).
inline double haversine_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double phi1 = to_radians(a.lat());
  const double phi2 = to_radians(b.lat());
  const double dphi = phi2 - phi1;
  const double dlambda = to_radians(b.lon() - a.lon());
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusMiles * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

/// Initial great-circle bearing from a toward b.
inline Bearing initial_bearing(const GeoPoint& a, const GeoPoint& b) {
  if (coincident(a, b)) {
    throw DegenerateBearing("bearing undefined between coincident points");
  }
  const double phi1 = to_radians(a.lat());
  const double phi2 = to_radians(b.lat());
  const double dlambda = to_radians(b.lon() - a.lon());
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  return Bearing(to_degrees(std::atan2(y, x)));
}

/// Midpoint of the great-circle arc: mean of the two unit vectors, projected
/// back onto the sphere.
inline GeoPoint geographic_midpoint(const GeoPoint& a, const GeoPoint& b) {
  if (coincident(a, b)) return a;
  const double phi1 = to_radians(a.lat());
  const double phi2 = to_radians(b.lat());
  const double l1 = to_radians(a.lon());
  const double l2 = to_radians(b.lon());
  const double x = std::cos(phi1) * std::cos(l1) + std::cos(phi2) * std::cos(l2);
  const double y = std::cos(phi1) * std::sin(l1) + std::cos(phi2) * std::sin(l2);
  const double z = std::sin(phi1) + std::sin(phi2);
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (norm < 1e-12) {
    throw AmbiguousMidpoint("midpoint undefined between antipodal points");
  }
  const double lat = to_degrees(std::atan2(z, std::hypot(x, y)));
  double lon = std::hypot(x, y) < 1e-15 ? 0.0 : to_degrees(std::atan2(y, x));
  if (lon <= -180.0) lon += 360.0;
  return GeoPoint(lat, lon);
}

/// Smallest absolute circular difference, in [0, 180].
inline double angular_deviation(Bearing x, Bearing y) noexcept {
  const double d = std::abs(x.degrees() - y.degrees());
  return d > 180.0 ? 360.0 - d : d;
}

/// Boundary inclusive.
inline bool within_sector(Bearing candidate, Bearing anchor, const SectorParams& params) noexcept {
  return angular_deviation(candidate, anchor) <= params.half_width();
}

}  // namespace pirouting::geo
