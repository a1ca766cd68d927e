#pragma once

#include <optional>
#include <string>

namespace epi {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;

// IUGG mean Earth radius; WGS84 ellipsoid.
inline constexpr double kIuggMeanRadius = 6371008.8;
inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;

/// Geographic position, degrees.  lat in [-90, 90], lon in [-180, 180).
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

/// UTM zone number (1..60) plus hemisphere.  Encoded "50N" / "33S" in files.
struct UtmZone {
    int number = 0;
    bool north = true;

    friend bool operator==(const UtmZone&, const UtmZone&) = default;
};

std::string to_string(UtmZone zone);
UtmZone parse_zone(const std::string& token);

/// Projected planar position, meters.  Distances are only defined between
/// points of the same zone.
struct PlanePoint {
    double easting = 0.0;
    double northing = 0.0;
    UtmZone zone;
};

/// Earth shape used by the distance/projection routines.  The sphere mode
/// feeds haversine_distance, the ellipsoid mode feeds utm_forward.
struct EarthModel {
    enum class Mode { sphere, ellipsoid };

    Mode mode = Mode::sphere;
    double sphere_radius = kIuggMeanRadius;
    double a = kWgs84A;
    double f = kWgs84F;

    static EarthModel sphere(double radius = kIuggMeanRadius);
    static EarthModel wgs84();
};

/// Great-circle distance on the model sphere, meters.
/// Symmetric, bounded by pi*R, zero iff the points coincide.
double haversine_distance(const GeoPoint& a, const GeoPoint& b,
                          const EarthModel& model = EarthModel::sphere());

/// Standard 6-degree zone of a longitude: floor((lon+180)/6)+1, clamped to 1..60.
int utm_zone_of(double lon_deg);

/// WGS84 -> UTM forward projection (Krueger series in the third flattening,
/// 6th order; Karney 2011).  Scale 0.9996, false easting 500 km, false
/// northing 10^7 m in the south.  |lat| must be below 84 degrees.
/// `zone` defaults to utm_zone_of(p.lon); passing it keeps a whole dataset
/// in one zone near a boundary.
PlanePoint utm_forward(const GeoPoint& p, std::optional<int> zone = std::nullopt,
                       const EarthModel& model = EarthModel::wgs84());

/// Planar distance sqrt(de^2 + dn^2); the points must share a zone.
double euclidean_distance(const PlanePoint& a, const PlanePoint& b);

}  // namespace epi
