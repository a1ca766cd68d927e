#include "epicenter/geo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "epicenter/error.hpp"

namespace epi {

namespace {

void require_finite(const GeoPoint& p, const char* what) {
    if (!std::isfinite(p.lat) || !std::isfinite(p.lon))
        throw InputError(std::string(what) + ": non-finite coordinate");
    if (p.lat < -90.0 || p.lat > 90.0)
        throw InputError(std::string(what) + ": latitude out of [-90, 90]");
    if (p.lon < -180.0 || p.lon >= 180.0)
        throw InputError(std::string(what) + ": longitude out of [-180, 180)");
}

}  // namespace

EarthModel EarthModel::sphere(double radius) {
    EarthModel m;
    m.mode = Mode::sphere;
    m.sphere_radius = radius;
    return m;
}

EarthModel EarthModel::wgs84() {
    EarthModel m;
    m.mode = Mode::ellipsoid;
    return m;
}

std::string to_string(UtmZone zone) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%d%c", zone.number, zone.north ? 'N' : 'S');
    return buf;
}

UtmZone parse_zone(const std::string& token) {
    if (token.size() < 2) throw InputError("bad zone token '" + token + "'");
    const char hemi = token.back();
    if (hemi != 'N' && hemi != 'S' && hemi != 'n' && hemi != 's')
        throw InputError("zone '" + token + "' must end in N or S");
    int number = 0;
    for (std::size_t i = 0; i + 1 < token.size(); ++i) {
        if (token[i] < '0' || token[i] > '9')
            throw InputError("bad zone token '" + token + "'");
        number = number * 10 + (token[i] - '0');
    }
    if (number < 1 || number > 60)
        throw InputError("zone number " + std::to_string(number) + " out of 1..60");
    return {number, hemi == 'N' || hemi == 'n'};
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b, const EarthModel& model) {
    if (model.mode != EarthModel::Mode::sphere)
        throw InputError("haversine_distance needs a sphere model");
    if (model.sphere_radius <= 0.0) throw InputError("sphere radius must be positive");
    require_finite(a, "haversine_distance");
    require_finite(b, "haversine_distance");

    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlam = (b.lon - a.lon) * kDegToRad;

    const double sp = std::sin(dphi / 2.0);
    const double sl = std::sin(dlam / 2.0);
    const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
    const double c = 2.0 * std::atan2(std::sqrt(h), std::sqrt(std::max(0.0, 1.0 - h)));
    return model.sphere_radius * c;
}

int utm_zone_of(double lon_deg) {
    if (!std::isfinite(lon_deg) || lon_deg < -180.0 || lon_deg >= 180.0)
        throw InputError("utm_zone_of: longitude out of [-180, 180)");
    const int zone = static_cast<int>(std::floor((lon_deg + 180.0) / 6.0)) + 1;
    return std::clamp(zone, 1, 60);
}

PlanePoint utm_forward(const GeoPoint& p, std::optional<int> zone, const EarthModel& model) {
    if (model.mode != EarthModel::Mode::ellipsoid)
        throw InputError("utm_forward needs an ellipsoid model");
    if (model.f <= 0.0 || model.f >= 1.0 || model.a <= 0.0)
        throw InputError("utm_forward: bad ellipsoid parameters");
    require_finite(p, "utm_forward");
    if (std::abs(p.lat) >= 84.0)
        throw InputError("utm_forward: polar latitudes (|lat| >= 84) are unsupported");

    const int zone_number = zone ? *zone : utm_zone_of(p.lon);
    if (zone_number < 1 || zone_number > 60)
        throw InputError("utm_forward: zone out of 1..60");

    const double a = model.a;
    const double f = model.f;
    const double n = f / (2.0 - f);
    const double e = std::sqrt(f * (2.0 - f));

    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    // Rectifying radius and series coefficients, Karney (2011) eq. 35.
    const double big_a = a / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
    const double alpha[6] = {
        n / 2.0 - 2.0 * n2 / 3.0 + 5.0 * n3 / 16.0 + 41.0 * n4 / 180.0 -
            127.0 * n5 / 288.0 + 7891.0 * n6 / 37800.0,
        13.0 * n2 / 48.0 - 3.0 * n3 / 5.0 + 557.0 * n4 / 1440.0 +
            281.0 * n5 / 630.0 - 1983433.0 * n6 / 1935360.0,
        61.0 * n3 / 240.0 - 103.0 * n4 / 140.0 + 15061.0 * n5 / 26880.0 +
            167603.0 * n6 / 181440.0,
        49561.0 * n4 / 161280.0 - 179.0 * n5 / 168.0 + 6601661.0 * n6 / 7257600.0,
        34729.0 * n5 / 80640.0 - 3418889.0 * n6 / 1995840.0,
        212378941.0 * n6 / 319334400.0,
    };

    const double central_meridian = (zone_number * 6 - 183) * kDegToRad;
    const double phi = p.lat * kDegToRad;
    double lam = p.lon * kDegToRad - central_meridian;
    // wrap so a zone override near the antimeridian still works
    if (lam > kPi) lam -= 2.0 * kPi;
    if (lam < -kPi) lam += 2.0 * kPi;

    // conformal latitude via tau' (avoids loss of precision near the equator)
    const double tau = std::tan(phi);
    const double sigma = std::sinh(e * std::atanh(e * tau / std::sqrt(1.0 + tau * tau)));
    const double taup =
        tau * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + tau * tau);

    const double xi0 = std::atan2(taup, std::cos(lam));
    const double eta0 = std::asinh(std::sin(lam) / std::hypot(taup, std::cos(lam)));

    double xi = xi0;
    double eta = eta0;
    for (int j = 1; j <= 6; ++j) {
        xi += alpha[j - 1] * std::sin(2.0 * j * xi0) * std::cosh(2.0 * j * eta0);
        eta += alpha[j - 1] * std::cos(2.0 * j * xi0) * std::sinh(2.0 * j * eta0);
    }

    constexpr double k0 = 0.9996;
    constexpr double false_easting = 500000.0;
    const bool north = p.lat >= 0.0;

    PlanePoint out;
    out.easting = false_easting + k0 * big_a * eta;
    out.northing = k0 * big_a * xi + (north ? 0.0 : 10000000.0);
    out.zone = {zone_number, north};
    return out;
}

double euclidean_distance(const PlanePoint& a, const PlanePoint& b) {
    if (!(a.zone == b.zone))
        throw InputError("euclidean_distance: zone mismatch (" + to_string(a.zone) +
                         " vs " + to_string(b.zone) + ")");
    if (!std::isfinite(a.easting) || !std::isfinite(a.northing) ||
        !std::isfinite(b.easting) || !std::isfinite(b.northing))
        throw InputError("euclidean_distance: non-finite coordinate");
    return std::hypot(a.easting - b.easting, a.northing - b.northing);
}

}  // namespace epi
