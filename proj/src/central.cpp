#include "epicenter/central.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "epicenter/error.hpp"
#include "epicenter/stats.hpp"

namespace epi {

namespace {

void require_nonempty(const CasePattern& pattern, const char* what) {
    if (pattern.size() == 0) throw InputError(std::string(what) + ": empty pattern");
}

PlanePoint rotate_about(const PlanePoint& p, const PlanePoint& pivot, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    const double x = p.easting - pivot.easting;
    const double y = p.northing - pivot.northing;
    return {pivot.easting + c * x - s * y, pivot.northing + s * x + c * y, p.zone};
}

}  // namespace

std::string to_string(CenterEstimator estimator) {
    return estimator == CenterEstimator::centroid ? "centroid" : "center-point";
}

CenterEstimator parse_estimator(const std::string& token) {
    if (token == "centroid") return CenterEstimator::centroid;
    if (token == "center-point" || token == "center_point") return CenterEstimator::center_point;
    throw InputError("unknown estimator '" + token + "' (use centroid or center-point)");
}

PlanePoint centroid(const CasePattern& pattern) {
    require_nonempty(pattern, "centroid");
    double se = 0.0, sn = 0.0;
    for (const auto& p : pattern.points) {
        se += p.easting;
        sn += p.northing;
    }
    const double n = static_cast<double>(pattern.size());
    return {se / n, sn / n, pattern.zone()};
}

PlanePoint center_point(const CasePattern& pattern) {
    require_nonempty(pattern, "center_point");
    std::vector<double> e, n;
    e.reserve(pattern.size());
    n.reserve(pattern.size());
    for (const auto& p : pattern.points) {
        e.push_back(p.easting);
        n.push_back(p.northing);
    }
    return {median_inplace(e), median_inplace(n), pattern.zone()};
}

PlanePoint estimate_center(const CasePattern& pattern, CenterEstimator estimator) {
    return estimator == CenterEstimator::centroid ? centroid(pattern) : center_point(pattern);
}

PlanePoint subset_centroid(const CasePattern& pattern, std::span<const std::size_t> indices) {
    if (indices.empty()) throw InputError("subset_centroid: empty subset");
    double se = 0.0, sn = 0.0;
    for (std::size_t idx : indices) {
        se += pattern.points[idx].easting;
        sn += pattern.points[idx].northing;
    }
    const double n = static_cast<double>(indices.size());
    return {se / n, sn / n, pattern.zone()};
}

PlanePoint subset_center_point(const CasePattern& pattern, std::span<const std::size_t> indices) {
    if (indices.empty()) throw InputError("subset_center_point: empty subset");
    std::vector<double> e, n;
    e.reserve(indices.size());
    n.reserve(indices.size());
    for (std::size_t idx : indices) {
        e.push_back(pattern.points[idx].easting);
        n.push_back(pattern.points[idx].northing);
    }
    return {median_inplace(e), median_inplace(n), pattern.zone()};
}

GeoPoint geographic_center(std::span<const GeoPoint> points, CenterEstimator estimator) {
    if (points.empty()) throw InputError("geographic_center: no points");
    if (estimator == CenterEstimator::centroid) {
        double slat = 0.0, slon = 0.0;
        for (const auto& p : points) {
            slat += p.lat;
            slon += p.lon;
        }
        const double n = static_cast<double>(points.size());
        return {slat / n, slon / n};
    }
    std::vector<double> lat, lon;
    lat.reserve(points.size());
    lon.reserve(points.size());
    for (const auto& p : points) {
        lat.push_back(p.lat);
        lon.push_back(p.lon);
    }
    return {median_inplace(lat), median_inplace(lon)};
}

double pattern_diameter(const CasePattern& pattern) {
    require_nonempty(pattern, "pattern_diameter");
    double best = 0.0;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        for (std::size_t j = i + 1; j < pattern.size(); ++j)
            best = std::max(best, euclidean_distance(pattern.points[i], pattern.points[j]));
    return best;
}

RotationReport rotation_equivariance_report(const CasePattern& pattern, double angle_rad) {
    if (pattern.size() < 2)
        throw InputError("rotation_equivariance_report: need at least 2 points");

    const PlanePoint pivot = centroid(pattern);

    CasePattern rotated = pattern;
    for (auto& p : rotated.points) p = rotate_about(p, pivot, angle_rad);

    const PlanePoint centroid_of_rotated = centroid(rotated);
    const PlanePoint rotated_centroid = rotate_about(centroid(pattern), pivot, angle_rad);
    const PlanePoint median_of_rotated = center_point(rotated);
    const PlanePoint rotated_median = rotate_about(center_point(pattern), pivot, angle_rad);

    return {euclidean_distance(centroid_of_rotated, rotated_centroid),
            euclidean_distance(median_of_rotated, rotated_median)};
}

}  // namespace epi
