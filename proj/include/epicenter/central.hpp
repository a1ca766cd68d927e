#pragma once

#include <span>
#include <string>

#include "epicenter/pattern.hpp"

namespace epi {

/// The two "center" notions under study.  The centroid is translation- and
/// rotation-equivariant; the coordinate-wise median (center-point) is only
/// translation-equivariant.
enum class CenterEstimator { centroid, center_point };

std::string to_string(CenterEstimator estimator);
CenterEstimator parse_estimator(const std::string& token);

/// Coordinate-wise mean.  Duplicates weigh in with their multiplicity.
PlanePoint centroid(const CasePattern& pattern);

/// Coordinate-wise median; even sizes average the two middle order
/// statistics per coordinate.
PlanePoint center_point(const CasePattern& pattern);

PlanePoint estimate_center(const CasePattern& pattern, CenterEstimator estimator);

/// Subset variants used by the resampling engine (indices into the pattern;
/// repeats allowed).
PlanePoint subset_centroid(const CasePattern& pattern, std::span<const std::size_t> indices);
PlanePoint subset_center_point(const CasePattern& pattern, std::span<const std::size_t> indices);

/// Coordinate-wise estimators applied directly to lat/lon, the compatibility
/// path for medians computed on geographic coordinates.
GeoPoint geographic_center(std::span<const GeoPoint> points, CenterEstimator estimator);

/// Max pairwise planar distance.
double pattern_diameter(const CasePattern& pattern);

/// Rotates the pattern about its centroid by `angle`, recomputes both
/// estimators and reports how far each moved relative to the rotated
/// originals.  The centroid shift is numerical noise; the center-point
/// shift is generally not.
struct RotationReport {
    double centroid_shift_m = 0.0;
    double center_point_shift_m = 0.0;
};

RotationReport rotation_equivariance_report(const CasePattern& pattern, double angle_rad);

}  // namespace epi
