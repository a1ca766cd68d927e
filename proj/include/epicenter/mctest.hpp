#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "epicenter/central.hpp"
#include "epicenter/pattern.hpp"
#include "epicenter/resample.hpp"
#include "epicenter/rng.hpp"

namespace epi {

enum class Metric { euclidean, haversine };

std::string to_string(Metric metric);
Metric parse_metric(const std::string& token);

/// Which tail counts as evidence against the null.
enum class TestDirection { observed_large, observed_small };

/// Outcome of a Monte Carlo rank test.  p_value is always k/(count+1) for
/// an integer k; `ties` counts replicates exactly equal to the observed
/// statistic (they count against rejection).
struct TestResult {
    double observed = 0.0;
    std::vector<double> replicates;
    double p_value = 1.0;
    TestDirection direction = TestDirection::observed_large;
    std::size_t ties = 0;
};

/// Rank p-value of `observed` among itself and the replicates:
///   observed_large:  (1 + #{r_i >= observed}) / (count + 1)
///   observed_small:  (1 + #{r_i <= observed}) / (count + 1)
/// The observed-large form is the complementary count of the rank in the
/// decreasing series {d_0, d_1, ..., d_m}; both are the same number.
double rank_p_value(double observed, std::span<const double> replicates, TestDirection direction);

std::size_t count_ties(double observed, std::span<const double> replicates);

/// Median distance from every case to a fixed point.  Euclidean needs the
/// shared-zone planar coordinates; haversine needs the geographic rows the
/// loader retains (a planar-only pattern raises an input error).
double median_distance(const CasePattern& pattern, const PlanePoint& point);
double median_distance(const CasePattern& pattern, const GeoPoint& point,
                       const EarthModel& model = EarthModel::sphere());
double median_distance(const CasePattern& pattern, const Landmark& landmark,
                       Metric metric = Metric::euclidean,
                       const EarthModel& model = EarthModel::sphere());

/// Tests the null hypothesis that the landmark is the "center" of the
/// pattern.  The observed statistic d0 is the distance from the full-sample
/// center to the landmark; the replicates d_i are the distances from the
/// full-sample center to the centers of the plan's resamples.  Rejection is
/// for large d0.  A degenerate cloud (n = N without replacement) raises
/// DegenerateError: that is the "--" condition of the p-value table.
/// The haversine variant computes centers coordinate-wise on lat/lon, the
/// way medians on geographic coordinates are usually taken.
TestResult landmark_center_test(const CasePattern& pattern, const Landmark& landmark,
                                const ResamplePlan& plan, CenterEstimator estimator,
                                Metric metric = Metric::euclidean, unsigned threads = 1,
                                const EarthModel& model = EarthModel::sphere());

/// Produces one synthetic pattern of a fixed size from the null model.
using NullSampler = std::function<CasePattern(Rng&)>;

/// Replication of the criticized proximity test: rejects when the observed
/// median case-to-landmark distance m0 is small against medians m_i of R
/// null patterns of the same size.  Replicate i draws from Rng(seed, i).
TestResult proximity_test(const CasePattern& observed, const Landmark& landmark,
                          const NullSampler& sampler, std::size_t R, std::uint64_t seed,
                          Metric metric = Metric::haversine, unsigned threads = 1,
                          const EarthModel& model = EarthModel::sphere());

using PointSampler = std::function<PlanePoint(Rng&)>;

/// Single-point variant: the observed statistic is the distance from a
/// precomputed center to the landmark, replicates are distances of `count`
/// independently simulated points to the landmark.
TestResult point_proximity_test(const PlanePoint& center, const Landmark& landmark,
                                const PointSampler& sampler, std::size_t count,
                                std::uint64_t seed, unsigned threads = 1);

}  // namespace epi
