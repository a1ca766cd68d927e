#include "epicenter/mctest.hpp"

#include <algorithm>
#include <cmath>

#include "epicenter/error.hpp"
#include "epicenter/parallel.hpp"
#include "epicenter/stats.hpp"

namespace epi {

std::string to_string(Metric metric) {
    return metric == Metric::euclidean ? "euclidean" : "haversine";
}

Metric parse_metric(const std::string& token) {
    if (token == "euclidean") return Metric::euclidean;
    if (token == "haversine") return Metric::haversine;
    throw InputError("unknown metric '" + token + "' (use euclidean or haversine)");
}

double rank_p_value(double observed, std::span<const double> replicates, TestDirection direction) {
    if (replicates.empty()) throw InputError("rank_p_value: no replicates");
    std::size_t beyond = 0;
    for (double r : replicates) {
        if (direction == TestDirection::observed_large ? r >= observed : r <= observed) ++beyond;
    }
    return static_cast<double>(1 + beyond) / static_cast<double>(replicates.size() + 1);
}

std::size_t count_ties(double observed, std::span<const double> replicates) {
    return static_cast<std::size_t>(
        std::count(replicates.begin(), replicates.end(), observed));
}

double median_distance(const CasePattern& pattern, const PlanePoint& point) {
    if (pattern.size() == 0) throw InputError("median_distance: empty pattern");
    std::vector<double> d;
    d.reserve(pattern.size());
    for (const auto& p : pattern.points) d.push_back(euclidean_distance(p, point));
    return median_inplace(d);
}

double median_distance(const CasePattern& pattern, const GeoPoint& point, const EarthModel& model) {
    if (pattern.size() == 0) throw InputError("median_distance: empty pattern");
    if (!pattern.has_geo())
        throw InputError(
            "median_distance: haversine needs geographic coordinates, but the pattern is "
            "planar-only");
    std::vector<double> d;
    d.reserve(pattern.size());
    for (const auto& g : pattern.geo) d.push_back(haversine_distance(g, point, model));
    return median_inplace(d);
}

double median_distance(const CasePattern& pattern, const Landmark& landmark, Metric metric,
                       const EarthModel& model) {
    if (metric == Metric::euclidean) return median_distance(pattern, landmark.location);
    if (!landmark.geo)
        throw InputError("median_distance: haversine needs a geographic landmark ('" +
                         landmark.name + "' is planar-only)");
    return median_distance(pattern, *landmark.geo, model);
}

namespace {

TestResult assemble(double observed, std::vector<double> replicates, TestDirection direction) {
    TestResult result;
    result.observed = observed;
    result.p_value = rank_p_value(observed, replicates, direction);
    result.ties = count_ties(observed, replicates);
    result.direction = direction;
    result.replicates = std::move(replicates);
    return result;
}

TestResult landmark_center_test_geographic(const CasePattern& pattern, const Landmark& landmark,
                                           const ResamplePlan& plan, CenterEstimator estimator,
                                           unsigned threads, const EarthModel& model) {
    if (!pattern.has_geo())
        throw InputError(
            "landmark_center_test: haversine needs geographic coordinates, but the pattern is "
            "planar-only");
    if (!landmark.geo)
        throw InputError("landmark_center_test: haversine needs a geographic landmark ('" +
                         landmark.name + "' is planar-only)");
    plan.validate(pattern.size());

    const GeoPoint full_center = geographic_center(pattern.geo, estimator);
    const double observed = haversine_distance(full_center, *landmark.geo, model);

    std::vector<GeoPoint> centers(plan.m);
    parallel_for(plan.m, threads, [&](std::size_t i) {
        Rng rng(plan.seed, i);
        const auto indices = sample_indices(pattern.size(), plan.n, plan.with_replacement, rng);
        std::vector<GeoPoint> subset;
        subset.reserve(indices.size());
        for (std::size_t idx : indices) subset.push_back(pattern.geo[idx]);
        centers[i] = geographic_center(subset, estimator);
    });

    const bool degenerate = std::all_of(centers.begin(), centers.end(), [&](const GeoPoint& g) {
        return g.lat == centers.front().lat && g.lon == centers.front().lon;
    });
    if (degenerate)
        throw DegenerateError(
            "landmark_center_test: all resample centers coincide (n = N without replacement); "
            "the table reports '--' for this cell");

    std::vector<double> replicates(plan.m);
    for (std::size_t i = 0; i < plan.m; ++i)
        replicates[i] = haversine_distance(full_center, centers[i], model);
    return assemble(observed, std::move(replicates), TestDirection::observed_large);
}

}  // namespace

TestResult landmark_center_test(const CasePattern& pattern, const Landmark& landmark,
                                const ResamplePlan& plan, CenterEstimator estimator, Metric metric,
                                unsigned threads, const EarthModel& model) {
    if (metric == Metric::haversine)
        return landmark_center_test_geographic(pattern, landmark, plan, estimator, threads, model);

    const PlanePoint full_center = estimate_center(pattern, estimator);
    const double observed = euclidean_distance(full_center, landmark.location);

    const CenterCloud cloud = resample_centers(pattern, plan, estimator, threads);
    if (cloud.degenerate)
        throw DegenerateError(
            "landmark_center_test: all resample centers coincide (n = N without replacement); "
            "the table reports '--' for this cell");

    std::vector<double> replicates(cloud.points.size());
    for (std::size_t i = 0; i < replicates.size(); ++i)
        replicates[i] = euclidean_distance(full_center, cloud.points[i]);
    return assemble(observed, std::move(replicates), TestDirection::observed_large);
}

TestResult proximity_test(const CasePattern& observed, const Landmark& landmark,
                          const NullSampler& sampler, std::size_t R, std::uint64_t seed,
                          Metric metric, unsigned threads, const EarthModel& model) {
    if (R < 1) throw InputError("proximity_test: R must be >= 1");
    const double m0 = median_distance(observed, landmark, metric, model);

    std::vector<double> medians(R);
    parallel_for(R, threads, [&](std::size_t i) {
        Rng rng(seed, i);
        const CasePattern replicate = sampler(rng);
        if (replicate.size() != observed.size())
            throw InputError("proximity_test: null sampler produced a pattern of size " +
                             std::to_string(replicate.size()) + ", expected " +
                             std::to_string(observed.size()));
        medians[i] = median_distance(replicate, landmark, metric, model);
    });

    return assemble(m0, std::move(medians), TestDirection::observed_small);
}

TestResult point_proximity_test(const PlanePoint& center, const Landmark& landmark,
                                const PointSampler& sampler, std::size_t count, std::uint64_t seed,
                                unsigned threads) {
    if (count < 1) throw InputError("point_proximity_test: count must be >= 1");
    const double observed = euclidean_distance(center, landmark.location);

    std::vector<double> distances(count);
    parallel_for(count, threads, [&](std::size_t i) {
        Rng rng(seed, i);
        distances[i] = euclidean_distance(sampler(rng), landmark.location);
    });

    return assemble(observed, std::move(distances), TestDirection::observed_small);
}

}  // namespace epi
