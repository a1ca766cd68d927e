#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "epicenter/error.hpp"
#include "epicenter/resample.hpp"
#include "epicenter/synth.hpp"
#include "test_util.hpp"

using namespace epi;
using testutil::make_pattern;

namespace {

CasePattern anisotropic_155(std::uint64_t seed = 9001) {
    Rng rng(seed);
    const ClusterModel model = ClusterModel::anisotropic(
        {500000.0, 3400000.0, {50, true}}, 3000.0, 1000.0, 0.6, 155);
    return synth_cluster(model, rng);
}

CenterCloud cloud_of(std::initializer_list<std::pair<double, double>> coords) {
    CenterCloud cloud;
    for (const auto& [e, n] : coords) cloud.points.push_back({e, n, {50, true}});
    cloud.plan.m = cloud.points.size();
    return cloud;
}

}  // namespace

TEST_CASE("plan validation: n > N without replacement is rejected") {
    ResamplePlan plan{.n = 10, .m = 5, .with_replacement = false, .seed = 1};
    CHECK_THROWS_AS(plan.validate(9), InputError);
    CHECK_NOTHROW(plan.validate(10));
    plan.with_replacement = true;
    CHECK_NOTHROW(plan.validate(9));
}

TEST_CASE("sample_indices: without replacement never repeats an index") {
    Rng rng(5);
    for (int replicate = 0; replicate < 1000; ++replicate) {
        const auto indices = sample_indices(155, 80, false, rng);
        REQUIRE(indices.size() == 80);
        const std::set<std::size_t> unique(indices.begin(), indices.end());
        CHECK(unique.size() == indices.size());
        CHECK(*std::max_element(indices.begin(), indices.end()) < 155);
        CHECK(std::is_sorted(indices.begin(), indices.end()));
    }
}

TEST_CASE("sample_indices: draws are unbiased enough to cover all indices") {
    Rng rng(6);
    std::vector<std::size_t> hits(20, 0);
    for (int replicate = 0; replicate < 4000; ++replicate) {
        for (std::size_t idx : sample_indices(20, 5, false, rng)) hits[idx]++;
    }
    // each index expected 1000 times; a gross bias would push counts far off
    for (std::size_t idx = 0; idx < hits.size(); ++idx) {
        CHECK(hits[idx] > 800);
        CHECK(hits[idx] < 1200);
    }
}

TEST_CASE("resample_centers: n = N without replacement degenerates to the full-sample center") {
    const CasePattern pattern = anisotropic_155();
    const ResamplePlan plan{.n = 155, .m = 99, .with_replacement = false, .seed = 3};
    const CenterCloud cloud = resample_centers(pattern, plan, CenterEstimator::centroid);
    CHECK(cloud.degenerate);
    const PlanePoint full = centroid(pattern);
    for (const auto& p : cloud.points) {
        CHECK(p.easting == full.easting);
        CHECK(p.northing == full.northing);
    }
}

TEST_CASE("resample_centers: n = 1 with replacement yields original data points") {
    const CasePattern pattern = make_pattern({{0, 0}, {500, 0}, {0, 500}, {500, 500}});
    const ResamplePlan plan{.n = 1, .m = 200, .with_replacement = true, .seed = 8};
    const CenterCloud cloud = resample_centers(pattern, plan, CenterEstimator::centroid);
    CHECK_FALSE(cloud.degenerate);
    for (const auto& p : cloud.points) {
        const bool is_data_point = std::any_of(
            pattern.points.begin(), pattern.points.end(), [&](const PlanePoint& q) {
                return q.easting == p.easting && q.northing == p.northing;
            });
        CHECK(is_data_point);
    }
}

TEST_CASE("resample_centers: identical results for 1 and 4 workers") {
    const CasePattern pattern = anisotropic_155();
    for (const bool with_replacement : {false, true}) {
        for (const CenterEstimator est :
             {CenterEstimator::centroid, CenterEstimator::center_point}) {
            const ResamplePlan plan{.n = 80, .m = 199, .with_replacement = with_replacement,
                                    .seed = 2024};
            const CenterCloud serial = resample_centers(pattern, plan, est, 1);
            const CenterCloud parallel = resample_centers(pattern, plan, est, 4);
            REQUIRE(serial.points.size() == parallel.points.size());
            for (std::size_t i = 0; i < serial.points.size(); ++i) {
                CHECK(serial.points[i].easting == parallel.points[i].easting);
                CHECK(serial.points[i].northing == parallel.points[i].northing);
            }
        }
    }
}

TEST_CASE("cloud_spread: two points 2 m apart have RMS spread 1 m") {
    CHECK(cloud_spread(cloud_of({{0, 0}, {0, 2}})) == doctest::Approx(1.0));
    CHECK(cloud_spread(cloud_of({{7, 7}, {7, 7}, {7, 7}})) == 0.0);
}

TEST_CASE("cloud_spread: shrinks as the resample size grows") {
    const CasePattern pattern = anisotropic_155();
    for (const bool with_replacement : {false, true}) {
        for (const CenterEstimator est :
             {CenterEstimator::centroid, CenterEstimator::center_point}) {
            double previous = 0.0;
            for (const std::size_t n : {150, 100, 80, 50}) {
                const ResamplePlan plan{
                    .n = n, .m = 999, .with_replacement = with_replacement,
                    .seed = derive_plan_seed(17, with_replacement, est, n)};
                const double spread =
                    cloud_spread(resample_centers(pattern, plan, est));
                CHECK(spread > previous);
                previous = spread;
            }
        }
    }
}

TEST_CASE("cloud_spread: with replacement beats without at equal n") {
    const CasePattern pattern = anisotropic_155();
    for (const std::size_t n : {150, 100, 50}) {
        const ResamplePlan without{.n = n, .m = 999, .with_replacement = false, .seed = 4};
        const ResamplePlan with{.n = n, .m = 999, .with_replacement = true, .seed = 4};
        CHECK(cloud_spread(resample_centers(pattern, with, CenterEstimator::centroid)) >
              cloud_spread(resample_centers(pattern, without, CenterEstimator::centroid)));
    }
}

TEST_CASE("concentration_ellipse: isotropic normal cloud is recovered as a near-circle") {
    // simulation oracle: known covariance sigma^2 I
    CenterCloud cloud;
    Rng rng(77);
    const double sigma = 120.0;
    for (int i = 0; i < 5000; ++i) {
        const auto [x, y] = rng.normal_pair();
        cloud.points.push_back({1000.0 + sigma * x, 2000.0 + sigma * y, {50, true}});
    }
    cloud.plan.m = cloud.points.size();

    const Ellipse ellipse = concentration_ellipse(cloud, 0.95);
    CHECK(ellipse.semi_major / ellipse.semi_minor > 0.9);
    CHECK(ellipse.semi_major / ellipse.semi_minor < 1.1);
    // with 2 df the 95% quantile is -2 ln(0.05) = 5.9915
    const double expected_axis = sigma * std::sqrt(-2.0 * std::log(0.05));
    CHECK(ellipse.semi_major == doctest::Approx(expected_axis).epsilon(0.05));
    CHECK(ellipse.center.easting == doctest::Approx(1000.0).epsilon(0.01));

    // coverage close to the level
    std::size_t inside = 0;
    const double c = std::cos(ellipse.orientation), s = std::sin(ellipse.orientation);
    for (const auto& p : cloud.points) {
        const double dx = p.easting - ellipse.center.easting;
        const double dy = p.northing - ellipse.center.northing;
        const double u = (c * dx + s * dy) / ellipse.semi_major;
        const double v = (-s * dx + c * dy) / ellipse.semi_minor;
        if (u * u + v * v <= 1.0) ++inside;
    }
    const double coverage = static_cast<double>(inside) / 5000.0;
    CHECK(coverage > 0.93);
    CHECK(coverage < 0.97);
}

TEST_CASE("concentration_ellipse: anisotropic axis ratio 3 is recovered within 10%") {
    CenterCloud cloud;
    Rng rng(78);
    const double angle = 0.5;
    const double c = std::cos(angle), s = std::sin(angle);
    for (int i = 0; i < 5000; ++i) {
        const auto [x, y] = rng.normal_pair();
        const double u = 300.0 * x, v = 100.0 * y;
        cloud.points.push_back({c * u - s * v, s * u + c * v, {50, true}});
    }
    cloud.plan.m = cloud.points.size();

    const Ellipse ellipse = concentration_ellipse(cloud, 0.95);
    CHECK(ellipse.semi_major / ellipse.semi_minor == doctest::Approx(3.0).epsilon(0.10));
    CHECK(ellipse.orientation == doctest::Approx(angle).epsilon(0.10));
}

TEST_CASE("concentration_ellipse: collinear cloud collapses to a segment") {
    const CenterCloud cloud = cloud_of({{0, 0}, {10, 10}, {20, 20}, {30, 30}, {5, 5}});
    const Ellipse ellipse = concentration_ellipse(cloud, 0.95);
    CHECK(ellipse.semi_minor == doctest::Approx(0.0));
    CHECK(ellipse.orientation == doctest::Approx(kPi / 4.0));
}

TEST_CASE("concentration_ellipse: degenerate cloud and tiny m are rejected") {
    CenterCloud degenerate = cloud_of({{1, 1}, {1, 1}, {1, 1}});
    degenerate.degenerate = true;
    CHECK_THROWS_AS(concentration_ellipse(degenerate, 0.95), DegenerateError);
    CHECK_THROWS_AS(concentration_ellipse(cloud_of({{0, 0}, {1, 1}}), 0.95), InputError);
    CHECK_THROWS_AS(concentration_ellipse(cloud_of({{0, 0}, {1, 2}, {3, 1}}), 1.5), InputError);
}

TEST_CASE("chi2_quantile_2df: closed form") {
    CHECK(chi2_quantile_2df(0.95) == doctest::Approx(5.991464547107979).epsilon(1e-12));
}
