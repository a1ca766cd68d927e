#include <doctest.h>

#include <cmath>

#include "epicenter/central.hpp"
#include "epicenter/error.hpp"
#include "epicenter/synth.hpp"
#include "test_util.hpp"

using namespace epi;

namespace {

const PlanePoint kOrigin{215000.0, 3315000.0, {50, true}};

}  // namespace

TEST_CASE("synth_cluster: vanishing sigma pins every point to the origin") {
    Rng rng(21);
    const CasePattern pattern =
        synth_cluster(ClusterModel::isotropic(kOrigin, 1e-6, 500), rng);
    for (const auto& p : pattern.points)
        CHECK(euclidean_distance(p, kOrigin) < 1e-3);
}

TEST_CASE("synth_cluster: sample covariance of an isotropic cluster is sigma^2 I within 5%") {
    Rng rng(22);
    const double sigma = 1000.0;
    const CasePattern pattern =
        synth_cluster(ClusterModel::isotropic(kOrigin, sigma, 100000), rng);

    double se = 0.0, sn = 0.0;
    for (const auto& p : pattern.points) {
        se += p.easting;
        sn += p.northing;
    }
    const double n = static_cast<double>(pattern.size());
    const double me = se / n, mn = sn / n;
    double cee = 0.0, cnn = 0.0, cen = 0.0;
    for (const auto& p : pattern.points) {
        const double de = p.easting - me, dn = p.northing - mn;
        cee += de * de;
        cnn += dn * dn;
        cen += de * dn;
    }
    cee /= n - 1.0;
    cnn /= n - 1.0;
    cen /= n - 1.0;

    CHECK(cee == doctest::Approx(sigma * sigma).epsilon(0.05));
    CHECK(cnn == doctest::Approx(sigma * sigma).epsilon(0.05));
    CHECK(std::abs(cen) < 0.05 * sigma * sigma);
}

TEST_CASE("synth_cluster: centroid lands within the CLT bound of the origin") {
    Rng rng(23);
    const double sigma = 1000.0;
    const std::size_t n = 10000;
    const CasePattern pattern = synth_cluster(ClusterModel::isotropic(kOrigin, sigma, n), rng);
    CHECK(euclidean_distance(centroid(pattern), kOrigin) <
          4.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("synth_cluster: anisotropic axes follow the orientation") {
    Rng rng(24);
    const CasePattern pattern = synth_cluster(
        ClusterModel::anisotropic(kOrigin, 3000.0, 500.0, kPi / 2.0, 50000), rng);
    // major axis along north: northing variance must dominate
    double ve = 0.0, vn = 0.0;
    const PlanePoint c = centroid(pattern);
    for (const auto& p : pattern.points) {
        ve += (p.easting - c.easting) * (p.easting - c.easting);
        vn += (p.northing - c.northing) * (p.northing - c.northing);
    }
    CHECK(vn / ve == doctest::Approx(36.0).epsilon(0.1));
}

TEST_CASE("synth_cluster: invalid models are rejected") {
    Rng rng(25);
    CHECK_THROWS_AS(synth_cluster(ClusterModel::isotropic(kOrigin, 0.0, 10), rng), InputError);
    CHECK_THROWS_AS(synth_cluster(ClusterModel::isotropic(kOrigin, 10.0, 0), rng), InputError);
    CHECK_THROWS_AS(
        synth_cluster(ClusterModel::anisotropic(kOrigin, 100.0, 200.0, 0.0, 10), rng),
        InputError);
}

TEST_CASE("flaw_demo: small clusters are rejected at the origin nearly always") {
    const DensityGrid city = city_fixture(30000.0, 40, 4, {50, true}, 26);
    FlawDemoConfig config;
    config.trials = 50;
    config.alpha = 0.05;
    config.R = 99;
    config.sigma_major = 1000.0;
    config.cluster_size = 155;

    const FlawDemoReport report = flaw_demo(city, config, 271828, 4);
    CHECK(report.trials.size() == 50);
    CHECK(report.rejection_rate >= 0.95);
    for (const auto& trial : report.trials) CHECK(city.contains(trial.origin));
}

TEST_CASE("flaw_demo: the landmark label never enters the arithmetic") {
    const DensityGrid city = city_fixture(30000.0, 30, 3, {50, true}, 27);
    FlawDemoConfig config;
    config.trials = 20;
    config.R = 49;
    config.sigma_major = 1000.0;
    config.cluster_size = 60;

    config.landmark_label = "Market";
    const FlawDemoReport a = flaw_demo(city, config, 31, 2);
    config.landmark_label = "Wanda Plaza";
    const FlawDemoReport b = flaw_demo(city, config, 31, 2);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t t = 0; t < a.trials.size(); ++t)
        CHECK(a.trials[t].p_value == b.trials[t].p_value);  // bitwise
}

TEST_CASE("flaw_demo: displacing the landmark far away kills the rejections") {
    const DensityGrid city = city_fixture(30000.0, 30, 3, {50, true}, 28);
    FlawDemoConfig config;
    config.trials = 20;
    config.R = 49;
    config.sigma_major = 1000.0;
    config.cluster_size = 60;
    config.landmark_offset_e = 3.0 * city.extent();

    const FlawDemoReport report = flaw_demo(city, config, 32, 2);
    CHECK(report.rejection_rate == 0.0);
}

TEST_CASE("flaw_demo: rejection rate is monotone nonincreasing in sigma") {
    const DensityGrid city = city_fixture(30000.0, 30, 3, {50, true}, 29);
    FlawDemoConfig config;
    config.trials = 30;
    config.R = 49;
    config.cluster_size = 100;
    config.relax_scale_check = true;

    double previous = 1.1;
    for (const double sigma : {1000.0, 8000.0, 30000.0}) {
        config.sigma_major = sigma;
        const FlawDemoReport report = flaw_demo(city, config, 33, 4);
        CHECK(report.rejection_rate <= previous);
        previous = report.rejection_rate;
    }
}

TEST_CASE("flaw_demo: city-scale clusters are indistinguishable from the null") {
    const DensityGrid city = city_fixture(30000.0, 30, 3, {50, true}, 30);
    FlawDemoConfig config;
    config.trials = 200;
    config.R = 49;
    config.sigma_major = 30000.0;  // sigma equal to the city extent
    config.cluster_size = 60;
    config.relax_scale_check = true;

    const FlawDemoReport report = flaw_demo(city, config, 34, 4);
    // near alpha = 0.05; generous band for 200 trials of a blunt comparison
    CHECK(report.rejection_rate < 0.15);
}

TEST_CASE("flaw_demo: scale precondition is enforced unless relaxed") {
    const DensityGrid city = city_fixture(30000.0, 30, 3, {50, true}, 35);
    FlawDemoConfig config;
    config.trials = 5;
    config.R = 9;
    config.sigma_major = 5000.0;  // > extent/10 = 3000
    config.cluster_size = 20;
    CHECK_THROWS_AS(flaw_demo(city, config, 36), ConfigError);
    config.relax_scale_check = true;
    CHECK_NOTHROW(flaw_demo(city, config, 36));
}

TEST_CASE("flaw_report_csv: one row per trial plus a summary") {
    const DensityGrid city = city_fixture(30000.0, 20, 2, {50, true}, 37);
    FlawDemoConfig config;
    config.trials = 3;
    config.R = 9;
    config.sigma_major = 800.0;
    config.cluster_size = 20;
    const FlawDemoReport report = flaw_demo(city, config, 38);
    const std::string csv = flaw_report_csv(report);
    CHECK(csv.find("trial,origin_e,origin_n,p_value,reject") == 0);
    CHECK(csv.find("rejection_rate=") != std::string::npos);
}
