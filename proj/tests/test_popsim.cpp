#include <doctest.h>

#include <cmath>
#include <vector>

#include "epicenter/error.hpp"
#include "epicenter/popsim.hpp"
#include "test_util.hpp"

using namespace epi;
using testutil::TempDir;
using testutil::write_text;

namespace {

// critical values frozen from scipy.stats.chi2.ppf (tests/oracles/scalar_constants.py)
constexpr double kChi2Crit999Df1 = 10.827566170662733;
constexpr double kChi2Crit999Df99 = 148.23035916510173;

DensityGrid make_grid(std::size_t ncols, std::size_t nrows, std::vector<double> weights,
                      double cell = 1000.0) {
    DensityGrid grid;
    grid.ncols = ncols;
    grid.nrows = nrows;
    grid.xmin = 200000.0;
    grid.ymin = 3300000.0;
    grid.cell = cell;
    grid.zone = {50, true};
    grid.weights = std::move(weights);
    grid.finalize();
    return grid;
}

std::size_t cell_index(const DensityGrid& grid, const PlanePoint& p) {
    const auto col = static_cast<std::size_t>((p.easting - grid.xmin) / grid.cell);
    const auto row = static_cast<std::size_t>((p.northing - grid.ymin) / grid.cell);
    return row * grid.ncols + col;
}

}  // namespace

TEST_CASE("load_density: 2x2 uniform grid") {
    TempDir dir("grid2");
    write_text(dir.file("g.grid"),
               "# uniform fixture\n2 2 0.0 0.0 500.0 50N\n1 1\n1 1\n");
    const DensityGrid grid = load_density(dir.file("g.grid"));
    CHECK(grid.ncols == 2);
    CHECK(grid.nrows == 2);
    CHECK(grid.total == doctest::Approx(4.0));
    CHECK(grid.cell == 500.0);
    CHECK(grid.zone == UtmZone{50, true});
}

TEST_CASE("load_density: single positive cell is valid, all-zero is not") {
    TempDir dir("gridz");
    write_text(dir.file("one.grid"), "2 2 0 0 500 50N\n0 0\n0 1\n");
    CHECK(load_density(dir.file("one.grid")).total == doctest::Approx(1.0));

    write_text(dir.file("zero.grid"), "2 2 0 0 500 50N\n0 0\n0 0\n");
    CHECK_THROWS_WITH_AS(load_density(dir.file("zero.grid")), doctest::Contains("zero"),
                         InputError);
}

TEST_CASE("load_density: malformed grids name the offending cell") {
    TempDir dir("gridbad");
    write_text(dir.file("neg.grid"), "2 2 0 0 500 50N\n1 -3\n1 1\n");
    CHECK_THROWS_WITH_AS(load_density(dir.file("neg.grid")), doctest::Contains("cell 1"),
                         InputError);

    write_text(dir.file("short.grid"), "2 2 0 0 500 50N\n1 1\n1\n");
    CHECK_THROWS_WITH_AS(load_density(dir.file("short.grid")), doctest::Contains("expected 4"),
                         InputError);

    write_text(dir.file("nonnum.grid"), "2 2 0 0 500 50N\n1 1\nx 1\n");
    CHECK_THROWS_AS(load_density(dir.file("nonnum.grid")), InputError);

    write_text(dir.file("badhdr.grid"), "2 0 0 500 50N\n1 1\n");
    CHECK_THROWS_AS(load_density(dir.file("badhdr.grid")), InputError);
}

TEST_CASE("write_density / load_density round-trip") {
    TempDir dir("gridrt");
    const DensityGrid grid = city_fixture(30000.0, 25, 4, {50, true}, 7);
    write_density(dir.file("city.grid"), grid);
    const DensityGrid back = load_density(dir.file("city.grid"));
    CHECK(back.ncols == grid.ncols);
    CHECK(back.nrows == grid.nrows);
    CHECK(back.total == doctest::Approx(grid.total).epsilon(1e-9));
    for (std::size_t i = 0; i < grid.weights.size(); ++i)
        CHECK(back.weights[i] == doctest::Approx(grid.weights[i]).epsilon(1e-9));
}

TEST_CASE("sample_point: single positive cell receives every draw") {
    const DensityGrid grid = make_grid(3, 3, {0, 0, 0, 0, 5, 0, 0, 0, 0});
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const PlanePoint p = sample_point(grid, rng);
        CHECK(cell_index(grid, p) == 4);
        CHECK(grid.contains(p));
    }
}

TEST_CASE("sample_fixed_n: two equal cells pass the chi-square oracle at alpha = 0.001") {
    const DensityGrid grid = make_grid(2, 1, {1, 1});
    Rng rng(12);
    const CasePattern pattern = sample_fixed_n(grid, 10000, rng);
    REQUIRE(pattern.size() == 10000);

    std::vector<std::size_t> counts(2, 0);
    for (const auto& p : pattern.points) counts[cell_index(grid, p)]++;
    const double stat = testutil::chi_square_stat(counts, {0.5, 0.5}, 10000);
    CHECK(stat < kChi2Crit999Df1);
}

TEST_CASE("sample_fixed_n: uniform 10x10 grid passes the chi-square oracle at alpha = 0.001") {
    const DensityGrid grid = make_grid(10, 10, std::vector<double>(100, 1.0));
    Rng rng(13);
    const CasePattern pattern = sample_fixed_n(grid, 10000, rng);

    std::vector<std::size_t> counts(100, 0);
    for (const auto& p : pattern.points) counts[cell_index(grid, p)]++;
    const double stat = testutil::chi_square_stat(counts, std::vector<double>(100, 0.01), 10000);
    CHECK(stat < kChi2Crit999Df99);
}

TEST_CASE("sample_fixed_n: zero-weight cells receive exactly zero points") {
    // checkerboard of zero/positive weights
    std::vector<double> weights(100, 0.0);
    for (std::size_t i = 0; i < 100; ++i)
        if ((i / 10 + i % 10) % 2 == 0) weights[i] = 1.0 + static_cast<double>(i % 7);
    const DensityGrid grid = make_grid(10, 10, weights);

    Rng rng(14);
    std::vector<std::size_t> counts(100, 0);
    for (int batch = 0; batch < 100; ++batch) {
        const CasePattern pattern = sample_fixed_n(grid, 10000, rng);
        for (const auto& p : pattern.points) counts[cell_index(grid, p)]++;
    }
    for (std::size_t i = 0; i < 100; ++i) {
        if (weights[i] == 0.0) CHECK(counts[i] == 0);
        else CHECK(counts[i] > 0);
    }
}

TEST_CASE("sample_fixed_n: cell frequencies converge to normalized weights") {
    Rng weight_rng(15);
    std::vector<double> weights(100);
    for (auto& w : weights) w = weight_rng.uniform(0.0, 1.0);
    const DensityGrid grid = make_grid(10, 10, weights);

    std::vector<double> probability(100);
    for (std::size_t i = 0; i < 100; ++i) probability[i] = weights[i] / grid.total;

    Rng rng(16);
    const CasePattern pattern = sample_fixed_n(grid, 100000, rng);
    std::vector<std::size_t> counts(100, 0);
    for (const auto& p : pattern.points) {
        CHECK(grid.contains(p));
        counts[cell_index(grid, p)]++;
    }
    CHECK(testutil::total_variation(counts, probability, 100000) < 0.02);
}

TEST_CASE("sample_fixed_n: deterministic under the seeding contract") {
    const DensityGrid grid = city_fixture(30000.0, 30, 3, {50, true}, 17);
    Rng a(99), b(99);
    const CasePattern pa = sample_fixed_n(grid, 155, a);
    const CasePattern pb = sample_fixed_n(grid, 155, b);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa.points[i].easting == pb.points[i].easting);
        CHECK(pa.points[i].northing == pb.points[i].northing);
    }
    CHECK(pa.ids.front() == "sim-000001");
}

TEST_CASE("city_fixture: positive total and in-bounds blobs") {
    const DensityGrid grid = city_fixture(30000.0, 60, 5, {50, true}, 18);
    CHECK(grid.ncols == 60);
    CHECK(grid.total > 0.0);
    CHECK(grid.extent() == doctest::Approx(30000.0));
}
