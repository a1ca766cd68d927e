#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "epicenter/pattern.hpp"
#include "epicenter/rng.hpp"

namespace epi {

/// Georeferenced rectangular raster of nonnegative weights; the intensity
/// surface of the null model.  Row 0 sits at ymin (rows run south to north).
struct DensityGrid {
    std::size_t ncols = 0;
    std::size_t nrows = 0;
    double xmin = 0.0;
    double ymin = 0.0;
    double cell = 0.0;
    UtmZone zone;
    std::vector<double> weights;  // row-major, ncols * nrows values

    // built by finalize()
    std::vector<double> cumulative;
    double total = 0.0;

    /// Validates invariants (finite weights >= 0, at least one positive)
    /// and builds the prefix sums the sampler searches.
    void finalize();

    double xmax() const { return xmin + cell * static_cast<double>(ncols); }
    double ymax() const { return ymin + cell * static_cast<double>(nrows); }
    double width() const { return cell * static_cast<double>(ncols); }
    double height() const { return cell * static_cast<double>(nrows); }
    double extent() const { return std::max(width(), height()); }
    bool contains(const PlanePoint& p) const;
};

/// ASCII grid format: a header line `ncols nrows xmin ymin cellsize zone`
/// followed by nrows lines of ncols weights (row 0 = southernmost first).
/// Lines starting with '#' are comments.
DensityGrid load_density(const std::filesystem::path& path);

void write_density(const std::filesystem::path& path, const DensityGrid& grid);

/// One point of the conditioned (binomial) process: cell picked with
/// probability weight/total, position uniform inside the cell.  Cells of
/// zero weight are never selected.
PlanePoint sample_point(const DensityGrid& grid, Rng& rng);

/// n independent such points as a CasePattern (ids sim-000001, ...).
CasePattern sample_fixed_n(const DensityGrid& grid, std::size_t n, Rng& rng);

/// Synthetic city-like raster: a few Gaussian population blobs over a square
/// of the given extent.  Used by tests and the density-fixture command.
DensityGrid city_fixture(double extent_m, std::size_t cells_per_side, std::size_t blobs,
                         UtmZone zone, std::uint64_t seed, double xmin = 200000.0,
                         double ymin = 3300000.0);

}  // namespace epi
