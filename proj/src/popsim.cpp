#include "epicenter/popsim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "epicenter/error.hpp"

namespace epi {

void DensityGrid::finalize() {
    if (ncols < 1 || nrows < 1) throw InputError("density grid: empty dimensions");
    if (!(cell > 0.0) || !std::isfinite(cell)) throw InputError("density grid: cellsize must be > 0");
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
        throw InputError("density grid: non-finite origin");
    if (weights.size() != ncols * nrows)
        throw InputError("density grid: expected " + std::to_string(ncols * nrows) +
                         " weights, got " + std::to_string(weights.size()));

    cumulative.resize(weights.size());
    double running = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0)
            throw InputError("density grid: bad weight at cell " + std::to_string(i) +
                             " (row " + std::to_string(i / ncols) + ", col " +
                             std::to_string(i % ncols) + ")");
        running += w;
        cumulative[i] = running;
    }
    total = running;
    if (!(total > 0.0)) throw InputError("density grid: all weights are zero");
}

bool DensityGrid::contains(const PlanePoint& p) const {
    return p.zone == zone && p.easting >= xmin && p.easting <= xmax() && p.northing >= ymin &&
           p.northing <= ymax();
}

DensityGrid load_density(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    std::string line;
    auto next_content_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            if (!out.empty() && out.back() == '\r') out.pop_back();
            std::size_t i = 0;
            while (i < out.size() && std::isspace(static_cast<unsigned char>(out[i]))) ++i;
            if (i == out.size() || out[i] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_content_line(line)) throw InputError(path.string() + ": missing header line");

    DensityGrid grid;
    std::string zone_token;
    {
        std::istringstream header(line);
        if (!(header >> grid.ncols >> grid.nrows >> grid.xmin >> grid.ymin >> grid.cell >>
              zone_token))
            throw InputError(path.string() +
                             ": header must be 'ncols nrows xmin ymin cellsize zone'");
        grid.zone = parse_zone(zone_token);
    }

    const std::size_t expected = grid.ncols * grid.nrows;
    grid.weights.reserve(expected);
    while (grid.weights.size() < expected && next_content_line(line)) {
        std::istringstream row(line);
        double w;
        while (row >> w) grid.weights.push_back(w);
        if (!row.eof())
            throw InputError(path.string() + ": non-numeric weight near cell " +
                             std::to_string(grid.weights.size()));
    }
    grid.finalize();  // reports count mismatches and bad weights with the cell index
    return grid;
}

void write_density(const std::filesystem::path& path, const DensityGrid& grid) {
    std::ofstream out(path);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu %zu %.6f %.6f %.6f %s\n", grid.ncols, grid.nrows,
                  grid.xmin, grid.ymin, grid.cell, to_string(grid.zone).c_str());
    out << buf;
    for (std::size_t r = 0; r < grid.nrows; ++r) {
        for (std::size_t c = 0; c < grid.ncols; ++c) {
            std::snprintf(buf, sizeof buf, "%.10g%c", grid.weights[r * grid.ncols + c],
                          c + 1 == grid.ncols ? '\n' : ' ');
            out << buf;
        }
    }
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

PlanePoint sample_point(const DensityGrid& grid, Rng& rng) {
    if (grid.cumulative.size() != grid.weights.size() || !(grid.total > 0.0))
        throw InputError("sample_point: grid not finalized");

    // u < total and cumulative steps are flat across zero-weight cells, so
    // upper_bound can never land on one
    const double u = rng.uniform01() * grid.total;
    const auto it = std::upper_bound(grid.cumulative.begin(), grid.cumulative.end(), u);
    const std::size_t idx = it == grid.cumulative.end()
                                ? grid.cumulative.size() - 1
                                : static_cast<std::size_t>(it - grid.cumulative.begin());

    const std::size_t row = idx / grid.ncols;
    const std::size_t col = idx % grid.ncols;
    PlanePoint p;
    p.easting = grid.xmin + (static_cast<double>(col) + rng.uniform01()) * grid.cell;
    p.northing = grid.ymin + (static_cast<double>(row) + rng.uniform01()) * grid.cell;
    p.zone = grid.zone;
    return p;
}

CasePattern sample_fixed_n(const DensityGrid& grid, std::size_t n, Rng& rng) {
    if (n < 1) throw InputError("sample_fixed_n: n must be >= 1");
    CasePattern pattern;
    pattern.points.reserve(n);
    pattern.ids.reserve(n);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        pattern.points.push_back(sample_point(grid, rng));
        std::snprintf(buf, sizeof buf, "sim-%06zu", i + 1);
        pattern.ids.emplace_back(buf);
    }
    return pattern;
}

DensityGrid city_fixture(double extent_m, std::size_t cells_per_side, std::size_t blobs,
                         UtmZone zone, std::uint64_t seed, double xmin, double ymin) {
    if (!(extent_m > 0.0)) throw InputError("city_fixture: extent must be > 0");
    if (cells_per_side < 1) throw InputError("city_fixture: need at least one cell");
    if (blobs < 1) throw InputError("city_fixture: need at least one blob");

    DensityGrid grid;
    grid.ncols = cells_per_side;
    grid.nrows = cells_per_side;
    grid.xmin = xmin;
    grid.ymin = ymin;
    grid.cell = extent_m / static_cast<double>(cells_per_side);
    grid.zone = zone;

    struct Blob {
        double cx, cy, sigma, amplitude;
    };
    Rng rng(seed);
    std::vector<Blob> blob_list;
    blob_list.reserve(blobs);
    for (std::size_t b = 0; b < blobs; ++b) {
        Blob blob;
        blob.cx = xmin + rng.uniform(0.15, 0.85) * extent_m;
        blob.cy = ymin + rng.uniform(0.15, 0.85) * extent_m;
        blob.sigma = rng.uniform(0.05, 0.20) * extent_m;
        blob.amplitude = rng.uniform(0.5, 2.0);
        blob_list.push_back(blob);
    }

    grid.weights.resize(grid.ncols * grid.nrows);
    for (std::size_t r = 0; r < grid.nrows; ++r) {
        for (std::size_t c = 0; c < grid.ncols; ++c) {
            const double x = grid.xmin + (static_cast<double>(c) + 0.5) * grid.cell;
            const double y = grid.ymin + (static_cast<double>(r) + 0.5) * grid.cell;
            double w = 0.0;
            for (const auto& blob : blob_list) {
                const double dx = x - blob.cx;
                const double dy = y - blob.cy;
                w += blob.amplitude *
                     std::exp(-(dx * dx + dy * dy) / (2.0 * blob.sigma * blob.sigma));
            }
            grid.weights[r * grid.ncols + c] = w;
        }
    }
    grid.finalize();
    return grid;
}

}  // namespace epi
