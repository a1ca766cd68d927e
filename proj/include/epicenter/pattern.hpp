#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epicenter/geo.hpp"
#include "epicenter/rng.hpp"

namespace epi {

/// Ordered multiset of projected case locations.  Exact duplicates are legal
/// and counted with multiplicity.  When the source file was geographic, the
/// original lat/lon rows are retained in `geo` (parallel to `points`) so
/// haversine statistics stay available.
struct CasePattern {
    std::vector<PlanePoint> points;
    std::vector<std::string> ids;
    std::vector<GeoPoint> geo;  // empty when the source was planar

    std::size_t size() const { return points.size(); }
    bool has_geo() const { return !geo.empty(); }
    UtmZone zone() const;  // zone shared by all points; pattern must be nonempty
};

/// Named candidate "center" location.
struct Landmark {
    std::string name;
    PlanePoint location;
    std::optional<GeoPoint> geo;
};

struct LoadOptions {
    /// Force this UTM zone instead of deriving it from the file's median
    /// longitude; used to keep landmarks in the zone of the case data.
    std::optional<int> force_zone;
    /// Collapse exact duplicate coordinates (keeps the first id).
    bool dedupe = false;
};

/// Reads a delimited case file.  Header is either `id,lat,lon` or
/// `id,easting,northing,zone`; extra columns are ignored.  Geographic rows
/// are projected with a dataset-wide zone chosen from the median longitude.
/// Parse failures name the offending line.
CasePattern load_cases(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes the planar form `id,easting,northing,zone` (micrometer precision,
/// so load_cases(write_cases(p)) reproduces coordinates to 1e-6 m).
void write_cases(const std::filesystem::path& path, const CasePattern& pattern);

/// Landmark file: case format with a `name` column; names must be unique.
std::vector<Landmark> load_landmarks(const std::filesystem::path& path,
                                     const LoadOptions& options = {});

void write_landmarks(const std::filesystem::path& path, const std::vector<Landmark>& landmarks);

/// Displaces every point by an independent uniform draw from the disc of
/// the given radius.  Radius 0 is the identity.  Jittered coordinates no
/// longer correspond to the stored geographic rows, so `geo` is dropped
/// whenever the radius is positive.
CasePattern jitter(const CasePattern& pattern, double radius_m, Rng& rng);

/// Collapses rows with bitwise-equal coordinates, keeping the first id.
CasePattern dedupe(const CasePattern& pattern);

}  // namespace epi
