#include "epicenter/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "epicenter/error.hpp"
#include "epicenter/stats.hpp"

namespace epi {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_number(const std::string& field, const std::filesystem::path& path, std::size_t line_no,
                    const std::string& column) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": non-numeric " +
                         column + " field '" + field + "'");
    return value;
}

struct Columns {
    std::optional<std::size_t> name, id, lat, lon, easting, northing, zone;
    bool geographic = false;
};

Columns parse_header(const std::string& header_line, const std::filesystem::path& path,
                     bool want_name) {
    Columns cols;
    const auto fields = split_csv(header_line);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string key = fields[i];
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (key == "name") cols.name = i;
        else if (key == "id") cols.id = i;
        else if (key == "lat" || key == "latitude") cols.lat = i;
        else if (key == "lon" || key == "longitude") cols.lon = i;
        else if (key == "easting") cols.easting = i;
        else if (key == "northing") cols.northing = i;
        else if (key == "zone") cols.zone = i;
        // anything else (onset dates etc.) is accepted and ignored
    }

    if (cols.lat && cols.lon) {
        cols.geographic = true;
    } else if (cols.easting && cols.northing && cols.zone) {
        cols.geographic = false;
    } else {
        throw InputError(path.string() +
                         ":1: header must declare lat,lon or easting,northing,zone columns");
    }
    if (want_name && !cols.name)
        throw InputError(path.string() + ":1: missing name column");
    if (!want_name && !cols.id)
        throw InputError(path.string() + ":1: missing id column");
    return cols;
}

struct RawRow {
    std::size_t line_no;
    std::string label;  // id or name
    GeoPoint geo;
    PlanePoint plane;
};

std::vector<RawRow> read_rows(const std::filesystem::path& path, bool want_name, Columns& cols_out) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line))
        throw InputError(path.string() + ": empty file (expected a header line)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const Columns cols = parse_header(line, path, want_name);

    std::vector<RawRow> rows;
    std::size_t line_no = 1;
    std::optional<UtmZone> first_zone;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);

        auto field_at = [&](std::size_t idx, const char* column) -> const std::string& {
            if (idx >= fields.size())
                throw InputError(path.string() + ":" + std::to_string(line_no) +
                                 ": missing " + std::string(column) + " field");
            return fields[idx];
        };

        RawRow row;
        row.line_no = line_no;
        row.label = want_name ? field_at(*cols.name, "name") : field_at(*cols.id, "id");
        if (row.label.empty())
            throw InputError(path.string() + ":" + std::to_string(line_no) +
                             (want_name ? ": empty name" : ": empty id"));

        if (cols.geographic) {
            row.geo.lat = parse_number(field_at(*cols.lat, "lat"), path, line_no, "lat");
            row.geo.lon = parse_number(field_at(*cols.lon, "lon"), path, line_no, "lon");
        } else {
            row.plane.easting =
                parse_number(field_at(*cols.easting, "easting"), path, line_no, "easting");
            row.plane.northing =
                parse_number(field_at(*cols.northing, "northing"), path, line_no, "northing");
            try {
                row.plane.zone = parse_zone(field_at(*cols.zone, "zone"));
            } catch (const InputError& e) {
                throw InputError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
            if (first_zone && !(row.plane.zone == *first_zone))
                throw InputError(path.string() + ":" + std::to_string(line_no) +
                                 ": mixed zones (" + to_string(row.plane.zone) + " vs " +
                                 to_string(*first_zone) + ")");
            first_zone = row.plane.zone;
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw InputError(path.string() + ": no data rows");
    cols_out = cols;
    return rows;
}

// Dataset-wide zone from the median longitude, so near-boundary datasets
// stay in one consistent zone.
int dataset_zone(const std::vector<RawRow>& rows) {
    std::vector<double> lons;
    lons.reserve(rows.size());
    for (const auto& r : rows) lons.push_back(r.geo.lon);
    return utm_zone_of(median_inplace(lons));
}

void project_rows(std::vector<RawRow>& rows, const LoadOptions& options,
                  const std::filesystem::path& path) {
    const int zone = options.force_zone ? *options.force_zone : dataset_zone(rows);
    for (auto& row : rows) {
        try {
            row.plane = utm_forward(row.geo, zone);
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(row.line_no) + ": " + e.what());
        }
    }
}

}  // namespace

UtmZone CasePattern::zone() const {
    if (points.empty()) throw InputError("zone() of an empty pattern");
    return points.front().zone;
}

CasePattern load_cases(const std::filesystem::path& path, const LoadOptions& options) {
    Columns cols;
    auto rows = read_rows(path, /*want_name=*/false, cols);
    if (cols.geographic) project_rows(rows, options, path);

    CasePattern pattern;
    pattern.points.reserve(rows.size());
    pattern.ids.reserve(rows.size());
    if (cols.geographic) pattern.geo.reserve(rows.size());
    for (const auto& row : rows) {
        pattern.points.push_back(row.plane);
        pattern.ids.push_back(row.label);
        if (cols.geographic) pattern.geo.push_back(row.geo);
    }
    if (options.dedupe) pattern = dedupe(pattern);
    return pattern;
}

void write_cases(const std::filesystem::path& path, const CasePattern& pattern) {
    if (pattern.size() == 0) throw InputError("write_cases: empty pattern");
    std::ofstream out(path);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    out << "id,easting,northing,zone\n";
    char buf[192];
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern.ids[i].find_first_of(",\n") != std::string::npos)
            throw InputError("write_cases: id '" + pattern.ids[i] + "' contains a delimiter");
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%s\n", pattern.ids[i].c_str(),
                      pattern.points[i].easting, pattern.points[i].northing,
                      to_string(pattern.points[i].zone).c_str());
        out << buf;
    }
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

std::vector<Landmark> load_landmarks(const std::filesystem::path& path, const LoadOptions& options) {
    Columns cols;
    auto rows = read_rows(path, /*want_name=*/true, cols);
    if (cols.geographic) project_rows(rows, options, path);

    std::set<std::string> seen;
    std::vector<Landmark> landmarks;
    landmarks.reserve(rows.size());
    for (const auto& row : rows) {
        if (!seen.insert(row.label).second)
            throw InputError(path.string() + ":" + std::to_string(row.line_no) +
                             ": duplicate landmark name '" + row.label + "'");
        Landmark lm;
        lm.name = row.label;
        lm.location = row.plane;
        if (cols.geographic) lm.geo = row.geo;
        landmarks.push_back(std::move(lm));
    }
    return landmarks;
}

void write_landmarks(const std::filesystem::path& path, const std::vector<Landmark>& landmarks) {
    std::ofstream out(path);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    out << "name,easting,northing,zone\n";
    char buf[192];
    for (const auto& lm : landmarks) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%s\n", lm.name.c_str(), lm.location.easting,
                      lm.location.northing, to_string(lm.location.zone).c_str());
        out << buf;
    }
    if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

CasePattern jitter(const CasePattern& pattern, double radius_m, Rng& rng) {
    if (radius_m < 0.0 || !std::isfinite(radius_m))
        throw InputError("jitter: radius must be finite and >= 0");
    if (radius_m == 0.0) return pattern;

    CasePattern out;
    out.ids = pattern.ids;
    out.points = pattern.points;
    for (auto& p : out.points) {
        // uniform on the disc: radius sqrt(u), angle 2*pi*u
        const double r = radius_m * std::sqrt(rng.uniform01());
        const double theta = 2.0 * kPi * rng.uniform01();
        p.easting += r * std::cos(theta);
        p.northing += r * std::sin(theta);
    }
    return out;
}

CasePattern dedupe(const CasePattern& pattern) {
    CasePattern out;
    std::map<std::pair<double, double>, bool> seen;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const auto key = std::make_pair(pattern.points[i].easting, pattern.points[i].northing);
        if (seen.emplace(key, true).second) {
            out.points.push_back(pattern.points[i]);
            out.ids.push_back(pattern.ids[i]);
            if (pattern.has_geo()) out.geo.push_back(pattern.geo[i]);
        }
    }
    return out;
}

}  // namespace epi
