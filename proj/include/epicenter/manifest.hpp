#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace epi {

/// Run record written next to every set of CLI outputs.  It carries the
/// command, the full parameter set (seed always included) and digests of the
/// input files - enough to reproduce the outputs byte for byte.  Worker
/// count and output location are execution details and are deliberately not
/// part of the record.
struct InputRecord {
    std::string role;
    std::string path;
    std::string digest;
};

struct Manifest {
    std::string command;
    nlohmann::json params;
    std::vector<InputRecord> inputs;
};

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& file);

}  // namespace epi
