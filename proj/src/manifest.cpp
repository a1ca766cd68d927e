#include "epicenter/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "epicenter/error.hpp"

namespace epi {

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "' for digesting");

    std::uint64_t hash = 14695981039346656037ULL;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }

    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void write_manifest(const std::filesystem::path& out_dir, const Manifest& manifest) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["params"] = manifest.params;
    doc["inputs"] = nlohmann::json::array();
    for (const auto& input : manifest.inputs) {
        doc["inputs"].push_back(
            {{"role", input.role}, {"path", input.path}, {"digest", input.digest}});
    }

    const auto file = out_dir / "manifest.json";
    std::ofstream out(file, std::ios::binary);
    if (!out) throw OutputError("cannot write '" + file.string() + "'");
    out << doc.dump(2) << "\n";
    if (!out) throw OutputError("failed writing '" + file.string() + "'");
}

Manifest read_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot open manifest '" + file.string() + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("bad manifest '" + file.string() + "': " + e.what());
    }

    Manifest manifest;
    try {
        manifest.command = doc.at("command").get<std::string>();
        manifest.params = doc.at("params");
        for (const auto& entry : doc.at("inputs")) {
            manifest.inputs.push_back({entry.at("role").get<std::string>(),
                                       entry.at("path").get<std::string>(),
                                       entry.at("digest").get<std::string>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError("bad manifest '" + file.string() + "': " + e.what());
    }
    return manifest;
}

}  // namespace epi
