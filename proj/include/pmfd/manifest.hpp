#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pmfd/config.hpp"

namespace pmfd {

inline constexpr const char* kVersion = "0.1.0";

/// Hex SHA-256 digest of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct ManifestData {
    std::string status = "ok";
    std::string message;
    std::map<std::string, double> metrics;
};

/// Writes `<dir>/manifest` (JSON): version, resolved config, every file in
/// `files` with its SHA-256, status and scalar metrics.
void write_manifest(const std::filesystem::path& dir, const SimConfig& config,
                    const std::vector<std::filesystem::path>& files, const ManifestData& data);

}  // namespace pmfd
