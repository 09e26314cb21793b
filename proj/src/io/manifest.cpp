#include "pmfd/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <json.hpp>
#include <stdexcept>

namespace pmfd {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

void write_manifest(const std::filesystem::path& dir, const SimConfig& config,
                    const std::vector<std::filesystem::path>& files, const ManifestData& data) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["experiment"] = std::string(experiment_name(config.experiment));
    j["status"] = data.status;
    if (!data.message.empty()) j["message"] = data.message;
    j["config"] = to_text(config);
    auto& listed = j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
        if (!std::filesystem::exists(f)) continue;
        listed.push_back({{"name", f.filename().string()}, {"sha256", sha256_file(f)}});
    }
    auto& metrics = j["metrics"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : data.metrics) {
        if (std::isfinite(v))
            metrics[k] = v;
        else
            metrics[k] = nullptr;
    }
    std::ofstream out(dir / "manifest", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << j.dump(2) << '\n';
}

}  // namespace pmfd
