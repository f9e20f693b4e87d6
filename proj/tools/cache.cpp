#include "cache.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vortexlab::cli {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

Cache Cache::from_env() {
    const char* d = std::getenv("VORTEXLAB_CACHE_DIR");
    return Cache(d ? d : "");
}

std::string Cache::path_for(const std::string& key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(key)));
    return (std::filesystem::path(dir_) / name).string();
}

std::optional<std::string> Cache::load(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        auto j = nlohmann::json::parse(ss.str());
        if (j.at("key").get<std::string>() != key) return std::nullopt;
        return j.at("payload").get<std::string>();
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entry, recompute
    }
}

void Cache::store(const std::string& key, const std::string& payload) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const std::string path = path_for(key);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << nlohmann::json{{"key", key}, {"payload", payload}}.dump();
    }
    std::filesystem::rename(tmp, path, ec);
}

} // namespace vortexlab::cli
