#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace vortexlab::cli {

std::uint64_t fnv1a64(std::string_view data);

// File-per-entry memo store under a directory. Entries hold the canonical
// key next to the payload, so a hash collision reads as a miss.
class Cache {
public:
    // Directory from VORTEXLAB_CACHE_DIR; disabled when unset or empty.
    static Cache from_env();
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }
    std::optional<std::string> load(const std::string& key) const;
    void store(const std::string& key, const std::string& payload) const;

private:
    std::string path_for(const std::string& key) const;
    std::string dir_;
};

} // namespace vortexlab::cli
