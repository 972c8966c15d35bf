#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "soc/errors.hpp"

namespace soc {

/// Default budget for total matrix entries created by a single operation.
inline constexpr std::size_t kDefaultMaxEntries = 1'000'000;

/// Entry budget, overridable through the SOC_MAX_ENTRIES environment variable.
inline std::size_t max_entries() {
    if (const char* env = std::getenv("SOC_MAX_ENTRIES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxEntries;
}

inline void require_entries(std::size_t entries, const std::string& what) {
    const std::size_t cap = max_entries();
    if (entries > cap) {
        throw capacity_error(what + ": would allocate " + std::to_string(entries) +
                             " entries, over the cap of " + std::to_string(cap) +
                             " (set SOC_MAX_ENTRIES to raise)");
    }
}

} // namespace soc
