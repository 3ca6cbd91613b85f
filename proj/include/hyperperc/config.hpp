#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hyperperc {

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Keys that name output destinations or execution resources; they do not
// change results and are left out of the hash.
bool is_unhashed_key(const std::string& key);

// Hex FNV-1a of the compact dump of the config with unhashed keys removed.
// nlohmann::json orders object keys, so the dump is canonical.
std::string config_hash(const nlohmann::json& config);

}  // namespace hyperperc
