#include "hyperperc/config.hpp"

#include <array>
#include <cstdio>

namespace hyperperc {

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool is_unhashed_key(const std::string& key)
{
    static const std::array<const char*, 6> keys{"out", "threads", "save_config", "svg", "csv", "report"};
    for (const char* k : keys)
        if (key == k) return true;
    return false;
}

std::string config_hash(const nlohmann::json& config)
{
    nlohmann::json copy = nlohmann::json::object();
    for (auto it = config.begin(); it != config.end(); ++it)
        if (!is_unhashed_key(it.key())) copy[it.key()] = it.value();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(copy.dump())));
    return buf;
}

}  // namespace hyperperc
