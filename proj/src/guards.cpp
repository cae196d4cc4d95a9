#include "gisoforge/guards.hpp"

#include <cstdlib>

namespace gisoforge {

long long guard_limit(long long default_limit) {
    const char *env = std::getenv("GISO_FORGE_GUARD_OVERRIDE");
    if (env == nullptr || *env == '\0') return default_limit;
    char *end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || v <= 0) return default_limit;
    return v > default_limit ? v : default_limit;
}

void check_guard(long long value, long long default_limit, const std::string &what) {
    long long limit = guard_limit(default_limit);
    if (value > limit) {
        throw GuardError(what + ": size " + std::to_string(value) +
                         " exceeds guard " + std::to_string(limit));
    }
}

} // namespace gisoforge
