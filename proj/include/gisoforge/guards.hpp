#ifndef GISOFORGE_GUARDS_HPP
#define GISOFORGE_GUARDS_HPP

#include <stdexcept>
#include <string>

namespace gisoforge {

// Thrown when an input exceeds an enumeration guard.  Distinct from
// std::invalid_argument so callers can tell "too big to enumerate" apart
// from "malformed input".
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string &what) : std::runtime_error(what) {}
};

// Enumeration guards can be raised via the GISO_FORGE_GUARD_OVERRIDE
// environment variable (an integer; the effective guard is the maximum of
// the built-in default and the override).  Off by default.
long long guard_limit(long long default_limit);

void check_guard(long long value, long long default_limit, const std::string &what);

} // namespace gisoforge

#endif // GISOFORGE_GUARDS_HPP
