#pragma once
#include <stdexcept>
#include <string>

namespace monoidrep {

// Bad user input: malformed tables, size bounds, unknown names.  The CLI
// maps this to exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A proved identity failed or an internal consistency check tripped.  This
// always indicates a bug, never a mathematical outcome.  Exit code 2.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void check_internal(bool ok, const std::string& msg) {
    if (!ok) throw internal_error(msg);
}

inline void check_input(bool ok, const std::string& msg) {
    if (!ok) throw input_error(msg);
}

} // namespace monoidrep
