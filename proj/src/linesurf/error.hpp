#ifndef LINESURF_ERROR_HPP
#define LINESURF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace linesurf {

// Numeric values are part of the C API (see linesurf.h) and must stay stable.
enum class Errc : int {
    structural = 1,        // field or variable-count mismatch, malformed operands
    degenerate = 2,        // degenerate geometric input (equal points, zero form)
    unsupported = 3,       // operation not available for this field
    char_gate = 4,         // characteristic p with 0 < p <= d
    not_on_surface = 5,
    singular_point = 6,
    precondition = 7,      // a documented hypothesis of the operation failed
    parse = 8,
    inconsistent = 9,      // data contradicting the theory (e.g. everywhere ramified)
    truncation_cap = 10,
    incomplete_input = 11,
    io = 12,
    extension_required = 13,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace linesurf

#endif
