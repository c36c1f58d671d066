#ifndef LINESURF_CENSUS_BOUNDS_HPP
#define LINESURF_CENSUS_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "linesurf/error.hpp"

namespace linesurf {

struct BoundsReport {
    std::int64_t d = 0;
    std::int64_t clebsch = 0;   // d(11d - 24), degree of the flecnodal divisor
    std::int64_t segre = 0;     // (d - 2)(11d - 6)
    std::int64_t new_bound = 0; // 11d^2 - 30d + 18
    std::optional<std::int64_t> observed;
};

inline BoundsReport bounds(std::int64_t d)
{
    if (d < 3)
        fail(Errc::precondition, "bounds: degree must be at least 3, got " + std::to_string(d));
    if (d > 1000000)
        fail(Errc::precondition, "bounds: degree too large");
    BoundsReport r;
    r.d = d;
    r.clebsch = d * (11 * d - 24);
    r.segre = (d - 2) * (11 * d - 6);
    r.new_bound = 11 * d * d - 30 * d + 18;
    return r;
}

} // namespace linesurf

#endif
