#ifndef LINESURF_TESTS_SUPPORT_HPP
#define LINESURF_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include "linesurf/algebra/parse.hpp"
#include "linesurf/algebra/poly.hpp"

namespace testing {

template <class F>
linesurf::Poly<F> P(const F &field, const std::string &text, int nvars = 4)
{
    return linesurf::parse_poly(field, text, linesurf::default_variable_names(nvars));
}

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

} // namespace testing

#endif
