#ifndef LINESURF_ALGEBRA_PARSE_HPP
#define LINESURF_ALGEBRA_PARSE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/poly.hpp"

namespace linesurf {

// Parses a polynomial expression with rational coefficients:
//
//   equation := expr [ '=' expr ]
//   expr     := ['+'|'-'] term { ('+'|'-') term }
//   term     := factor { '*' factor }
//   factor   := primary [ '^' integer ]
//   primary  := integer [ '/' integer ] | variable | '(' expr ')'
//
// Whitespace and newlines are free; '#' starts a comment running to the end
// of the line. "lhs = rhs" denotes lhs - rhs. Errors carry line:column.
Poly<Rationals> parse_rational_poly(std::string_view text, const std::vector<std::string> &names);

template <class F>
Poly<F> parse_poly(const F &field, std::string_view text, const std::vector<std::string> &names)
{
    return parse_rational_poly(text, names).map_coeffs(field, [&](const mpq_class &q) { return field.from_rational(q); });
}

std::vector<std::string> default_variable_names(int n);

} // namespace linesurf

#endif
