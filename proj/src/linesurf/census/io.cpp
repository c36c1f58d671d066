#include "linesurf/census/io.hpp"

#include <cctype>

namespace linesurf {

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view spec, const char *what)
{
    if (s.empty() || s.size() > 18)
        fail(Errc::parse, "field spec '" + std::string(spec) + "': bad " + what);
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(Errc::parse, "field spec '" + std::string(spec) + "': bad " + what);
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q)
{
    if (q < 2)
        return std::nullopt;
    std::uint64_t p = 0;
    for (std::uint64_t i = 2; i * i <= q; ++i)
        if (q % i == 0) {
            p = i;
            break;
        }
    if (p == 0)
        return std::pair{q, 1};
    int k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1)
        return std::nullopt;
    return std::pair{p, k};
}

template <class Base>
ExtField<Base> extension(const Base &base, std::string_view rest, std::string_view spec)
{
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos)
        fail(Errc::parse, "field spec '" + std::string(spec) + "': expected '^<k>/<modulus>'");
    const auto k = parse_count(rest.substr(0, slash), spec, "extension degree");
    char sym = 0;
    const auto qs = detail::parse_univariate(rest.substr(slash + 1), &sym);
    if (sym != 0 && sym != 'x')
        fail(Errc::parse, "field spec '" + std::string(spec) + "': the modulus must be written in x");
    std::vector<typename Base::Elem> m;
    for (const auto &q : qs)
        m.push_back(base.from_rational(q));
    upoly::trim(base, m);
    if (m.size() != k + 1)
        fail(Errc::parse, "field spec '" + std::string(spec) + "': modulus degree differs from " + std::to_string(k));
    return ExtField<Base>(base, m);
}

} // namespace

AnyField parse_field_spec(std::string_view spec)
{
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        fail(Errc::parse, "empty field spec");
    if (s == "Q")
        return Rationals{};
    if (s[0] == 'Q' && s.size() > 1 && s[1] == '^')
        return extension(Rationals{}, std::string_view(s).substr(2), spec);
    if (s[0] != 'F')
        fail(Errc::parse, "field spec '" + std::string(spec) + "': expected Q, F<q>, F<p>^<k>/<modulus> or Q^<k>/<modulus>");
    const auto caret = s.find('^');
    const auto q = parse_count(std::string_view(s).substr(1, caret == std::string::npos ? std::string::npos : caret - 1),
                               spec, "characteristic");
    if (caret != std::string::npos) {
        const PrimeField fp(q);
        return extension(fp, std::string_view(s).substr(caret + 1), spec);
    }
    const auto pk = prime_power(q);
    if (!pk)
        fail(Errc::structural, "field spec '" + std::string(spec) + "': " + std::to_string(q) + " is not a prime power");
    const PrimeField fp(pk->first);
    if (pk->second == 1)
        return fp;
    return ExtField<PrimeField>(fp, find_irreducible(fp, pk->second));
}

} // namespace linesurf
