#include "linesurf/algebra/fields.hpp"

#include <cctype>
#include <map>

namespace linesurf {

namespace {

bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t i = 2; i * i <= p; ++i)
        if (p % i == 0)
            return false;
    return true;
}

std::string trimmed(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

mpq_class parse_rational_token(const std::string &t)
{
    if (t.empty())
        fail(Errc::parse, "empty number");
    std::size_t i = 0;
    if (t[0] == '+' || t[0] == '-')
        ++i;
    bool seen_digit = false, seen_slash = false, digit_after_slash = false;
    for (; i < t.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(t[i]))) {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
        } else if (t[i] == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            fail(Errc::parse, "malformed number '" + t + "'");
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash))
        fail(Errc::parse, "malformed number '" + t + "'");
    mpq_class q;
    std::string body = t[0] == '+' ? t.substr(1) : t;
    if (q.set_str(body, 10) != 0)
        fail(Errc::parse, "malformed number '" + t + "'");
    if (q.get_den() == 0)
        fail(Errc::parse, "zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

} // namespace

Rationals::Elem Rationals::parse(std::string_view s) const
{
    return parse_rational_token(trimmed(s));
}

std::optional<Rationals::Elem> Rationals::sqrt(const Elem &a) const
{
    if (sgn(a) < 0)
        return std::nullopt;
    mpz_class n = a.get_num(), d = a.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpq_class r(::sqrt(n), ::sqrt(d));
    r.canonicalize();
    return r;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p)
{
    if (p >= (std::uint64_t{1} << 32))
        fail(Errc::unsupported, "prime fields are limited to p < 2^32");
    if (!is_prime(p))
        fail(Errc::structural, std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::from_rational(const mpq_class &q) const
{
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class num = q.get_num() % pz;
    mpz_class den = q.get_den() % pz;
    if (num < 0)
        num += pz;
    if (den == 0)
        fail(Errc::structural, "denominator " + q.get_den().get_str() + " vanishes in " + name());
    return div(static_cast<Elem>(num.get_ui()), static_cast<Elem>(den.get_ui()));
}

PrimeField::Elem PrimeField::inv(Elem a) const
{
    if (a == 0)
        fail(Errc::structural, "inverse of zero");
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p_), nr = static_cast<long long>(a);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return from_int(t);
}

PrimeField::Elem PrimeField::parse(std::string_view s) const
{
    return from_rational(parse_rational_token(trimmed(s)));
}

std::optional<PrimeField::Elem> PrimeField::sqrt(Elem a) const
{
    return finite_field_sqrt(*this, a);
}

namespace detail {

std::vector<mpq_class> parse_univariate(std::string_view text, char *symbol_out)
{
    const std::string s = trimmed(text);
    if (s.empty())
        fail(Errc::parse, "empty polynomial");
    char symbol = 0;
    std::map<int, mpq_class> acc;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail(Errc::parse, "expected '+' or '-' at offset " + std::to_string(i) + " in '" + s + "'");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-')
            ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty())
            fail(Errc::parse, "empty term in '" + s + "'");
        mpq_class coeff = 1;
        int exp = 0;
        std::size_t sym_pos = std::string::npos;
        for (std::size_t k = 0; k < term.size(); ++k)
            if (std::isalpha(static_cast<unsigned char>(term[k]))) {
                sym_pos = k;
                break;
            }
        if (sym_pos == std::string::npos) {
            coeff = parse_rational_token(term);
        } else {
            const char sym = term[sym_pos];
            if (symbol != 0 && symbol != sym)
                fail(Errc::parse, "more than one symbol in '" + s + "'");
            symbol = sym;
            std::string before = term.substr(0, sym_pos);
            std::string after = term.substr(sym_pos + 1);
            if (!before.empty()) {
                if (before.back() != '*')
                    fail(Errc::parse, "expected '*' before symbol in '" + term + "'");
                before.pop_back();
                coeff = parse_rational_token(before);
            }
            exp = 1;
            std::string tail;
            if (!after.empty() && after[0] == '^') {
                std::size_t k = 1;
                while (k < after.size() && std::isdigit(static_cast<unsigned char>(after[k])))
                    ++k;
                if (k == 1)
                    fail(Errc::parse, "missing exponent in '" + term + "'");
                exp = std::stoi(after.substr(1, k - 1));
                tail = after.substr(k);
            } else {
                tail = after;
            }
            if (!tail.empty()) {
                if (tail[0] != '/')
                    fail(Errc::parse, "unexpected '" + tail + "' in '" + term + "'");
                coeff /= parse_rational_token(tail.substr(1));
            }
        }
        acc[exp] += sign * coeff;
        i = j;
    }
    int top = acc.empty() ? -1 : acc.rbegin()->first;
    std::vector<mpq_class> out(static_cast<std::size_t>(top + 1), mpq_class(0));
    for (auto &[e, c] : acc)
        out[static_cast<std::size_t>(e)] = c;
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    if (symbol_out)
        *symbol_out = symbol;
    return out;
}

std::string render_univariate(const std::vector<std::string> &coeffs, const std::string &symbol)
{
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const std::string &c = coeffs[k];
        if (c.empty())
            continue;
        bool negative = false;
        std::string mag;
        if (c.find_first_of("+-", 1) != std::string::npos) {
            mag = "(" + c + ")";
        } else {
            negative = c[0] == '-';
            mag = negative ? c.substr(1) : c;
        }
        std::string mono = k == 0 ? "" : (k == 1 ? symbol : symbol + "^" + std::to_string(k));
        std::string term;
        if (k == 0)
            term = mag;
        else if (mag == "1")
            term = mono;
        else
            term = mag + "*" + mono;
        if (out.empty())
            out = (negative ? "-" : "") + term;
        else
            out += (negative ? "-" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

} // namespace linesurf
