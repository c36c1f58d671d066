#ifndef LINESURF_ALGEBRA_UPOLY_HPP
#define LINESURF_ALGEBRA_UPOLY_HPP

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "linesurf/error.hpp"

// Dense univariate polynomials over a field context F, stored low-to-high
// with no trailing zeros (the zero polynomial is the empty vector).
namespace linesurf::upoly {

template <class F>
using UPoly = std::vector<typename F::Elem>;

template <class F>
void trim(const F &f, UPoly<F> &a)
{
    while (!a.empty() && f.is_zero(a.back()))
        a.pop_back();
}

template <class F>
int degree(const UPoly<F> &a)
{
    return static_cast<int>(a.size()) - 1;
}

template <class F>
UPoly<F> constant(const F &f, typename F::Elem c)
{
    UPoly<F> r;
    if (!f.is_zero(c))
        r.push_back(std::move(c));
    return r;
}

template <class F>
UPoly<F> monomial(const F &f, typename F::Elem c, int k)
{
    if (f.is_zero(c))
        return {};
    UPoly<F> r(static_cast<std::size_t>(k) + 1, f.zero());
    r[static_cast<std::size_t>(k)] = std::move(c);
    return r;
}

template <class F>
UPoly<F> add(const F &f, const UPoly<F> &a, const UPoly<F> &b)
{
    UPoly<F> r = a.size() >= b.size() ? a : b;
    const UPoly<F> &s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i)
        r[i] = f.add(r[i], s[i]);
    trim(f, r);
    return r;
}

template <class F>
UPoly<F> neg(const F &f, const UPoly<F> &a)
{
    UPoly<F> r;
    r.reserve(a.size());
    for (const auto &c : a)
        r.push_back(f.neg(c));
    return r;
}

template <class F>
UPoly<F> sub(const F &f, const UPoly<F> &a, const UPoly<F> &b)
{
    return add(f, a, neg(f, b));
}

template <class F>
UPoly<F> scale(const F &f, const UPoly<F> &a, const typename F::Elem &c)
{
    if (f.is_zero(c))
        return {};
    UPoly<F> r;
    r.reserve(a.size());
    for (const auto &x : a)
        r.push_back(f.mul(x, c));
    trim(f, r);
    return r;
}

template <class F>
UPoly<F> mul(const F &f, const UPoly<F> &a, const UPoly<F> &b)
{
    if (a.empty() || b.empty())
        return {};
    UPoly<F> r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (f.is_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    trim(f, r);
    return r;
}

// Returns (quotient, remainder). Division by zero is a structural error.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const F &f, UPoly<F> a, const UPoly<F> &b)
{
    if (b.empty())
        fail(Errc::structural, "univariate division by zero polynomial");
    trim(f, a);
    if (a.size() < b.size())
        return {UPoly<F>{}, std::move(a)};
    const auto lead_inv = f.inv(b.back());
    UPoly<F> q(a.size() - b.size() + 1, f.zero());
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (f.is_zero(a[k]))
            continue;
        const auto c = f.mul(a[k], lead_inv);
        const std::size_t shift = k + 1 - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
        q[shift] = c;
    }
    trim(f, a);
    trim(f, q);
    return {std::move(q), std::move(a)};
}

template <class F>
UPoly<F> rem(const F &f, const UPoly<F> &a, const UPoly<F> &b)
{
    return divmod(f, a, b).second;
}

template <class F>
UPoly<F> make_monic(const F &f, const UPoly<F> &a)
{
    if (a.empty())
        return a;
    return scale(f, a, f.inv(a.back()));
}

template <class F>
UPoly<F> gcd(const F &f, UPoly<F> a, UPoly<F> b)
{
    trim(f, a);
    trim(f, b);
    while (!b.empty()) {
        auto r = rem(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(f, a);
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::tuple<UPoly<F>, UPoly<F>, UPoly<F>> xgcd(const F &f, UPoly<F> a, UPoly<F> b)
{
    trim(f, a);
    trim(f, b);
    UPoly<F> s0 = constant(f, f.one()), s1;
    UPoly<F> t0, t1 = constant(f, f.one());
    while (!b.empty()) {
        auto [q, r] = divmod(f, a, b);
        auto s2 = sub(f, s0, mul(f, q, s1));
        auto t2 = sub(f, t0, mul(f, q, t1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.empty())
        return {a, s0, t0};
    const auto li = f.inv(a.back());
    return {scale(f, a, li), scale(f, s0, li), scale(f, t0, li)};
}

template <class F>
typename F::Elem eval(const F &f, const UPoly<F> &a, const typename F::Elem &x)
{
    auto acc = f.zero();
    for (std::size_t k = a.size(); k-- > 0;)
        acc = f.add(f.mul(acc, x), a[k]);
    return acc;
}

template <class F>
UPoly<F> derivative(const F &f, const UPoly<F> &a)
{
    UPoly<F> r;
    for (std::size_t k = 1; k < a.size(); ++k)
        r.push_back(f.mul(f.from_int(static_cast<long long>(k)), a[k]));
    trim(f, r);
    return r;
}

template <class F>
UPoly<F> mul_mod(const F &f, const UPoly<F> &a, const UPoly<F> &b, const UPoly<F> &m)
{
    return rem(f, mul(f, a, b), m);
}

template <class F>
UPoly<F> pow_mod(const F &f, UPoly<F> base, std::uint64_t e, const UPoly<F> &m)
{
    UPoly<F> r = rem(f, constant(f, f.one()), m);
    base = rem(f, base, m);
    while (e > 0) {
        if (e & 1U)
            r = mul_mod(f, r, base, m);
        e >>= 1U;
        if (e > 0)
            base = mul_mod(f, base, base, m);
    }
    return r;
}

// Multiplicity of x0 as a root of a (a must be nonzero).
template <class F>
int root_multiplicity(const F &f, UPoly<F> a, const typename F::Elem &x0)
{
    if (a.empty())
        fail(Errc::structural, "root multiplicity of the zero polynomial");
    const UPoly<F> lin{f.neg(x0), f.one()};
    int m = 0;
    for (;;) {
        auto [q, r] = divmod(f, a, lin);
        if (!r.empty())
            return m;
        ++m;
        a = std::move(q);
    }
}

template <class F>
bool equal(const F &f, const UPoly<F> &a, const UPoly<F> &b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!f.eq(a[i], b[i]))
            return false;
    return true;
}

} // namespace linesurf::upoly

#endif
