#ifndef LINESURF_ALGEBRA_FIELDS_HPP
#define LINESURF_ALGEBRA_FIELDS_HPP

#include <cctype>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "linesurf/algebra/upoly.hpp"
#include "linesurf/error.hpp"

// Field contexts. Each context is a small immutable value exposing
//
//   using Elem;  zero() one() from_int() from_rational()
//   add sub mul neg inv div is_zero eq less
//   characteristic() cardinality()   (cardinality 0 = infinite)
//   to_string() parse() sqrt() random() name()
//
// Finite fields additionally enumerate their elements through
// element(i) / index(e) for 0 <= i < cardinality().
namespace linesurf {

class Rationals {
public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
    Elem from_rational(const mpq_class &q) const { return q; }

    Elem add(const Elem &a, const Elem &b) const { return a + b; }
    Elem sub(const Elem &a, const Elem &b) const { return a - b; }
    Elem mul(const Elem &a, const Elem &b) const { return a * b; }
    Elem neg(const Elem &a) const { return -a; }
    Elem inv(const Elem &a) const
    {
        if (sgn(a) == 0)
            fail(Errc::structural, "inverse of zero");
        return 1 / a;
    }
    Elem div(const Elem &a, const Elem &b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem &a) const { return sgn(a) == 0; }
    bool eq(const Elem &a, const Elem &b) const { return a == b; }
    bool less(const Elem &a, const Elem &b) const { return a < b; }

    std::uint64_t characteristic() const { return 0; }
    std::uint64_t cardinality() const { return 0; }

    std::string to_string(const Elem &a) const { return a.get_str(); }
    Elem parse(std::string_view s) const;
    std::optional<Elem> sqrt(const Elem &a) const;

    template <class Rng>
    Elem random(Rng &rng) const
    {
        std::uniform_int_distribution<int> dist(-9, 9);
        return from_int(dist(rng));
    }

    std::string name() const { return "Q"; }
    bool operator==(const Rationals &) const { return true; }
};

class PrimeField {
public:
    using Elem = std::uint64_t;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(long long v) const
    {
        const auto m = static_cast<long long>(p_);
        long long r = v % m;
        return static_cast<Elem>(r < 0 ? r + m : r);
    }
    Elem from_rational(const mpq_class &q) const;

    Elem add(Elem a, Elem b) const
    {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool less(Elem a, Elem b) const { return a < b; }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t cardinality() const { return p_; }
    Elem element(std::uint64_t i) const { return i; }
    std::uint64_t index(Elem a) const { return a; }

    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(std::string_view s) const;
    std::optional<Elem> sqrt(Elem a) const;

    template <class Rng>
    Elem random(Rng &rng) const
    {
        std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
        return dist(rng);
    }

    std::string name() const { return "F" + std::to_string(p_); }
    bool operator==(const PrimeField &o) const { return p_ == o.p_; }

private:
    std::uint64_t p_ = 0;
};

template <class F>
typename F::Elem power(const F &f, typename F::Elem a, std::uint64_t e)
{
    auto r = f.one();
    while (e > 0) {
        if (e & 1U)
            r = f.mul(r, a);
        e >>= 1U;
        if (e > 0)
            a = f.mul(a, a);
    }
    return r;
}

template <class F>
constexpr bool is_finite_field_v = false;

template <>
inline constexpr bool is_finite_field_v<PrimeField> = true;

// Tonelli-Shanks over any finite field of odd order; plain Frobenius root in
// characteristic 2.
template <class F>
std::optional<typename F::Elem> finite_field_sqrt(const F &f, const typename F::Elem &a)
{
    if (f.is_zero(a))
        return f.zero();
    const std::uint64_t q = f.cardinality();
    if (q % 2 == 0)
        return power(f, a, q / 2);
    if (!f.eq(power(f, a, (q - 1) / 2), f.one()))
        return std::nullopt;
    std::uint64_t odd = q - 1;
    int s = 0;
    while (odd % 2 == 0) {
        odd /= 2;
        ++s;
    }
    typename F::Elem z = f.zero();
    for (std::uint64_t i = 2; i < q; ++i) {
        z = f.element(i);
        if (!f.eq(power(f, z, (q - 1) / 2), f.one()))
            break;
    }
    auto c = power(f, z, odd);
    auto x = power(f, a, (odd + 1) / 2);
    auto t = power(f, a, odd);
    int m = s;
    while (!f.eq(t, f.one())) {
        int i = 0;
        auto tt = t;
        while (!f.eq(tt, f.one())) {
            tt = f.mul(tt, tt);
            ++i;
        }
        auto b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b = f.mul(b, b);
        x = f.mul(x, b);
        c = f.mul(b, b);
        t = f.mul(t, c);
        m = i;
    }
    return x;
}

namespace detail {

// Parses a univariate polynomial over the integers/rationals in one symbol,
// e.g. "x^2+x+1" or "-a^2/3 + 2". Returns low-to-high rational coefficients.
std::vector<mpq_class> parse_univariate(std::string_view text, char *symbol_out);

std::string render_univariate(const std::vector<std::string> &coeffs_low_to_high,
                              const std::string &symbol);

} // namespace detail

// Simple algebraic extension Base[a]/(m(a)) with m monic irreducible of
// degree k. Over a finite base irreducibility is verified by Rabin's test;
// over Q for k <= 3 by the rational root test.
template <class Base>
class ExtField {
public:
    using BaseElem = typename Base::Elem;
    using Elem = std::vector<BaseElem>;

    ExtField() = default;
    ExtField(Base base, std::vector<BaseElem> modulus, std::string symbol = "a")
    {
        auto d = std::make_shared<Data>();
        d->base = std::move(base);
        upoly::trim(d->base, modulus);
        if (modulus.size() < 2)
            fail(Errc::structural, "extension modulus must have degree >= 1");
        modulus = upoly::make_monic(d->base, modulus);
        d->k = static_cast<int>(modulus.size()) - 1;
        d->modulus = std::move(modulus);
        d->symbol = std::move(symbol);
        if (d->base.cardinality() != 0) {
            long double card = 1;
            for (int i = 0; i < d->k; ++i)
                card *= static_cast<long double>(d->base.cardinality());
            if (card > static_cast<long double>(std::numeric_limits<std::int64_t>::max()))
                fail(Errc::unsupported, "extension field too large");
            d->cardinality = 1;
            for (int i = 0; i < d->k; ++i)
                d->cardinality *= d->base.cardinality();
        }
        d_ = std::move(d);
        verify_irreducible();
    }

    const Base &base() const { return d_->base; }
    int degree() const { return d_->k; }
    const std::vector<BaseElem> &modulus() const { return d_->modulus; }
    const std::string &symbol() const { return d_->symbol; }

    Elem zero() const { return Elem(static_cast<std::size_t>(d_->k), base().zero()); }
    Elem one() const { return embed(base().one()); }
    Elem embed(const BaseElem &c) const
    {
        Elem r = zero();
        r[0] = c;
        return r;
    }
    Elem generator() const
    {
        Elem r = zero();
        if (d_->k == 1)
            r[0] = base().neg(d_->modulus[0]);
        else
            r[1] = base().one();
        return r;
    }
    Elem from_int(long long v) const { return embed(base().from_int(v)); }
    Elem from_rational(const mpq_class &q) const { return embed(base().from_rational(q)); }

    Elem add(const Elem &a, const Elem &b) const
    {
        Elem r(a.size(), base().zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = base().add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem &a, const Elem &b) const
    {
        Elem r(a.size(), base().zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = base().sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem &a) const
    {
        Elem r(a.size(), base().zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = base().neg(a[i]);
        return r;
    }
    Elem mul(const Elem &a, const Elem &b) const
    {
        return from_upoly(upoly::rem(base(), upoly::mul(base(), to_upoly(a), to_upoly(b)),
                                     d_->modulus));
    }
    Elem inv(const Elem &a) const
    {
        if (is_zero(a))
            fail(Errc::structural, "inverse of zero");
        auto [g, s, t] = upoly::xgcd(base(), to_upoly(a), d_->modulus);
        if (g.size() != 1)
            fail(Errc::structural, "extension modulus is not irreducible");
        return from_upoly(upoly::rem(base(), s, d_->modulus));
    }
    Elem div(const Elem &a, const Elem &b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem &a) const
    {
        for (const auto &c : a)
            if (!base().is_zero(c))
                return false;
        return true;
    }
    bool eq(const Elem &a, const Elem &b) const
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!base().eq(a[i], b[i]))
                return false;
        return true;
    }
    bool less(const Elem &a, const Elem &b) const
    {
        for (std::size_t i = a.size(); i-- > 0;) {
            if (base().less(a[i], b[i]))
                return true;
            if (base().less(b[i], a[i]))
                return false;
        }
        return false;
    }
    // Value of a base-field element if a lies in the base field.
    std::optional<BaseElem> to_base(const Elem &a) const
    {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (!base().is_zero(a[i]))
                return std::nullopt;
        return a[0];
    }

    std::uint64_t characteristic() const { return base().characteristic(); }
    std::uint64_t cardinality() const { return d_->cardinality; }

    Elem element(std::uint64_t i) const
    {
        Elem r = zero();
        const std::uint64_t b = base().cardinality();
        for (int j = 0; j < d_->k; ++j) {
            r[static_cast<std::size_t>(j)] = base().element(i % b);
            i /= b;
        }
        return r;
    }
    std::uint64_t index(const Elem &a) const
    {
        std::uint64_t r = 0;
        const std::uint64_t b = base().cardinality();
        for (std::size_t j = a.size(); j-- > 0;)
            r = r * b + base().index(a[j]);
        return r;
    }

    std::string to_string(const Elem &a) const
    {
        std::vector<std::string> cs;
        for (const auto &c : a)
            cs.push_back(base().is_zero(c) ? std::string() : base().to_string(c));
        return detail::render_univariate(cs, d_->symbol);
    }
    Elem parse(std::string_view s) const
    {
        char sym = 0;
        auto qs = detail::parse_univariate(s, &sym);
        if (sym != 0 && std::string(1, sym) != d_->symbol)
            fail(Errc::parse, "unexpected symbol '" + std::string(1, sym) + "' in element of " + name());
        upoly::UPoly<Base> p;
        for (const auto &q : qs)
            p.push_back(base().from_rational(q));
        upoly::trim(base(), p);
        return from_upoly(upoly::rem(base(), p, d_->modulus));
    }
    std::optional<Elem> sqrt(const Elem &a) const
    {
        if constexpr (is_finite_field_v<Base>) {
            return finite_field_sqrt(*this, a);
        } else {
            if (auto b = to_base(a)) {
                if (auto r = base().sqrt(*b))
                    return embed(*r);
            }
            fail(Errc::unsupported, "square roots in " + name() + " are only decided for base-field values");
        }
    }

    template <class Rng>
    Elem random(Rng &rng) const
    {
        Elem r = zero();
        for (auto &c : r)
            c = base().random(rng);
        return r;
    }

    std::string name() const
    {
        std::vector<std::string> cs;
        for (const auto &c : d_->modulus)
            cs.push_back(base().is_zero(c) ? std::string() : base().to_string(c));
        std::string b = base().name();
        if (b.find('/') != std::string::npos)
            b = "(" + b + ")";
        return b + "^" + std::to_string(d_->k) + "/" + detail::render_univariate(cs, "x");
    }
    bool operator==(const ExtField &o) const
    {
        if (d_ == o.d_)
            return true;
        if (!d_ || !o.d_)
            return false;
        return d_->base == o.d_->base && upoly::equal(base(), d_->modulus, o.d_->modulus);
    }

private:
    struct Data {
        Base base;
        std::vector<BaseElem> modulus;
        int k = 0;
        std::string symbol;
        std::uint64_t cardinality = 0;
    };

    upoly::UPoly<Base> to_upoly(const Elem &a) const
    {
        upoly::UPoly<Base> p(a.begin(), a.end());
        upoly::trim(base(), p);
        return p;
    }
    Elem from_upoly(const upoly::UPoly<Base> &p) const
    {
        Elem r = zero();
        for (std::size_t i = 0; i < p.size(); ++i)
            r[i] = p[i];
        return r;
    }

    void verify_irreducible() const
    {
        const auto &b = base();
        const auto &m = d_->modulus;
        const int k = d_->k;
        if (k == 1)
            return;
        if constexpr (is_finite_field_v<Base>) {
            // Rabin: no irreducible factor of degree <= k/2.
            const std::uint64_t q = b.cardinality();
            const upoly::UPoly<Base> x{b.zero(), b.one()};
            upoly::UPoly<Base> h = x;
            for (int i = 1; i <= k / 2; ++i) {
                h = upoly::pow_mod(b, h, q, m);
                auto g = upoly::gcd(b, m, upoly::sub(b, h, x));
                if (g.size() > 1)
                    fail(Errc::structural, "extension modulus is reducible over " + b.name());
            }
        } else if constexpr (std::is_same_v<Base, Rationals>) {
            if (k > 3)
                fail(Errc::unsupported, "irreducibility over Q is only verified for degree <= 3");
            if (has_rational_root())
                fail(Errc::structural, "extension modulus has a rational root");
        } else {
            fail(Errc::unsupported, "cannot verify irreducibility over " + b.name());
        }
    }

    bool has_rational_root() const
    {
        if constexpr (std::is_same_v<Base, Rationals>) {
            // Clear denominators to an integer polynomial, then test +-r/s.
            mpz_class l = 1;
            for (const auto &c : d_->modulus)
                l = lcm(l, mpz_class(c.get_den()));
            std::vector<mpz_class> z;
            for (const auto &c : d_->modulus)
                z.push_back(mpz_class(c * l));
            std::size_t lo = 0;
            while (z[lo] == 0)
                ++lo; // zero is a root when the constant term vanishes
            if (lo > 0)
                return true;
            auto divisors = [](mpz_class n) {
                n = abs(n);
                std::vector<mpz_class> ds;
                for (mpz_class i = 1; i * i <= n; ++i) {
                    if (n % i == 0) {
                        ds.push_back(i);
                        ds.push_back(n / i);
                    }
                }
                return ds;
            };
            for (const auto &r : divisors(z.front())) {
                for (const auto &s : divisors(z.back())) {
                    for (int sign : {1, -1}) {
                        mpq_class x(sign * r, s);
                        x.canonicalize();
                        mpq_class acc = 0;
                        for (std::size_t i = z.size(); i-- > 0;)
                            acc = acc * x + mpq_class(z[i]);
                        if (acc == 0)
                            return true;
                    }
                }
            }
            return false;
        } else {
            return false;
        }
    }

    std::shared_ptr<const Data> d_;
};

template <class B>
inline constexpr bool is_finite_field_v<ExtField<B>> = is_finite_field_v<B>;

// Rational function field Base(s). Elements are reduced fractions with a
// monic denominator.
template <class Base>
class FuncField {
public:
    using BaseElem = typename Base::Elem;
    using UP = upoly::UPoly<Base>;
    struct Elem {
        UP num;
        UP den;
    };

    FuncField() = default;
    explicit FuncField(Base base, std::string symbol = "s") : base_(std::move(base)), symbol_(std::move(symbol)) {}

    const Base &base() const { return base_; }
    const std::string &symbol() const { return symbol_; }

    Elem zero() const { return Elem{UP{}, UP{base_.one()}}; }
    Elem one() const { return Elem{UP{base_.one()}, UP{base_.one()}}; }
    Elem from_int(long long v) const { return from_poly(upoly::constant(base_, base_.from_int(v))); }
    Elem from_rational(const mpq_class &q) const { return from_poly(upoly::constant(base_, base_.from_rational(q))); }
    Elem from_poly(UP p) const
    {
        upoly::trim(base_, p);
        return Elem{std::move(p), UP{base_.one()}};
    }
    Elem variable() const { return from_poly(UP{base_.zero(), base_.one()}); }
    Elem make(UP num, UP den) const
    {
        upoly::trim(base_, num);
        upoly::trim(base_, den);
        if (den.empty())
            fail(Errc::structural, "rational function with zero denominator");
        if (num.empty())
            return zero();
        auto g = upoly::gcd(base_, num, den);
        if (g.size() > 1) {
            num = upoly::divmod(base_, num, g).first;
            den = upoly::divmod(base_, den, g).first;
        }
        const auto li = base_.inv(den.back());
        return Elem{upoly::scale(base_, num, li), upoly::scale(base_, den, li)};
    }

    Elem add(const Elem &a, const Elem &b) const
    {
        if (upoly::equal(base_, a.den, b.den))
            return make(upoly::add(base_, a.num, b.num), a.den);
        return make(upoly::add(base_, upoly::mul(base_, a.num, b.den), upoly::mul(base_, b.num, a.den)),
                    upoly::mul(base_, a.den, b.den));
    }
    Elem neg(const Elem &a) const { return Elem{upoly::neg(base_, a.num), a.den}; }
    Elem sub(const Elem &a, const Elem &b) const { return add(a, neg(b)); }
    Elem mul(const Elem &a, const Elem &b) const
    {
        if (a.num.empty() || b.num.empty())
            return zero();
        return make(upoly::mul(base_, a.num, b.num), upoly::mul(base_, a.den, b.den));
    }
    Elem inv(const Elem &a) const
    {
        if (a.num.empty())
            fail(Errc::structural, "inverse of zero");
        return make(a.den, a.num);
    }
    Elem div(const Elem &a, const Elem &b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem &a) const { return a.num.empty(); }
    // Cross-multiplication keeps equality exact even for unreduced input.
    bool eq(const Elem &a, const Elem &b) const
    {
        return upoly::equal(base_, upoly::mul(base_, a.num, b.den), upoly::mul(base_, b.num, a.den));
    }
    bool less(const Elem &a, const Elem &b) const { return to_string(a) < to_string(b); }

    std::uint64_t characteristic() const { return base_.characteristic(); }
    std::uint64_t cardinality() const { return 0; }

    std::string to_string(const Elem &a) const
    {
        auto render = [&](const UP &p) {
            std::vector<std::string> cs;
            for (const auto &c : p)
                cs.push_back(base_.is_zero(c) ? std::string() : base_.to_string(c));
            return detail::render_univariate(cs, symbol_);
        };
        if (a.num.empty())
            return "0";
        if (a.den.size() == 1)
            return render(a.num);
        return "(" + render(a.num) + ")/(" + render(a.den) + ")";
    }
    std::optional<Elem> sqrt(const Elem &) const
    {
        fail(Errc::unsupported, "square roots in rational function fields");
    }
    template <class Rng>
    Elem random(Rng &rng) const
    {
        return from_poly(UP{base_.random(rng), base_.random(rng)});
    }
    std::string name() const { return base_.name() + "(" + symbol_ + ")"; }
    bool operator==(const FuncField &o) const { return base_ == o.base_ && symbol_ == o.symbol_; }

private:
    Base base_;
    std::string symbol_ = "s";
};

// Smallest-index monic irreducible polynomial of degree k over a finite field.
template <class F>
std::vector<typename F::Elem> find_irreducible(const F &f, int k)
{
    const std::uint64_t q = f.cardinality();
    if (k == 1)
        return {f.zero(), f.one()};
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i)
        total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<typename F::Elem> m;
        std::uint64_t t = idx;
        for (int i = 0; i < k; ++i) {
            m.push_back(f.element(t % q));
            t /= q;
        }
        m.push_back(f.one());
        if (f.is_zero(m[0]))
            continue;
        try {
            ExtField<F> probe(f, m);
            return m;
        } catch (const Error &) {
        }
    }
    fail(Errc::inconsistent, "no irreducible polynomial found");
}

} // namespace linesurf

#endif
