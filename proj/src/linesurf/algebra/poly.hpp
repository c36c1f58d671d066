#ifndef LINESURF_ALGEBRA_POLY_HPP
#define LINESURF_ALGEBRA_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/error.hpp"

namespace linesurf {

inline constexpr int kMaxVars = 8;

struct Mono {
    std::array<std::uint16_t, kMaxVars> e{};

    int degree() const
    {
        int s = 0;
        for (auto x : e)
            s += x;
        return s;
    }
    Mono operator*(const Mono &o) const
    {
        Mono r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e[static_cast<std::size_t>(i)] + o.e[static_cast<std::size_t>(i)]);
        return r;
    }
    bool divides(const Mono &o) const
    {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[static_cast<std::size_t>(i)] > o.e[static_cast<std::size_t>(i)])
                return false;
        return true;
    }
    // Requires divides(o) on the argument order: o / *this.
    Mono quotient_of(const Mono &o) const
    {
        Mono r;
        for (int i = 0; i < kMaxVars; ++i)
            r.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(o.e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i)]);
        return r;
    }
    static Mono var(int i, int power = 1)
    {
        Mono m;
        m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(power);
        return m;
    }
    friend bool operator==(const Mono &a, const Mono &b) { return a.e == b.e; }
};

// Graded lexicographic order, x0 > x1 > ... within a degree.
struct GrlexLess {
    bool operator()(const Mono &a, const Mono &b) const
    {
        const int da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return a.e > b.e;
    }
};

struct MonoHash {
    std::size_t operator()(const Mono &m) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

template <class F>
using Matrix = std::vector<std::vector<typename F::Elem>>;

// Sparse multivariate polynomial with coefficients in the field context F.
// Terms are kept sorted ascending in graded lex order with no zero
// coefficients; every operation returns this canonical form.
template <class F>
class Poly {
public:
    using Elem = typename F::Elem;
    struct Term {
        Mono mono;
        Elem coeff;
    };
    using Keep = std::function<bool(const Mono &)>;

    Poly() = default;
    Poly(F field, int nvars) : field_(std::move(field)), nvars_(nvars)
    {
        if (nvars < 0 || nvars > kMaxVars)
            fail(Errc::structural, "polynomials support at most " + std::to_string(kMaxVars) + " variables");
    }

    static Poly constant(F field, int nvars, Elem c)
    {
        Poly p(std::move(field), nvars);
        if (!p.field_.is_zero(c))
            p.terms_.push_back({Mono{}, std::move(c)});
        return p;
    }
    static Poly variable(F field, int nvars, int i)
    {
        if (i < 0 || i >= nvars)
            fail(Errc::structural, "variable index out of range");
        Poly p(field, nvars);
        p.terms_.push_back({Mono::var(i), p.field_.one()});
        return p;
    }
    static Poly monomial(F field, int nvars, Mono m, Elem c)
    {
        Poly p(std::move(field), nvars);
        if (!p.field_.is_zero(c))
            p.terms_.push_back({m, std::move(c)});
        return p;
    }
    static Poly from_terms(F field, int nvars, std::vector<Term> terms)
    {
        Poly p(std::move(field), nvars);
        std::sort(terms.begin(), terms.end(),
                  [](const Term &a, const Term &b) { return GrlexLess{}(a.mono, b.mono); });
        for (auto &t : terms) {
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
                p.terms_.back().coeff = p.field_.add(p.terms_.back().coeff, t.coeff);
            else
                p.terms_.push_back(std::move(t));
        }
        p.drop_zeros();
        return p;
    }
    // Linear form sum_i c[i] x_i.
    static Poly linear(F field, std::span<const Elem> c)
    {
        std::vector<Term> ts;
        for (std::size_t i = 0; i < c.size(); ++i)
            ts.push_back({Mono::var(static_cast<int>(i)), c[i]});
        return from_terms(std::move(field), static_cast<int>(c.size()), std::move(ts));
    }

    const F &field() const { return field_; }
    int nvars() const { return nvars_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }
    bool is_homogeneous() const
    {
        for (const auto &t : terms_)
            if (t.mono.degree() != terms_.front().mono.degree())
                return false;
        return true;
    }
    int degree_in(int var) const
    {
        int d = -1;
        for (const auto &t : terms_)
            d = std::max<int>(d, t.mono.e[static_cast<std::size_t>(var)]);
        return d;
    }
    Elem coeff(const Mono &m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term &t, const Mono &x) { return GrlexLess{}(t.mono, x); });
        if (it != terms_.end() && it->mono == m)
            return it->coeff;
        return field_.zero();
    }
    const Term &leading() const { return terms_.back(); }

    Poly operator+(const Poly &o) const
    {
        check_compatible(o);
        Poly r(field_, nvars_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && GrlexLess{}(terms_[i].mono, o.terms_[j].mono))) {
                r.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || GrlexLess{}(o.terms_[j].mono, terms_[i].mono)) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                auto c = field_.add(terms_[i].coeff, o.terms_[j].coeff);
                if (!field_.is_zero(c))
                    r.terms_.push_back({terms_[i].mono, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }
    Poly operator-() const
    {
        Poly r = *this;
        for (auto &t : r.terms_)
            t.coeff = field_.neg(t.coeff);
        return r;
    }
    Poly operator-(const Poly &o) const { return *this + (-o); }
    Poly operator*(const Poly &o) const { return multiply(o, nullptr); }
    Poly &operator+=(const Poly &o) { return *this = *this + o; }
    Poly &operator-=(const Poly &o) { return *this = *this - o; }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }
    bool operator==(const Poly &o) const
    {
        if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size())
            return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].mono == o.terms_[i].mono) || !field_.eq(terms_[i].coeff, o.terms_[i].coeff))
                return false;
        return true;
    }

    // Product with the monomials rejected by keep dropped. keep must be
    // monotone (a rejected monomial stays rejected after multiplication).
    Poly multiply(const Poly &o, const Keep &keep) const
    {
        check_compatible(o);
        if (terms_.empty() || o.terms_.empty())
            return Poly(field_, nvars_);
        std::unordered_map<Mono, Elem, MonoHash> acc;
        acc.reserve(std::min<std::size_t>(terms_.size() * o.terms_.size(), 1U << 22));
        for (const auto &a : terms_) {
            for (const auto &b : o.terms_) {
                Mono m = a.mono * b.mono;
                if (keep && !keep(m))
                    continue;
                auto c = field_.mul(a.coeff, b.coeff);
                auto [it, inserted] = acc.try_emplace(m, c);
                if (!inserted)
                    it->second = field_.add(it->second, c);
            }
        }
        std::vector<Term> ts;
        ts.reserve(acc.size());
        for (auto &[m, c] : acc)
            if (!field_.is_zero(c))
                ts.push_back({m, std::move(c)});
        return from_terms(field_, nvars_, std::move(ts));
    }

    Poly scale(const Elem &c) const
    {
        if (field_.is_zero(c))
            return Poly(field_, nvars_);
        Poly r = *this;
        for (auto &t : r.terms_)
            t.coeff = field_.mul(t.coeff, c);
        return r;
    }
    Poly mul_mono(const Mono &m, const Elem &c) const
    {
        if (field_.is_zero(c))
            return Poly(field_, nvars_);
        Poly r(field_, nvars_);
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_)
            r.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
        return r; // multiplying by a monomial preserves grlex order
    }
    Poly pow(unsigned e) const
    {
        Poly r = constant(field_, nvars_, field_.one());
        Poly b = *this;
        while (e > 0) {
            if (e & 1U)
                r = r * b;
            e >>= 1U;
            if (e > 0)
                b = b * b;
        }
        return r;
    }

    Poly derivative(int i) const
    {
        if (i < 0 || i >= nvars_)
            fail(Errc::structural, "derivative variable out of range");
        std::vector<Term> ts;
        for (const auto &t : terms_) {
            const auto k = t.mono.e[static_cast<std::size_t>(i)];
            if (k == 0)
                continue;
            Mono m = t.mono;
            m.e[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(k - 1);
            auto c = field_.mul(t.coeff, field_.from_int(k));
            if (!field_.is_zero(c))
                ts.push_back({m, std::move(c)});
        }
        return from_terms(field_, nvars_, std::move(ts));
    }

    Elem eval(std::span<const Elem> x) const
    {
        if (static_cast<int>(x.size()) != nvars_)
            fail(Errc::structural, "evaluation point has wrong dimension");
        std::vector<std::vector<Elem>> powers(static_cast<std::size_t>(nvars_));
        auto acc = field_.zero();
        for (const auto &t : terms_) {
            auto c = t.coeff;
            for (int i = 0; i < nvars_; ++i) {
                const auto k = t.mono.e[static_cast<std::size_t>(i)];
                if (k == 0)
                    continue;
                auto &pw = powers[static_cast<std::size_t>(i)];
                if (pw.empty())
                    pw.push_back(field_.one());
                while (pw.size() <= k)
                    pw.push_back(field_.mul(pw.back(), x[static_cast<std::size_t>(i)]));
                c = field_.mul(c, pw[k]);
            }
            acc = field_.add(acc, c);
        }
        return acc;
    }

    // Composition f(M y): old variable i becomes sum_j M[i][j] y_j. Evaluated
    // by nested Horner so that each step multiplies by a linear form only;
    // keep (monotone) prunes monomials of the result as it is built.
    Poly substitute_linear(const Matrix<F> &m, const Keep &keep = nullptr) const
    {
        if (static_cast<int>(m.size()) != nvars_)
            fail(Errc::structural, "substitution matrix row count must equal the variable count");
        const int cols = m.empty() ? 0 : static_cast<int>(m.front().size());
        for (const auto &row : m)
            if (static_cast<int>(row.size()) != cols)
                fail(Errc::structural, "ragged substitution matrix");
        std::vector<Poly> forms;
        for (const auto &row : m)
            forms.push_back(linear(field_, std::span<const Elem>(row)));
        if (cols == 0) {
            Poly r(field_, 0);
            for (const auto &t : terms_)
                if (t.mono.degree() == 0)
                    r = constant(field_, 0, t.coeff);
            return r;
        }
        std::vector<const Term *> order;
        order.reserve(terms_.size());
        for (const auto &t : terms_)
            order.push_back(&t);
        std::sort(order.begin(), order.end(), [](const Term *a, const Term *b) { return a->mono.e > b->mono.e; });
        return horner(order, 0, order.size(), 0, forms, cols, keep);
    }

    // Exact division; nullopt when o does not divide *this.
    std::optional<Poly> divide_exact(const Poly &o) const
    {
        check_compatible(o);
        if (o.is_zero())
            fail(Errc::structural, "division by the zero polynomial");
        std::map<Mono, Elem, GrlexLess> rem;
        for (const auto &t : terms_)
            rem.emplace(t.mono, t.coeff);
        const auto &lt = o.terms_.back();
        const auto lc_inv = field_.inv(lt.coeff);
        std::vector<Term> quot;
        while (!rem.empty()) {
            auto top = std::prev(rem.end());
            if (!lt.mono.divides(top->first))
                return std::nullopt;
            const Mono qm = lt.mono.quotient_of(top->first);
            const auto qc = field_.mul(top->second, lc_inv);
            for (const auto &t : o.terms_) {
                const Mono m = t.mono * qm;
                auto c = field_.mul(qc, t.coeff);
                auto it = rem.find(m);
                if (it == rem.end()) {
                    rem.emplace(m, field_.neg(c));
                } else {
                    it->second = field_.sub(it->second, c);
                    if (field_.is_zero(it->second))
                        rem.erase(it);
                }
            }
            quot.push_back({qm, qc});
        }
        return from_terms(field_, nvars_, std::move(quot));
    }

    template <class G, class Fn>
    Poly<G> map_coeffs(G g, Fn fn) const
    {
        std::vector<typename Poly<G>::Term> ts;
        for (const auto &t : terms_)
            ts.push_back({t.mono, fn(t.coeff)});
        return Poly<G>::from_terms(std::move(g), nvars_, std::move(ts));
    }

    // Re-embed into a ring with a different variable count; var_map[i] is
    // the new index of old variable i.
    Poly remap(int new_nvars, std::span<const int> var_map) const
    {
        std::vector<Term> ts;
        for (const auto &t : terms_) {
            Mono m;
            for (int i = 0; i < nvars_; ++i) {
                const auto k = t.mono.e[static_cast<std::size_t>(i)];
                if (k == 0)
                    continue;
                const int j = var_map[static_cast<std::size_t>(i)];
                if (j < 0 || j >= new_nvars)
                    fail(Errc::structural, "variable remap out of range");
                m.e[static_cast<std::size_t>(j)] = static_cast<std::uint16_t>(m.e[static_cast<std::size_t>(j)] + k);
            }
            ts.push_back({m, t.coeff});
        }
        return from_terms(field_, new_nvars, std::move(ts));
    }

    std::string to_string(const std::vector<std::string> &names = {}) const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (std::size_t k = terms_.size(); k-- > 0;) {
            const auto &t = terms_[k];
            std::string c = field_.to_string(t.coeff);
            bool negative = false;
            if (c.find_first_of("+-", 1) != std::string::npos) {
                c = "(" + c + ")";
            } else if (c[0] == '-') {
                negative = true;
                c = c.substr(1);
            }
            std::string mono;
            for (int i = 0; i < nvars_; ++i) {
                const auto e = t.mono.e[static_cast<std::size_t>(i)];
                if (e == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += names.empty() ? "x" + std::to_string(i) : names[static_cast<std::size_t>(i)];
                if (e > 1)
                    mono += "^" + std::to_string(e);
            }
            std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
            if (out.empty())
                out = (negative ? "-" : "") + term;
            else
                out += (negative ? " - " : " + ") + term;
        }
        return out;
    }

private:
    void check_compatible(const Poly &o) const
    {
        if (nvars_ != o.nvars_)
            fail(Errc::structural, "polynomials have different variable counts");
        if (!(field_ == o.field_))
            fail(Errc::structural, "polynomials live over different fields");
    }
    void drop_zeros()
    {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [&](const Term &t) { return field_.is_zero(t.coeff); }),
                     terms_.end());
    }

    Poly horner(const std::vector<const Term *> &order, std::size_t lo, std::size_t hi, int v,
                const std::vector<Poly> &forms, int cols, const Keep &keep) const
    {
        if (v == nvars_) {
            Poly r(field_, cols);
            if (!keep || keep(Mono{}))
                r = constant(field_, cols, order[lo]->coeff);
            return r;
        }
        Poly acc(field_, cols);
        int prev = -1;
        std::size_t i = lo;
        const auto &form = forms[static_cast<std::size_t>(v)];
        while (i < hi) {
            const int k = order[i]->mono.e[static_cast<std::size_t>(v)];
            std::size_t j = i;
            while (j < hi && order[j]->mono.e[static_cast<std::size_t>(v)] == k)
                ++j;
            if (prev >= 0)
                for (int s = 0; s < prev - k; ++s)
                    acc = acc.multiply(form, keep);
            acc = acc + horner(order, i, j, v + 1, forms, cols, keep);
            prev = k;
            i = j;
        }
        for (int s = 0; s < prev; ++s)
            acc = acc.multiply(form, keep);
        return acc;
    }

    F field_{};
    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Ring context over Poly<F>, so generic determinant and resultant code can
// run with polynomial entries.
template <class F>
class PolyRing {
public:
    using Elem = Poly<F>;

    PolyRing(F field, int nvars) : field_(std::move(field)), nvars_(nvars) {}

    const F &field() const { return field_; }
    int nvars() const { return nvars_; }

    Elem zero() const { return Elem(field_, nvars_); }
    Elem one() const { return Elem::constant(field_, nvars_, field_.one()); }
    Elem from_int(long long v) const { return Elem::constant(field_, nvars_, field_.from_int(v)); }
    Elem add(const Elem &a, const Elem &b) const { return a + b; }
    Elem sub(const Elem &a, const Elem &b) const { return a - b; }
    Elem mul(const Elem &a, const Elem &b) const { return a * b; }
    Elem neg(const Elem &a) const { return -a; }
    bool is_zero(const Elem &a) const { return a.is_zero(); }
    std::size_t support(const Elem &a) const { return a.size(); }
    Elem divide_exact(const Elem &a, const Elem &b) const
    {
        auto q = a.divide_exact(b);
        if (!q)
            fail(Errc::inconsistent, "expected exact polynomial division");
        return std::move(*q);
    }

private:
    F field_;
    int nvars_;
};

template <class R>
typename R::Elem ring_divide_exact(const R &ring, const typename R::Elem &a, const typename R::Elem &b)
{
    if constexpr (requires { ring.divide_exact(a, b); })
        return ring.divide_exact(a, b);
    else
        return ring.div(a, b);
}

template <class R>
std::size_t ring_support(const R &ring, const typename R::Elem &a)
{
    if constexpr (requires { ring.support(a); })
        return ring.support(a);
    else
        return ring.is_zero(a) ? 0 : 1;
}

} // namespace linesurf

#endif
