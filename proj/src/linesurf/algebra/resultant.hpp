#ifndef LINESURF_ALGEBRA_RESULTANT_HPP
#define LINESURF_ALGEBRA_RESULTANT_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "linesurf/algebra/poly.hpp"
#include "linesurf/error.hpp"

// Elimination over a ring context R (a field context or PolyRing<F>).
namespace linesurf {

// Binary form a[0] u^m + a[1] u^(m-1) v + ... + a[m] v^m.
template <class R>
using BinaryForm = std::vector<typename R::Elem>;

template <class R>
struct TernaryTerm {
    std::array<int, 3> e;
    typename R::Elem coeff;
};

template <class R>
using TernaryForm = std::vector<TernaryTerm<R>>;

template <class R>
BinaryForm<R> binary_mul(const R &ring, const BinaryForm<R> &a, const BinaryForm<R> &b)
{
    BinaryForm<R> r(a.size() + b.size() - 1, ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ring.is_zero(a[i]))
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!ring.is_zero(b[j]))
                r[i + j] = ring.add(r[i + j], ring.mul(a[i], b[j]));
    }
    return r;
}

// Division-free determinant by Laplace expansion along rows, memoized over
// column subsets. Zero entries are skipped, which suits Sylvester matrices.
template <class R>
typename R::Elem determinant(const R &ring, const std::vector<std::vector<typename R::Elem>> &m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return ring.one();
    if (n > 20)
        fail(Errc::unsupported, "determinant size limited to 20");
    for (const auto &row : m)
        if (row.size() != n)
            fail(Errc::structural, "determinant of a non-square matrix");
    std::vector<typename R::Elem> minor(std::size_t{1} << n, ring.zero());
    std::vector<bool> known(minor.size(), false);
    minor[0] = ring.one();
    known[0] = true;
    // Process masks by increasing popcount so sub-minors are ready.
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::uint32_t mask = 0; mask < minor.size(); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != r)
                continue;
            auto acc = ring.zero();
            int pos = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(mask & (1U << j)))
                    continue;
                const auto &entry = m[r - 1][j];
                const std::uint32_t sub = mask & ~(1U << j);
                if (!ring.is_zero(entry) && !ring.is_zero(minor[sub])) {
                    auto term = ring.mul(entry, minor[sub]);
                    acc = ((r - 1 + static_cast<std::size_t>(pos)) % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
                }
                ++pos;
            }
            minor[mask] = std::move(acc);
        }
    }
    return minor.back();
}

template <class R>
std::vector<std::vector<typename R::Elem>> sylvester_matrix(const R &ring, const BinaryForm<R> &a, const BinaryForm<R> &b)
{
    if (a.size() < 2 || b.size() < 2)
        fail(Errc::structural, "resultant needs binary forms of degree >= 1");
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    std::vector<std::vector<typename R::Elem>> s(m + n, std::vector<typename R::Elem>(m + n, ring.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k)
            s[i][i + k] = a[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k)
            s[n + i][i + k] = b[k];
    return s;
}

template <class R>
typename R::Elem sylvester_resultant(const R &ring, const BinaryForm<R> &a, const BinaryForm<R> &b)
{
    return determinant(ring, sylvester_matrix(ring, a, b));
}

// Restriction of a ternary form to the parametrized line y = u*b1 + v*b2.
template <class R>
BinaryForm<R> restrict_ternary(const R &ring, const TernaryForm<R> &t, int degree,
                               const std::array<typename R::Elem, 3> &b1,
                               const std::array<typename R::Elem, 3> &b2)
{
    std::array<std::vector<BinaryForm<R>>, 3> powers;
    for (int i = 0; i < 3; ++i) {
        const BinaryForm<R> lin{b1[static_cast<std::size_t>(i)], b2[static_cast<std::size_t>(i)]};
        auto &p = powers[static_cast<std::size_t>(i)];
        p.push_back(BinaryForm<R>{ring.one()});
        for (int k = 1; k <= degree; ++k)
            p.push_back(binary_mul(ring, p.back(), lin));
    }
    BinaryForm<R> out(static_cast<std::size_t>(degree) + 1, ring.zero());
    for (const auto &term : t) {
        if (term.e[0] + term.e[1] + term.e[2] != degree)
            fail(Errc::structural, "ternary form is not homogeneous of the expected degree");
        if (ring.is_zero(term.coeff))
            continue;
        auto prod = binary_mul(ring, powers[0][static_cast<std::size_t>(term.e[0])],
                               binary_mul(ring, powers[1][static_cast<std::size_t>(term.e[1])],
                                          powers[2][static_cast<std::size_t>(term.e[2])]));
        for (std::size_t k = 0; k < out.size(); ++k)
            if (!ring.is_zero(prod[k]))
                out[k] = ring.add(out[k], ring.mul(term.coeff, prod[k]));
    }
    return out;
}

// Eliminant of a linear, a quadratic and a cubic ternary form: zero iff the
// three curves share a projective point. The line {l = 0} is parametrized
// through the pivot coefficient a_p of l; the binary resultant then carries
// the extraneous factor a_p^6, which is divided out exactly.
template <class R>
typename R::Elem resultant_ternary_123(const R &ring, const std::array<typename R::Elem, 3> &l,
                                       const TernaryForm<R> &q, const TernaryForm<R> &c)
{
    int p = -1;
    std::size_t best = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t s = ring_support(ring, l[static_cast<std::size_t>(i)]);
        if (s > best) {
            best = s;
            p = i;
        }
    }
    if (p < 0)
        fail(Errc::degenerate, "resultant_ternary_123: the linear form is zero");
    const auto &ap = l[static_cast<std::size_t>(p)];
    std::array<int, 2> other{};
    for (int i = 0, k = 0; i < 3; ++i)
        if (i != p)
            other[static_cast<std::size_t>(k++)] = i;
    auto basis = [&](int i) {
        std::array<typename R::Elem, 3> b{ring.zero(), ring.zero(), ring.zero()};
        b[static_cast<std::size_t>(i)] = ap;
        b[static_cast<std::size_t>(p)] = ring.neg(l[static_cast<std::size_t>(i)]);
        return b;
    };
    const auto b1 = basis(other[0]);
    const auto b2 = basis(other[1]);
    auto res = sylvester_resultant(ring, restrict_ternary(ring, q, 2, b1, b2), restrict_ternary(ring, c, 3, b1, b2));
    for (int k = 0; k < 6; ++k)
        res = ring_divide_exact(ring, res, ap);
    return res;
}

} // namespace linesurf

#endif
