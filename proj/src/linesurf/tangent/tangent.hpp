#ifndef LINESURF_TANGENT_TANGENT_HPP
#define LINESURF_TANGENT_TANGENT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/algebra/resultant.hpp"
#include "linesurf/algebra/upoly.hpp"
#include "linesurf/error.hpp"
#include "linesurf/projgeom/projgeom.hpp"
#include "linesurf/tangent/surface.hpp"

namespace linesurf {

inline constexpr int kInfiniteContact = std::numeric_limits<int>::max();

// t^(j)(w, z) = sum over ordered (i1..ij) of d^j f / dw_i1..dw_ij * z_i1..z_ij,
// in the 8 variables (w0..w3, z0..z3).
template <class F>
Poly<F> big_t_form(const Surface<F> &X, int j)
{
    X.require_char_gate("big_t_form");
    if (j < 1 || j > 3)
        fail(Errc::structural, "big_t_form is defined for j = 1, 2, 3");
    const F &k = X.field();
    const std::array<int, 4> to_w{0, 1, 2, 3};
    Poly<F> t = X.f().remap(8, to_w);
    for (int step = 0; step < j; ++step) {
        Poly<F> next(k, 8);
        for (int i = 0; i < 4; ++i)
            next += Poly<F>::variable(k, 8, 4 + i) * t.derivative(i);
        t = std::move(next);
    }
    return t;
}

// Binary form coefficients of a homogeneous polynomial in two variables,
// out[k] = coefficient of x0^(m-k) x1^k.
template <class F>
BinaryForm<F> binary_coeffs(const Poly<F> &p, int m)
{
    BinaryForm<F> out(static_cast<std::size_t>(m) + 1, p.field().zero());
    for (const auto &t : p.terms()) {
        if (t.mono.degree() != m)
            fail(Errc::structural, "binary form is not homogeneous of degree " + std::to_string(m));
        out[t.mono.e[1]] = t.coeff;
    }
    return out;
}

template <class F>
bool all_zero(const F &f, const std::vector<typename F::Elem> &v)
{
    for (const auto &x : v)
        if (!f.is_zero(x))
            return false;
    return true;
}

template <class F>
struct TangentData {
    Vec4<F> point;
    Poly<F> t1, t2, t3; // forms in z0..z3 at the point
};

template <class F>
Poly<F> contact_form_at(const Surface<F> &X, const Vec4<F> &P, int j)
{
    const F &k = X.field();
    const std::span<const typename F::Elem> pt(P);
    std::vector<typename Poly<F>::Term> ts;
    if (j == 1) {
        for (int i = 0; i < 4; ++i)
            ts.push_back({Mono::var(i), X.d1(i).eval(pt)});
    } else if (j == 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                ts.push_back({Mono::var(a) * Mono::var(b), X.d2(a, b).eval(pt)});
    } else if (j == 3) {
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b)
                for (int c = b; c < 4; ++c) {
                    // Ordered tuples contributing to this multiset.
                    const int mult = (a == b && b == c) ? 1 : (a == b || b == c) ? 3 : 6;
                    ts.push_back({Mono::var(a) * Mono::var(b) * Mono::var(c), k.mul(k.from_int(mult), X.d3(a, b, c).eval(pt))});
                }
    } else {
        fail(Errc::structural, "contact forms are defined for j = 1, 2, 3");
    }
    return Poly<F>::from_terms(k, 4, std::move(ts));
}

template <class F>
TangentData<F> tangent_data(const Surface<F> &X, const Vec4<F> &P)
{
    if (!X.contains(P))
        fail(Errc::not_on_surface, "point " + vec_to_string(X.field(), P) + " is not on the surface");
    TangentData<F> td{P, contact_form_at(X, P, 1), contact_form_at(X, P, 2), contact_form_at(X, P, 3)};
    if (td.t1.is_zero())
        fail(Errc::singular_point, "surface is singular at " + vec_to_string(X.field(), P));
    return td;
}

// A spanning row of L not proportional to P (P on L).
template <class F>
Vec4<F> other_point(const LineP3<F> &L, const Vec4<F> &P)
{
    const F &k = L.field();
    const auto p = plucker_of(k, P, L.rows()[0]);
    for (const auto &x : p)
        if (!k.is_zero(x))
            return L.rows()[0];
    return L.rows()[1];
}

// Order of vanishing of f restricted to L at P; kInfiniteContact if L lies
// on X.
template <class F>
int contact_order(const Surface<F> &X, const LineP3<F> &L, const Vec4<F> &P)
{
    const F &k = X.field();
    if (!L.contains(P))
        fail(Errc::precondition, "contact_order: the point is not on the line");
    const Vec4<F> W = other_point(L, P);
    Matrix<F> m(4, std::vector<typename F::Elem>(2));
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][0] = P[i];
        m[i][1] = W[i];
    }
    const auto b = binary_coeffs(X.f().substitute_linear(m), X.degree());
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!k.is_zero(b[i]))
            return static_cast<int>(i);
    return kInfiniteContact;
}

// Frame [P | u1 | u2] of the tangent plane T_P X, built by eliminating the
// pivot variable of t1; Q and C are t2 and t3 on directions b*u1 + c*u2.
template <class F>
struct TangentChart {
    TangentData<F> data;
    int pivot = -1;
    Matrix<F> frame;     // 4x3, columns P, u1, u2
    BinaryForm<F> Q;     // Q[k] = coefficient of b^(2-k) c^k
    BinaryForm<F> C;     // C[k] = coefficient of b^(3-k) c^k
    Poly<F> G2, G3;      // t2, t3 on the frame, ternary in (a, b, c)

    Vec4<F> direction(const typename F::Elem &b, const typename F::Elem &c) const
    {
        const F &k = data.t1.field();
        Vec4<F> w;
        for (std::size_t i = 0; i < 4; ++i)
            w[i] = k.add(k.mul(b, frame[i][1]), k.mul(c, frame[i][2]));
        return w;
    }
    // Coordinates (a, b, c) of x in the frame; nullopt if x is not in T_P.
    std::optional<std::array<typename F::Elem, 3>> coordinates(const Vec4<F> &x) const
    {
        const F &k = data.t1.field();
        std::vector<std::vector<typename F::Elem>> aug(4, std::vector<typename F::Elem>(4));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 3; ++j)
                aug[i][j] = frame[i][j];
            aug[i][3] = x[i];
        }
        const auto piv = row_reduce(k, aug);
        if (!piv.empty() && piv.back() == 3)
            return std::nullopt;
        std::array<typename F::Elem, 3> r{k.zero(), k.zero(), k.zero()};
        for (std::size_t i = 0; i < piv.size(); ++i)
            r[static_cast<std::size_t>(piv[i])] = aug[i][3];
        return r;
    }
};

template <class F>
TangentChart<F> tangent_chart(const Surface<F> &X, const Vec4<F> &P)
{
    const F &k = X.field();
    TangentChart<F> ch;
    ch.data = tangent_data(X, P);
    std::array<typename F::Elem, 4> a;
    for (int i = 0; i < 4; ++i)
        a[static_cast<std::size_t>(i)] = ch.data.t1.coeff(Mono::var(i));
    for (int i = 0; i < 4 && ch.pivot < 0; ++i)
        if (!k.is_zero(a[static_cast<std::size_t>(i)]))
            ch.pivot = i;
    const auto p = static_cast<std::size_t>(ch.pivot);
    const auto ap_inv = k.inv(a[p]);
    // n_i = e_i - (a_i / a_p) e_p spans T_P for i != pivot.
    std::vector<Vec4<F>> n;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i == p)
            continue;
        Vec4<F> v;
        v.fill(k.zero());
        v[i] = k.one();
        v[p] = k.neg(k.mul(a[i], ap_inv));
        n.push_back(v);
    }
    // Keep two of them independent of P.
    std::vector<Vec4<F>> chosen;
    for (const auto &v : n) {
        std::vector<std::vector<typename F::Elem>> m;
        m.emplace_back(P.begin(), P.end());
        for (const auto &c : chosen)
            m.emplace_back(c.begin(), c.end());
        m.emplace_back(v.begin(), v.end());
        const std::size_t rows = m.size();
        if (row_reduce(k, m).size() == rows)
            chosen.push_back(v);
        if (chosen.size() == 2)
            break;
    }
    if (chosen.size() != 2)
        fail(Errc::inconsistent, "tangent plane frame construction failed");
    ch.frame.assign(4, std::vector<typename F::Elem>(3));
    for (std::size_t i = 0; i < 4; ++i) {
        ch.frame[i][0] = P[i];
        ch.frame[i][1] = chosen[0][i];
        ch.frame[i][2] = chosen[1][i];
    }
    ch.G2 = ch.data.t2.substitute_linear(ch.frame);
    ch.G3 = ch.data.t3.substitute_linear(ch.frame);
    Matrix<F> dirs(4, std::vector<typename F::Elem>(2));
    for (std::size_t i = 0; i < 4; ++i) {
        dirs[i][0] = chosen[0][i];
        dirs[i][1] = chosen[1][i];
    }
    ch.Q = binary_coeffs(ch.data.t2.substitute_linear(dirs), 2);
    ch.C = binary_coeffs(ch.data.t3.substitute_linear(dirs), 3);
    return ch;
}

// Roots (b : c) of a nonzero binary quadratic that lie in the field.
template <class F>
std::optional<std::array<std::array<typename F::Elem, 2>, 2>> quadratic_roots(const F &k, const BinaryForm<F> &q)
{
    const auto &q0 = q[0], &q1 = q[1], &q2 = q[2];
    using R = std::array<typename F::Elem, 2>;
    if (k.is_zero(q0)) {
        // c * (q1 b + q2 c)
        const R inf{k.one(), k.zero()};
        if (k.is_zero(q1))
            return std::array<R, 2>{inf, inf};
        return std::array<R, 2>{inf, R{k.neg(q2), q1}};
    }
    const auto disc = k.sub(k.mul(q1, q1), k.mul(k.from_int(4), k.mul(q0, q2)));
    const auto r = k.sqrt(disc);
    if (!r)
        return std::nullopt;
    const auto two_q0 = k.mul(k.from_int(2), q0);
    return std::array<R, 2>{R{k.div(k.add(k.neg(q1), *r), two_q0), k.one()},
                            R{k.div(k.sub(k.neg(q1), *r), two_q0), k.one()}};
}

template <class F>
struct PrincipalDirections {
    enum class Kind { RationalPair, ConjugatePair, WholePlane };
    Kind kind = Kind::WholePlane;
    std::vector<LineP3<F>> lines;                // RationalPair; equal entries for a double line
    std::optional<ExtField<F>> ext;              // ConjugatePair: F(a), a^2 = discriminant
    std::vector<LineP3<ExtField<F>>> ext_lines;  // ConjugatePair, conjugate to each other

    bool distinct() const
    {
        if (kind == Kind::ConjugatePair)
            return true;
        return kind == Kind::RationalPair && !(lines[0] == lines[1]);
    }
};

template <class F>
PrincipalDirections<F> principal_lines(const Surface<F> &X, const Vec4<F> &P)
{
    X.require_char_gate("principal_lines");
    const F &k = X.field();
    const auto ch = tangent_chart(X, P);
    PrincipalDirections<F> out;
    if (all_zero(k, ch.Q))
        return out;
    if (auto roots = quadratic_roots(k, ch.Q)) {
        out.kind = PrincipalDirections<F>::Kind::RationalPair;
        for (const auto &r : *roots)
            out.lines.push_back(LineP3<F>::through(k, P, ch.direction(r[0], r[1])));
        return out;
    }
    const auto disc = k.sub(k.mul(ch.Q[1], ch.Q[1]), k.mul(k.from_int(4), k.mul(ch.Q[0], ch.Q[2])));
    ExtField<F> e(k, {k.neg(disc), k.zero(), k.one()});
    out.kind = PrincipalDirections<F>::Kind::ConjugatePair;
    const auto alpha = e.generator();
    const auto two_q0_inv = e.embed(k.inv(k.mul(k.from_int(2), ch.Q[0])));
    Vec4<ExtField<F>> Pe;
    for (std::size_t i = 0; i < 4; ++i)
        Pe[i] = e.embed(P[i]);
    for (int sign : {1, -1}) {
        const auto root = e.mul(e.add(e.embed(k.neg(ch.Q[1])), sign > 0 ? alpha : e.neg(alpha)), two_q0_inv);
        Vec4<ExtField<F>> w;
        for (std::size_t i = 0; i < 4; ++i)
            w[i] = e.add(e.mul(root, e.embed(ch.frame[i][1])), e.embed(ch.frame[i][2]));
        out.ext_lines.push_back(LineP3<ExtField<F>>::through(e, Pe, w));
    }
    out.ext = e;
    return out;
}

// The principal line L' with Q = l_L * l_L' on T_P X.
template <class F>
LineP3<F> residual_principal_line(const Surface<F> &X, const Vec4<F> &P, const LineP3<F> &L)
{
    X.require_char_gate("residual_principal_line");
    const F &k = X.field();
    if (!L.contains(P))
        fail(Errc::precondition, "residual_principal_line: the point is not on the line");
    const auto ch = tangent_chart(X, P);
    if (all_zero(k, ch.Q))
        fail(Errc::degenerate, "t2 vanishes on the whole tangent plane at " + vec_to_string(k, P));
    const Vec4<F> W = other_point(L, P);
    const auto abc = ch.coordinates(W);
    if (!abc)
        fail(Errc::precondition, "residual_principal_line: the line is not in the tangent plane");
    const auto &bl = (*abc)[1], &cl = (*abc)[2];
    // l_L(b, c) = cl*b - bl*c; solve Q = l_L * (m0 b + m1 c).
    const auto l0 = cl, l1 = k.neg(bl);
    typename F::Elem m0, m1;
    bool ok;
    if (!k.is_zero(l0)) {
        m0 = k.div(ch.Q[0], l0);
        m1 = k.div(k.sub(ch.Q[1], k.mul(l1, m0)), l0);
        ok = k.eq(k.mul(l1, m1), ch.Q[2]);
    } else {
        m1 = k.div(ch.Q[2], l1);
        m0 = k.div(ch.Q[1], l1);
        ok = k.is_zero(ch.Q[0]);
    }
    if (!ok)
        fail(Errc::precondition, "residual_principal_line: t2 does not vanish along the line");
    return LineP3<F>::through(k, P, ch.direction(m1, k.neg(m0)));
}

template <class F>
struct FlecnodalPointResult {
    bool flecnodal = false;
    bool whole_plane = false;
    std::optional<LineP3<F>> witness; // present when a witness line is defined over F
};

template <class F>
std::optional<std::array<typename F::Elem, 2>> rational_common_root(const F &k, const BinaryForm<F> &a, const BinaryForm<F> &b)
{
    // Root (1 : 0) when both leading coefficients vanish; else gcd at c = 1.
    if (k.is_zero(a[0]) && k.is_zero(b[0]))
        return std::array<typename F::Elem, 2>{k.one(), k.zero()};
    upoly::UPoly<F> ua(a.begin(), a.end()), ub(b.begin(), b.end());
    // a[i] multiplies b^(m-i) c^i; at c = 1 the coefficient of b^(m-i).
    std::reverse(ua.begin(), ua.end());
    std::reverse(ub.begin(), ub.end());
    upoly::trim(k, ua);
    upoly::trim(k, ub);
    auto g = upoly::gcd(k, ua, ub);
    if (g.size() == 2)
        return std::array<typename F::Elem, 2>{k.neg(g[0]), k.one()};
    if (g.size() == 3) {
        const BinaryForm<F> gb{g[2], g[1], g[0]};
        if (auto r = quadratic_roots(k, gb))
            return (*r)[0];
    }
    return std::nullopt;
}

// A root of a nonzero binary form found by scanning P^1 of a small finite
// field; nullopt otherwise.
template <class F>
std::optional<std::array<typename F::Elem, 2>> binary_root_by_search(const F &k, const BinaryForm<F> &a)
{
    if (k.is_zero(a[0]))
        return std::array<typename F::Elem, 2>{k.one(), k.zero()};
    if constexpr (is_finite_field_v<F>) {
        const std::uint64_t q = k.cardinality();
        if (q > (1U << 20))
            return std::nullopt;
        for (std::uint64_t i = 0; i < q; ++i) {
            const auto b = k.element(i);
            auto acc = k.zero(); // a(b, 1) by Horner in b
            for (const auto &c : a)
                acc = k.add(k.mul(acc, b), c);
            if (k.is_zero(acc))
                return std::array<typename F::Elem, 2>{b, k.one()};
        }
    }
    return std::nullopt;
}

// P is flecnodal iff some line through P has contact order >= 4 with X,
// over an algebraic closure of the field.
template <class F>
FlecnodalPointResult<F> is_flecnodal_point(const Surface<F> &X, const Vec4<F> &P)
{
    X.require_char_gate("is_flecnodal_point");
    const F &k = X.field();
    const auto ch = tangent_chart(X, P);
    FlecnodalPointResult<F> r;
    if (all_zero(k, ch.Q)) {
        // Every tangent line has contact >= 3 and the binary cubic C has a
        // root over the closure.
        r.flecnodal = true;
        r.whole_plane = true;
        if (all_zero(k, ch.C)) {
            r.witness = LineP3<F>::through(k, P, ch.direction(k.one(), k.zero()));
        } else if (auto root = binary_root_by_search(k, ch.C)) {
            r.witness = LineP3<F>::through(k, P, ch.direction((*root)[0], (*root)[1]));
        }
        return r;
    }
    if (!k.is_zero(sylvester_resultant(k, ch.Q, ch.C)))
        return r;
    r.flecnodal = true;
    if (auto root = rational_common_root(k, ch.Q, ch.C))
        r.witness = LineP3<F>::through(k, P, ch.direction((*root)[0], (*root)[1]));
    return r;
}

// Intersection multiplicity at P of V(t2) and V(t3) inside T_P X.
template <class F>
int diagonal_multiplicity(const Surface<F> &X, const Vec4<F> &P, std::uint64_t seed = 1)
{
    X.require_char_gate("diagonal_multiplicity");
    const F &k = X.field();
    const auto ch = tangent_chart(X, P);
    if (all_zero(k, ch.Q))
        fail(Errc::precondition, "diagonal_multiplicity: t2 vanishes on the whole tangent plane");
    if (k.is_zero(k.sub(k.mul(ch.Q[1], ch.Q[1]), k.mul(k.from_int(4), k.mul(ch.Q[0], ch.Q[2])))))
        fail(Errc::precondition, "diagonal_multiplicity: the principal lines coincide");
    if (k.is_zero(sylvester_resultant(k, ch.Q, ch.C)))
        fail(Errc::precondition, "diagonal_multiplicity: the point is flecnodal");

    std::mt19937_64 rng(seed);
    const PolyRing<F> ring(k, 3);
    for (int attempt = 0; attempt < 5; ++attempt) {
        // Columns of T: P's frame point (1,0,0), a random second point and a
        // random projection center off both curves.
        Matrix<F> T(3, std::vector<typename F::Elem>(3, k.zero()));
        T[0][0] = k.one();
        std::array<typename F::Elem, 3> center, second;
        for (auto &x : center)
            x = k.random(rng);
        for (auto &x : second)
            x = k.random(rng);
        for (std::size_t i = 0; i < 3; ++i) {
            T[i][1] = second[i];
            T[i][2] = center[i];
        }
        {
            std::vector<std::vector<typename F::Elem>> m(T.begin(), T.end());
            if (row_reduce(k, m).size() != 3)
                continue;
        }
        const std::span<const typename F::Elem> cs(center);
        if (k.is_zero(ch.G2.eval(cs)) || k.is_zero(ch.G3.eval(cs)))
            continue;
        const auto g2 = ch.G2.substitute_linear(T), g3 = ch.G3.substitute_linear(T);
        // Coefficients in the eliminated variable c' (index 2).
        auto split = [&](const Poly<F> &g, int deg) {
            BinaryForm<PolyRing<F>> out(static_cast<std::size_t>(deg) + 1, ring.zero());
            for (const auto &t : g.terms()) {
                Mono m = t.mono;
                const int e = m.e[2];
                m.e[2] = 0;
                auto &slot = out[static_cast<std::size_t>(deg - e)];
                slot = slot + Poly<F>::monomial(k, 3, m, t.coeff);
            }
            return out;
        };
        const auto S = sylvester_resultant(ring, split(g2, 2), split(g3, 3));
        if (S.is_zero())
            fail(Errc::precondition, "diagonal_multiplicity: the curves share a component");
        // Fiber b' = 0 through P and the center: P must be the only common zero.
        Matrix<F> fiber{{k.one(), k.zero()}, {k.zero(), k.zero()}, {k.zero(), k.one()}};
        const auto f2 = binary_coeffs(g2.substitute_linear(fiber), 2);
        const auto f3 = binary_coeffs(g3.substitute_linear(fiber), 3);
        // At a' = 1 the coefficient of c'^k is f[k].
        upoly::UPoly<F> a2(f2.begin(), f2.end()), a3(f3.begin(), f3.end());
        upoly::trim(k, a2);
        upoly::trim(k, a3);
        const auto g = upoly::gcd(k, a2, a3);
        bool only_P = !g.empty();
        for (std::size_t i = 0; i + 1 < g.size(); ++i)
            only_P = only_P && k.is_zero(g[i]);
        if (!only_P)
            continue;
        int order = std::numeric_limits<int>::max();
        for (const auto &t : S.terms())
            order = std::min<int>(order, t.mono.e[1]);
        return order;
    }
    fail(Errc::precondition, "diagonal_multiplicity: no generic projection found after 5 attempts");
}

} // namespace linesurf

#endif
