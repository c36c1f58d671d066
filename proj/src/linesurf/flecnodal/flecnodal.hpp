#ifndef LINESURF_FLECNODAL_FLECNODAL_HPP
#define LINESURF_FLECNODAL_FLECNODAL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/implicit.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/algebra/resultant.hpp"
#include "linesurf/algebra/upoly.hpp"
#include "linesurf/error.hpp"
#include "linesurf/lineenum/lineenum.hpp"
#include "linesurf/projgeom/projgeom.hpp"
#include "linesurf/tangent/surface.hpp"
#include "linesurf/tangent/tangent.hpp"

namespace linesurf {

inline constexpr int kDiagonalMultiplicity = 6;
inline constexpr int kMaxHyperplaneAttempts = 5;
inline constexpr int kSeriesStart = 8;
inline constexpr int kSeriesCap = 128;

inline int eliminant_degree(int d) { return 11 * d - 18; }
inline int flecnodal_class_degree(int d) { return 11 * d - 24; }

// div_X(R) = F + 6 (H . X), so F is represented by the triple (R, H, 6).
template <class F>
struct FlecnodalData {
    Surface<F> surface;
    PlaneP3<F> H;
    Poly<F> R; // in x0..x3, degree 11d - 18
    int diag_mult = kDiagonalMultiplicity;
    int class_degree = 0;
    std::optional<std::uint64_t> seed;
    int attempts = 1;

    int degree_R() const { return R.total_degree(); }
};

namespace detail {

template <class F>
TernaryForm<PolyRing<F>> split_ternary(const PolyRing<F> &ring, const Poly<F> &p)
{
    // p in (w0..w3, y0..y2): group by the y exponents.
    std::map<std::array<int, 3>, Poly<F>> groups;
    const F &k = p.field();
    for (const auto &t : p.terms()) {
        Mono w;
        for (int i = 0; i < 4; ++i)
            w.e[static_cast<std::size_t>(i)] = t.mono.e[static_cast<std::size_t>(i)];
        const std::array<int, 3> key{t.mono.e[4], t.mono.e[5], t.mono.e[6]};
        auto it = groups.try_emplace(key, ring.zero()).first;
        it->second += Poly<F>::monomial(k, 4, w, t.coeff);
    }
    TernaryForm<PolyRing<F>> out;
    for (auto &[e, c] : groups)
        out.push_back({e, std::move(c)});
    return out;
}

// True when R restricted to some line misses every zero of f on it, which
// shows that R does not vanish identically on X.
template <class F, class Rng>
bool vanishes_on_surface(const Surface<F> &X, const Poly<F> &R, Rng &rng)
{
    const F &k = X.field();
    for (int attempt = 0; attempt < 20; ++attempt) {
        Matrix<F> m(4, std::vector<typename F::Elem>(2));
        for (auto &row : m)
            for (auto &x : row)
                x = k.random(rng);
        // Dehomogenize at the first coordinate of the line.
        auto to_upoly = [&](const Poly<F> &p) {
            upoly::UPoly<F> u;
            const auto restricted = p.substitute_linear(m);
            for (const auto &t : restricted.terms()) {
                const std::size_t e = t.mono.e[1];
                if (u.size() <= e)
                    u.resize(e + 1, k.zero());
                u[e] = t.coeff;
            }
            upoly::trim(k, u);
            return u;
        };
        const auto fl = to_upoly(X.f());
        if (upoly::degree<F>(fl) != X.degree())
            continue; // degenerate line or a root at infinity
        const auto rl = to_upoly(R);
        if (rl.empty())
            continue;
        if (upoly::gcd(k, fl, rl).size() == 1)
            return false;
    }
    return true;
}

} // namespace detail

// R(w) = eliminant of t1(w, z), t2(w, z), t3(w, z) over z in H.
template <class F>
Poly<F> flecnodal_eliminant(const Surface<F> &X, const PlaneP3<F> &H)
{
    X.require_char_gate("flecnodal_resultant");
    const F &k = X.field();
    const auto basis = nullspace(k, std::vector<std::vector<typename F::Elem>>{{H.form().begin(), H.form().end()}}, 4);
    Matrix<F> m(8, std::vector<typename F::Elem>(7, k.zero()));
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][i] = k.one();
        for (std::size_t j = 0; j < 3; ++j)
            m[4 + i][4 + j] = basis[j][i];
    }
    const PolyRing<F> ring(k, 4);
    std::array<TernaryForm<PolyRing<F>>, 3> t;
    for (int j = 1; j <= 3; ++j)
        t[static_cast<std::size_t>(j - 1)] = detail::split_ternary(ring, big_t_form(X, j).substitute_linear(m));
    std::array<Poly<F>, 3> l{ring.zero(), ring.zero(), ring.zero()};
    for (const auto &term : t[0]) {
        for (std::size_t i = 0; i < 3; ++i)
            if (term.e[i] == 1)
                l[i] = term.coeff;
    }
    return resultant_ternary_123(ring, l, t[1], t[2]);
}

template <class F>
FlecnodalData<F> flecnodal_resultant(const Surface<F> &X, const PlaneP3<F> &H, std::uint64_t check_seed = 1)
{
    FlecnodalData<F> D;
    D.surface = X;
    D.H = H;
    D.R = flecnodal_eliminant(X, H);
    const int d = X.degree();
    D.class_degree = flecnodal_class_degree(d);
    if (D.R.is_zero() || !D.R.is_homogeneous() || D.R.total_degree() != eliminant_degree(d))
        fail(Errc::degenerate, "eliminant has degree " + std::to_string(D.R.is_zero() ? -1 : D.R.total_degree()) +
                                   ", expected " + std::to_string(eliminant_degree(d)) + " for H = " + H.to_string());
    std::mt19937_64 rng(check_seed);
    if (detail::vanishes_on_surface(X, D.R, rng))
        fail(Errc::degenerate, "eliminant appears to vanish on the whole surface for H = " + H.to_string());
    return D;
}

template <class F, class Rng>
PlaneP3<F> random_plane(const F &k, Rng &rng)
{
    for (;;) {
        Vec4<F> v;
        for (auto &x : v) {
            if constexpr (is_finite_field_v<F>)
                x = k.random(rng);
            else
                x = k.from_int(static_cast<long long>(rng() % 11) - 5);
        }
        if (normalize_projective(k, v))
            return PlaneP3<F>(k, v);
    }
}

// Random H from a seeded generator, re-rolled when it contains one of the
// given lines or when the degree check fails.
template <class F>
FlecnodalData<F> flecnodal_resultant(const Surface<F> &X, std::uint64_t seed, const std::vector<LineP3<F>> &avoid = {})
{
    X.require_char_gate("flecnodal_resultant");
    std::mt19937_64 rng(seed);
    std::string last;
    for (int attempt = 1; attempt <= kMaxHyperplaneAttempts; ++attempt) {
        PlaneP3<F> H;
        for (int tries = 0;; ++tries) {
            H = random_plane(X.field(), rng);
            const bool hits = std::any_of(avoid.begin(), avoid.end(), [&](const LineP3<F> &l) { return H.contains(l); });
            if (!hits)
                break;
            if (tries > 1000)
                fail(Errc::degenerate, "no hyperplane avoiding the given lines was found");
        }
        try {
            auto D = flecnodal_resultant(X, H, seed + static_cast<std::uint64_t>(attempt));
            D.seed = seed;
            D.attempts = attempt;
            return D;
        } catch (const Error &e) {
            if (e.code() != Errc::degenerate)
                throw;
            last = e.what();
        }
    }
    fail(Errc::inconsistent, "flecnodal_resultant failed for " + std::to_string(kMaxHyperplaneAttempts) +
                                 " hyperplanes; last: " + last);
}

// Whether P (on X, off H) is in the zero set of R.
template <class F>
bool eliminant_vanishes_at(const FlecnodalData<F> &D, const Vec4<F> &P)
{
    return D.surface.field().is_zero(D.R.eval(std::span<const typename F::Elem>(P)));
}

namespace detail {

// Multiplies column 3 of M into a mix of columns 2 and 3 so that the chart
// has df/dx3 nonzero along the line.
template <class F>
Matrix<F> chart_variant(const F &k, Matrix<F> M, int variant)
{
    if (variant == 0)
        return M;
    if (variant == 1) {
        for (auto &row : M)
            std::swap(row[2], row[3]);
        return M;
    }
    // Shear y3 -> y3 + c y2, i.e. column 2 gains c times column 3.
    const auto c = k.from_int(variant - 1);
    for (auto &row : M)
        row[2] = k.add(row[2], k.mul(c, row[3]));
    return M;
}

} // namespace detail

// Multiplicity of L in div_X(R): the u-adic order of R(1, s, u, phi(s, u))
// where v = phi(s, u) solves f = 0 near L = {u = v = 0} in the frame of L.
template <class F>
int line_multiplicity(const FlecnodalData<F> &D, const LineP3<F> &L)
{
    const auto &X = D.surface;
    X.require_char_gate("line_multiplicity");
    const F &k = X.field();
    if (!line_on_surface(X, L))
        fail(Errc::not_on_surface, "line_multiplicity: line " + L.to_string() + " does not lie on the surface");
    if (D.H.contains(L))
        fail(Errc::degenerate, "line_multiplicity: the line lies in H; choose another hyperplane");
    const auto frame = standardize_line(L);
    for (int variant = 0; variant < 5; ++variant) {
        const auto M = detail::chart_variant(k, frame.M, variant);
        const auto fM = X.f().substitute_linear(M);
        const auto g = chart_expansion(fM);
        if (!g.count({0, 1}))
            continue;
        for (int N = kSeriesStart; N <= kSeriesCap; N *= 2) {
            const auto keep = [N](const Mono &m) { return m.e[2] + m.e[3] <= N; };
            const auto RM = D.R.substitute_linear(M, keep);
            const auto phi = implicit_series_solve(fM, N);
            const auto val = evaluate_on_graph(chart_expansion(RM), phi);
            const auto ord = val.order();
            if (ord.exact)
                return ord.value;
        }
        fail(Errc::truncation_cap, "line_multiplicity: R vanishes to order > " + std::to_string(kSeriesCap) +
                                       " along " + L.to_string());
    }
    fail(Errc::inconsistent, "line_multiplicity: df/dx3 vanishes along the line in every chart tried");
}

namespace detail {

template <class F>
FuncField<F> parameter_field(const F &k)
{
    return FuncField<F>(k, "s");
}

// P(s) = row0 + s row1 over K = F(s), with X and L carried along.
template <class F>
struct GenericPoint {
    FuncField<F> K;
    Surface<FuncField<F>> X;
    LineP3<FuncField<F>> L;
    Vec4<FuncField<F>> P;
};

template <class F>
GenericPoint<F> generic_point(const Surface<F> &X, const LineP3<F> &L)
{
    const FuncField<F> K = parameter_field(X.field());
    const auto emb = [&](const typename F::Elem &c) { return K.from_poly(upoly::constant(X.field(), c)); };
    Vec4<FuncField<F>> a, b, p;
    for (std::size_t i = 0; i < 4; ++i) {
        a[i] = emb(L.rows()[0][i]);
        b[i] = emb(L.rows()[1][i]);
        p[i] = K.add(a[i], K.mul(K.variable(), b[i]));
    }
    return {K, X.embed(K, emb), LineP3<FuncField<F>>::through(K, a, b), p};
}

} // namespace detail

// Second kind iff t3 vanishes along the residual principal line L'(s) at the
// generic point P(s) of L. When t2 vanishes on the whole tangent plane at
// the generic point, every point of L is flecnodal and the line is reported
// as second kind.
template <class F>
LineKind classify_line(const Surface<F> &X, const LineP3<F> &L)
{
    X.require_char_gate("classify_line");
    if (!line_on_surface(X, L))
        fail(Errc::not_on_surface, "classify_line: line " + L.to_string() + " does not lie on the surface");
    const auto gp = detail::generic_point(X, L);
    const auto ch = tangent_chart(gp.X, gp.P);
    if (all_zero(gp.K, ch.Q))
        return LineKind::SecondKind;
    const auto Lp = residual_principal_line(gp.X, gp.P, gp.L);
    const auto w = other_point(Lp, gp.P);
    const auto t3 = ch.data.t3.eval(std::span<const typename FuncField<F>::Elem>(w));
    return gp.K.is_zero(t3) ? LineKind::SecondKind : LineKind::FirstKind;
}

namespace detail {

// Roots in Q of a univariate rational polynomial (low-to-high coefficients).
inline std::vector<mpq_class> rational_roots(const std::vector<mpq_class> &p)
{
    std::vector<mpq_class> out;
    if (p.size() < 2)
        return out;
    mpz_class l = 1;
    for (const auto &c : p)
        l = lcm(l, mpz_class(c.get_den()));
    std::vector<mpz_class> z;
    for (const auto &c : p)
        z.push_back(mpz_class(c * l));
    std::size_t lo = 0;
    while (z[lo] == 0)
        ++lo;
    if (lo > 0)
        out.push_back(0);
    auto divisors = [](mpz_class n) {
        n = abs(n);
        std::vector<mpz_class> ds;
        for (mpz_class i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                ds.push_back(i);
                ds.push_back(n / i);
            }
        return ds;
    };
    for (const auto &r : divisors(z[lo]))
        for (const auto &s : divisors(z.back()))
            for (int sign : {1, -1}) {
                mpq_class x(sign * r, s);
                x.canonicalize();
                mpq_class acc = 0;
                for (std::size_t i = z.size(); i-- > 0;)
                    acc = acc * x + mpq_class(z[i]);
                if (acc == 0 && std::find(out.begin(), out.end(), x) == out.end())
                    out.push_back(x);
            }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

template <class F>
struct RamificationPoint {
    typename F::Elem s0, s1; // P = s0 row0 + s1 row1
    int multiplicity = 1;
};

template <class F>
struct Ramification {
    BinaryForm<F> condition;                     // in (s0, s1), degree <= 2d - 4
    std::vector<RamificationPoint<F>> points;    // roots in the field of definition
};

// Points of L where the residual principal line coincides with L, i.e. the
// polar H_P(W, .) of the direction W of L is proportional to t1 at P.
template <class F>
Ramification<F> ramification_points(const Surface<F> &X, const LineP3<F> &L)
{
    X.require_char_gate("ramification_points");
    const F &k = X.field();
    if (!line_on_surface(X, L))
        fail(Errc::not_on_surface, "ramification_points: line " + L.to_string() + " does not lie on the surface");
    Matrix<F> m(4, std::vector<typename F::Elem>(2));
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][0] = L.rows()[0][i];
        m[i][1] = L.rows()[1][i];
    }
    const auto &W = L.rows()[1];
    std::array<Poly<F>, 4> h, g;
    for (int i = 0; i < 4; ++i) {
        g[static_cast<std::size_t>(i)] = X.d1(i).substitute_linear(m);
        Poly<F> acc(k, 2);
        for (int j = 0; j < 4; ++j)
            acc += X.d2(i, j).substitute_linear(m).scale(W[static_cast<std::size_t>(j)]);
        h[static_cast<std::size_t>(i)] = std::move(acc);
    }
    // The minors for W = row1 carry a spurious factor s0.
    const auto s0 = Poly<F>::variable(k, 2, 0);
    const int deg = 2 * X.degree() - 4;
    upoly::UPoly<F> acc;
    int inf_mult = deg; // multiplicity of the root s0 = 0 common to all minors
    bool any = false;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto minor = h[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)] -
                               h[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(i)];
            if (minor.is_zero())
                continue;
            const auto q = minor.divide_exact(s0);
            if (!q)
                fail(Errc::inconsistent, "ramification_points: polar minors are not divisible by s0");
            const auto b = binary_coeffs(*q, deg);
            // Dehomogenize at s0 = 1: coefficient of s1^k is b[k].
            upoly::UPoly<F> u(b.begin(), b.end());
            upoly::trim(k, u);
            inf_mult = std::min(inf_mult, deg - upoly::degree<F>(u));
            acc = any ? upoly::gcd(k, acc, u) : upoly::make_monic(k, u);
            any = true;
        }
    if (!any)
        fail(Errc::inconsistent, "ramification_points: the residual principal line equals L at every point; "
                                 "the surface violates the smoothness or characteristic hypotheses");
    Ramification<F> r;
    const int fin = upoly::degree<F>(acc);
    r.condition.assign(static_cast<std::size_t>(fin + inf_mult) + 1, k.zero());
    for (int i = 0; i <= fin; ++i)
        r.condition[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)];
    if (inf_mult > 0)
        r.points.push_back({k.zero(), k.one(), inf_mult});
    if constexpr (is_finite_field_v<F>) {
        if (k.cardinality() <= (1U << 20))
            for (std::uint64_t i = 0; i < k.cardinality(); ++i) {
                const auto x = k.element(i);
                const int mult = upoly::root_multiplicity(k, acc, x);
                if (mult > 0)
                    r.points.push_back({k.one(), x, mult});
            }
    } else if constexpr (std::is_same_v<F, Rationals>) {
        for (const auto &x : detail::rational_roots(acc)) {
            const int mult = upoly::root_multiplicity(k, acc, x);
            r.points.push_back({k.one(), x, mult});
        }
    }
    return r;
}

// Classifies and measures every record of a census.
template <class F>
void classify_census(Census<F> &c, const std::type_identity_t<FlecnodalData<F>> *D, unsigned jobs = 0)
{
    c.surface.require_char_gate("classify");
    jobs = resolve_jobs(jobs);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::optional<Error> first_error;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < c.records.size();) {
            try {
                auto &r = c.records[i];
                r.kind = classify_line(c.surface, r.line);
                if (D)
                    r.flec_mult = line_multiplicity(*D, r.line);
            } catch (const Error &e) {
                std::lock_guard<std::mutex> g(mu);
                if (!first_error)
                    first_error = e;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    if (first_error)
        throw *first_error;
}

} // namespace linesurf

#endif
