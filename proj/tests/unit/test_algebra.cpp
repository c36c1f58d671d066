#include <doctest.h>

#include <functional>
#include <set>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/implicit.hpp"
#include "linesurf/algebra/parse.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/algebra/resultant.hpp"
#include "linesurf/algebra/series.hpp"
#include "support.hpp"

using namespace linesurf;
using testing::P;
using testing::rng;

namespace {

template <class F>
void check_field_axioms(const F &f, int trials)
{
    auto &g = rng();
    for (int i = 0; i < trials; ++i) {
        const auto a = f.random(g), b = f.random(g), c = f.random(g);
        REQUIRE(f.eq(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
        REQUIRE(f.eq(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
        REQUIRE(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
        REQUIRE(f.eq(f.add(a, b), f.add(b, a)));
        REQUIRE(f.eq(f.mul(a, b), f.mul(b, a)));
        REQUIRE(f.eq(f.add(a, f.neg(a)), f.zero()));
        REQUIRE(f.eq(f.mul(a, f.one()), a));
        if (!f.is_zero(a))
            REQUIRE(f.eq(f.mul(a, f.inv(a)), f.one()));
    }
}

// Cofactor expansion along the first row, written independently of the
// memoized determinant under test.
mpq_class cofactor_det(const std::vector<std::vector<mpq_class>> &m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    mpq_class acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpq_class>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpq_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(m[i][k]);
            sub.push_back(row);
        }
        acc += (j % 2 == 0 ? 1 : -1) * m[0][j] * cofactor_det(sub);
    }
    return acc;
}

std::vector<std::vector<mpq_class>> sylvester_by_hand(const std::vector<mpq_class> &a, const std::vector<mpq_class> &b)
{
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    std::vector<std::vector<mpq_class>> s(m + n, std::vector<mpq_class>(m + n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k)
            s[i][i + k] = a[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k)
            s[n + i][i + k] = b[k];
    return s;
}

template <class F>
TernaryForm<F> ternary_from_poly(const Poly<F> &p)
{
    TernaryForm<F> t;
    for (const auto &term : p.terms())
        t.push_back({{term.mono.e[0], term.mono.e[1], term.mono.e[2]}, term.coeff});
    return t;
}

template <class F>
Poly<F> random_form(const F &f, int nvars, int degree)
{
    std::vector<typename Poly<F>::Term> ts;
    std::function<void(int, int, Mono)> rec = [&](int v, int left, Mono m) {
        if (v == nvars - 1) {
            m.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(left);
            ts.push_back({m, f.random(rng())});
            return;
        }
        for (int k = 0; k <= left; ++k) {
            Mono mm = m;
            mm.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(k);
            rec(v + 1, left - k, mm);
        }
    };
    rec(0, degree, Mono{});
    return Poly<F>::from_terms(f, nvars, ts);
}

} // namespace

TEST_CASE("field axioms hold on random triples")
{
    check_field_axioms(Rationals{}, 1000);
    check_field_axioms(PrimeField(13), 1000);
    check_field_axioms(PrimeField(4294967291ULL), 1000);
    const PrimeField f3(3);
    check_field_axioms(ExtField<PrimeField>(f3, {f3.from_int(1), f3.zero(), f3.one()}), 1000);
    const PrimeField f2(2);
    check_field_axioms(ExtField<PrimeField>(f2, find_irreducible(f2, 4)), 1000);
    const Rationals q;
    check_field_axioms(ExtField<Rationals>(q, {q.one(), q.one(), q.one()}, "w"), 1000);
    check_field_axioms(FuncField<PrimeField>(PrimeField(7)), 1000);
}

TEST_CASE("field construction validates moduli")
{
    CHECK_THROWS_AS(PrimeField(15), Error);
    const PrimeField f5(5);
    CHECK_THROWS_AS(ExtField<PrimeField>(f5, {f5.from_int(1), f5.zero(), f5.one()}), Error); // x^2+1 = (x-2)(x+2)
    CHECK_NOTHROW(ExtField<PrimeField>(f5, {f5.from_int(2), f5.zero(), f5.one()}));
    const Rationals q;
    CHECK_THROWS_AS(ExtField<Rationals>(q, {q.from_int(-1), q.zero(), q.one()}), Error);
}

TEST_CASE("extension field enumeration and parsing round-trip")
{
    const PrimeField f3(3);
    const ExtField<PrimeField> f9(f3, {f3.from_int(1), f3.zero(), f3.one()});
    CHECK(f9.cardinality() == 9);
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < 9; ++i) {
        const auto e = f9.element(i);
        CHECK(f9.index(e) == i);
        CHECK(f9.eq(f9.parse(f9.to_string(e)), e));
        seen.insert(f9.to_string(e));
    }
    CHECK(seen.size() == 9);
    CHECK(f9.name() == "F3^2/x^2+1");
}

TEST_CASE("square roots")
{
    const PrimeField f13(13);
    for (std::uint64_t a = 0; a < 13; ++a) {
        auto r = f13.sqrt(a);
        bool is_square = false;
        for (std::uint64_t x = 0; x < 13; ++x)
            is_square |= f13.mul(x, x) == a;
        CHECK(r.has_value() == is_square);
        if (r)
            CHECK(f13.mul(*r, *r) == a);
    }
    const PrimeField f3(3);
    const ExtField<PrimeField> f9(f3, {f3.from_int(1), f3.zero(), f3.one()});
    for (std::uint64_t i = 0; i < 9; ++i) {
        const auto e = f9.element(i);
        auto r = f9.sqrt(f9.mul(e, e));
        REQUIRE(r.has_value());
        CHECK(f9.eq(f9.mul(*r, *r), f9.mul(e, e)));
    }
    CHECK(Rationals{}.sqrt(mpq_class(9, 4)) == mpq_class(3, 2));
    CHECK_FALSE(Rationals{}.sqrt(mpq_class(2)).has_value());
}

TEST_CASE("poly_arith examples")
{
    const Rationals q;
    CHECK(P(q, "x0 + x1") + P(q, "-x1") == P(q, "x0"));
    CHECK(P(q, "x0 + x1") * P(q, "x0 - x1") == P(q, "x0^2 - x1^2"));
    const PrimeField f5(5);
    CHECK(P(f5, "3*x0") + P(f5, "3*x0") == P(f5, "x0"));
    CHECK_THROWS_AS(P(q, "x0", 4) + P(q, "x0", 3), Error);
    CHECK((P(q, "x0") - P(q, "x0")).is_zero());
}

TEST_CASE("partial derivatives and the Euler identity")
{
    const Rationals q;
    CHECK(P(q, "x0^3").derivative(0) == P(q, "3*x0^2"));
    const PrimeField f5(5);
    CHECK(P(f5, "x0^5").derivative(0).is_zero());
    for (int d = 3; d <= 5; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto f = random_form(q, 4, d);
            Poly<Rationals> euler(q, 4);
            for (int i = 0; i < 4; ++i)
                euler += Poly<Rationals>::variable(q, 4, i) * f.derivative(i);
            CHECK(euler == f.scale(q.from_int(d)));
        }
    }
    const auto fermat = P(q, "x0^4+x1^4+x2^4+x3^4");
    Poly<Rationals> euler(q, 4);
    for (int i = 0; i < 4; ++i)
        euler += Poly<Rationals>::variable(q, 4, i) * fermat.derivative(i);
    CHECK(euler == fermat.scale(q.from_int(4)));
}

TEST_CASE("substitute_linear examples")
{
    const Rationals q;
    const auto f = P(q, "x0^2 + x1^2", 2);
    CHECK(f.substitute_linear({{q.one(), q.zero()}, {q.zero(), q.one()}}) == f);
    const auto g = P(q, "x0^2 - x1^2", 4);
    CHECK(g.substitute_linear({{q.one()}, {q.one()}, {q.zero()}, {q.zero()}}).is_zero());
    const auto cubic = P(q, "x0^3+x1^3+x2^3+x3^3");
    const Matrix<Rationals> span{{q.one(), q.zero()}, {q.from_int(-1), q.zero()}, {q.zero(), q.one()}, {q.zero(), q.from_int(-1)}};
    CHECK(cubic.substitute_linear(span).is_zero());
    CHECK_THROWS_AS(cubic.substitute_linear({{q.one()}}), Error);
    // Agreement with direct expansion on a random change of coordinates.
    const PrimeField f13(13);
    const auto h = random_form(f13, 4, 4);
    Matrix<PrimeField> m(4, std::vector<std::uint64_t>(4));
    for (auto &row : m)
        for (auto &x : row)
            x = f13.random(rng());
    std::vector<Poly<PrimeField>> forms;
    for (const auto &row : m)
        forms.push_back(Poly<PrimeField>::linear(f13, std::span<const std::uint64_t>(row)));
    Poly<PrimeField> direct(f13, 4);
    for (const auto &t : h.terms()) {
        auto acc = Poly<PrimeField>::constant(f13, 4, t.coeff);
        for (int i = 0; i < 4; ++i)
            acc = acc * forms[static_cast<std::size_t>(i)].pow(t.mono.e[static_cast<std::size_t>(i)]);
        direct += acc;
    }
    CHECK(h.substitute_linear(m) == direct);
}

TEST_CASE("exact division")
{
    const PrimeField f7(7);
    const auto a = random_form(f7, 3, 3), b = random_form(f7, 3, 4);
    auto q = (a * b).divide_exact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK_FALSE((a * b + P(f7, "x0", 3)).divide_exact(b).has_value());
}

TEST_CASE("parser reports positions and rejects unknown variables")
{
    const Rationals q;
    CHECK(P(q, "x0^4 - x0*x1^3 = x2^4 - x2*x3^3") == P(q, "x0^4 - x0*x1^3 - x2^4 + x2*x3^3"));
    CHECK(P(q, "# comment\n 1/2*x0 + 3/4*x1") == P(q, "(2*x0 + 3*x1)*1/4"));
    try {
        P(q, "x0^3 +\n  x4^3");
        FAIL("expected a parse error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::parse);
        CHECK(std::string(e.what()).find("2:3") != std::string::npos);
    }
    CHECK_THROWS_AS(P(q, "x0 +"), Error);
    CHECK_THROWS_AS(P(q, "x0 ** 2"), Error);
}

TEST_CASE("sylvester_resultant examples")
{
    const Rationals q;
    using B = BinaryForm<Rationals>;
    CHECK(sylvester_resultant(q, B{1, 0, 0}, B{1, 0, 0, 0}) == 0); // Res(u^2, u^3)
    const B uv{0, 1, 0}, cubic{1, 0, 0, 1};
    const auto r = sylvester_resultant(q, uv, cubic);
    CHECK(r != 0);
    CHECK(r == cofactor_det(sylvester_by_hand({0, 1, 0}, {1, 0, 0, 1})));
    const auto r2 = sylvester_resultant(q, B{1, -1}, B{1, 0, 0, 0});
    CHECK(r2 == cofactor_det(sylvester_by_hand({1, -1}, {1, 0, 0, 0})));
    CHECK(abs(r2) == 1);
    CHECK_THROWS_AS(sylvester_resultant(q, B{1}, cubic), Error);
}

TEST_CASE("sylvester_resultant vanishes iff a common factor exists")
{
    const PrimeField f(11);
    auto &g = rng();
    int zeros = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> deg(1, 3);
        const int m = deg(g), n = deg(g);
        BinaryForm<PrimeField> a(static_cast<std::size_t>(m) + 1), b(static_cast<std::size_t>(n) + 1);
        for (auto &x : a)
            x = f.random(g) % 3;
        for (auto &x : b)
            x = f.random(g) % 3;
        if (trial % 4 == 0) { // plant a common root (1 : t)
            const std::uint64_t t = f.random(g);
            const BinaryForm<PrimeField> lin{f.neg(t), 1};
            a = binary_mul(f, lin, BinaryForm<PrimeField>(a.begin(), a.end() - 1));
            b = binary_mul(f, lin, BinaryForm<PrimeField>(b.begin(), b.end() - 1));
        }
        if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; }) ||
            std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; }))
            continue;
        // Oracle: dehomogenize at v = 1 and take a univariate gcd; a root at
        // (1 : 0) shows up as a drop of formal degree in both.
        upoly::UPoly<PrimeField> ua(a.rbegin(), a.rend()), ub(b.rbegin(), b.rend());
        upoly::trim(f, ua);
        upoly::trim(f, ub);
        const bool common = upoly::gcd(f, ua, ub).size() > 1 || (a[0] == 0 && b[0] == 0);
        const bool vanishes = sylvester_resultant(f, a, b) == 0;
        CHECK(common == vanishes);
        zeros += vanishes;
    }
    CHECK(zeros > 20);
}

TEST_CASE("resultant_ternary_123 examples")
{
    const Rationals q;
    const auto l = std::array<mpq_class, 3>{1, 0, 0};
    auto tern = [&](const std::string &s) { return ternary_from_poly(P(q, s, 3)); };
    CHECK(resultant_ternary_123(q, l, tern("x1^2"), tern("x2^3")) != 0);
    CHECK(resultant_ternary_123(q, l, tern("x1*x2"), tern("x1^3")) == 0);
    CHECK_THROWS_AS(resultant_ternary_123(q, std::array<mpq_class, 3>{0, 0, 0}, tern("x1^2"), tern("x2^3")), Error);
}

TEST_CASE("resultant_ternary_123 output weight is 11d-18")
{
    const PrimeField f(13);
    const PolyRing<PrimeField> ring(f, 4);
    for (int d = 3; d <= 4; ++d) {
        std::array<Poly<PrimeField>, 3> l{random_form(f, 4, d - 1), random_form(f, 4, d - 1), random_form(f, 4, d - 1)};
        TernaryForm<PolyRing<PrimeField>> qf, cf;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; i + j <= 2; ++j)
                qf.push_back({{i, j, 2 - i - j}, random_form(f, 4, d - 2)});
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                cf.push_back({{i, j, 3 - i - j}, random_form(f, 4, d - 3)});
        const auto r = resultant_ternary_123(ring, l, qf, cf);
        CHECK(r.is_homogeneous());
        CHECK(r.total_degree() == 11 * d - 18);
    }
}

TEST_CASE("resultant_ternary_123 vanishes iff a common projective zero exists")
{
    // Whenever q does not vanish on the line l = 0, every common zero lies
    // in P^2 over the quadratic extension, so brute force there is complete.
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL}) {
        const PrimeField f(p);
        const ExtField<PrimeField> e(f, find_irreducible(f, 2));
        auto &g = rng();
        int zeros = 0, done = 0;
        while (done < 25) {
            auto l = random_form(f, 3, 1), qf = random_form(f, 3, 2), cf = random_form(f, 3, 3);
            if (done % 3 == 0) { // plant a common zero at a random F_p point
                std::vector<std::uint64_t> pt{f.random(g), f.random(g), 1};
                auto fix = [&](Poly<PrimeField> poly) {
                    return poly - Poly<PrimeField>::constant(f, 3, poly.eval(pt)) *
                                      Poly<PrimeField>::variable(f, 3, 2).pow(static_cast<unsigned>(poly.total_degree()));
                };
                l = fix(l);
                qf = fix(qf);
                cf = fix(cf);
            }
            std::array<std::uint64_t, 3> lc{l.coeff(Mono::var(0)), l.coeff(Mono::var(1)), l.coeff(Mono::var(2))};
            if (lc == std::array<std::uint64_t, 3>{0, 0, 0})
                continue;
            int piv = lc[0] ? 0 : (lc[1] ? 1 : 2);
            std::array<std::uint64_t, 3> b1{}, b2{};
            int others[2], k = 0;
            for (int i = 0; i < 3; ++i)
                if (i != piv)
                    others[k++] = i;
            b1[others[0]] = lc[piv];
            b1[piv] = f.neg(lc[others[0]]);
            b2[others[1]] = lc[piv];
            b2[piv] = f.neg(lc[others[1]]);
            const auto qr = restrict_ternary(f, ternary_from_poly(qf), 2, b1, b2);
            if (std::all_of(qr.begin(), qr.end(), [](auto x) { return x == 0; }))
                continue;
            const bool vanishes = resultant_ternary_123(f, lc, ternary_from_poly(qf), ternary_from_poly(cf)) == 0;
            const auto le = l.map_coeffs(e, [&](auto c) { return e.embed(c); });
            const auto qe = qf.map_coeffs(e, [&](auto c) { return e.embed(c); });
            const auto ce = cf.map_coeffs(e, [&](auto c) { return e.embed(c); });
            bool found = false;
            const std::uint64_t qq = e.cardinality();
            auto test = [&](const std::vector<ExtField<PrimeField>::Elem> &pt) {
                if (!found && e.is_zero(le.eval(pt)) && e.is_zero(qe.eval(pt)) && e.is_zero(ce.eval(pt)))
                    found = true;
            };
            test({e.one(), e.zero(), e.zero()});
            for (std::uint64_t a = 0; a < qq; ++a)
                test({e.element(a), e.one(), e.zero()});
            for (std::uint64_t a = 0; a < qq && !found; ++a)
                for (std::uint64_t b = 0; b < qq && !found; ++b)
                    test({e.element(a), e.element(b), e.one()});
            CHECK(found == vanishes);
            zeros += vanishes;
            ++done;
        }
        CHECK(zeros >= 8);
    }
}

TEST_CASE("series arithmetic and order")
{
    const Rationals q;
    const auto s = Series<Rationals>::from_coeffs(q, 6, {0, 0, 0, 1, 1});
    CHECK(s.order() == SeriesOrder{3, true});
    CHECK(Series<Rationals>(q, 6).order().to_string() == "at-least-7");
    const FuncField<Rationals> K(q);
    auto c0 = K.make({1, 1}, {0, 1});
    CHECK(Series<FuncField<Rationals>>::constant(K, 4, c0).order() == SeriesOrder{0, true});
    // Products at truncation N agree with longer products cut back to N.
    const PrimeField f(101);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint64_t> a(20), b(20);
        for (auto &x : a)
            x = f.random(rng());
        for (auto &x : b)
            x = f.random(rng());
        const auto shortp = Series<PrimeField>::from_coeffs(f, 7, a) * Series<PrimeField>::from_coeffs(f, 7, b);
        const auto longp = Series<PrimeField>::from_coeffs(f, 19, a) * Series<PrimeField>::from_coeffs(f, 19, b);
        CHECK(shortp.coeffs() == longp.retruncate(7).coeffs());
        const auto sum = Series<PrimeField>::from_coeffs(f, 7, a) + Series<PrimeField>::from_coeffs(f, 7, b);
        CHECK(sum.coeffs() == (Series<PrimeField>::from_coeffs(f, 19, a) + Series<PrimeField>::from_coeffs(f, 19, b)).retruncate(7).coeffs());
    }
}

TEST_CASE("implicit_series_solve")
{
    const Rationals q;
    const FuncField<Rationals> K(q);
    using S = Series<FuncField<Rationals>>;

    const auto phi1 = implicit_series_solve(P(q, "x3 - x1*x2"), 6);
    CHECK(K.eq(phi1.coeff(1), K.variable()));
    for (int k = 2; k <= 6; ++k)
        CHECK(K.is_zero(phi1.coeff(k)));

    // v - u^2 + s v^2 = 0 gives v = u^2 - s u^4 + O(u^6); verified by
    // substituting back.
    const auto f2 = P(q, "x3 - x2^2 + x1*x3^2");
    const auto phi2 = implicit_series_solve(f2, 5);
    CHECK(K.eq(phi2.coeff(2), K.one()));
    CHECK(K.eq(phi2.coeff(4), K.neg(K.variable())));
    CHECK(evaluate_on_graph(chart_expansion(f2), phi2).is_zero());
    const auto wrong = S::from_coeffs(K, 4, {K.zero(), K.zero(), K.one(), K.zero(), K.variable()});
    CHECK_FALSE(evaluate_on_graph(chart_expansion(f2), wrong).is_zero());

    CHECK(implicit_series_solve(P(q, "x3 - x1*x2"), 0).is_zero());
    CHECK_THROWS_AS(implicit_series_solve(P(q, "x2 - x1*x3^2"), 4), Error);
    CHECK_THROWS_AS(implicit_series_solve(P(q, "x0 + x3"), 4), Error);

    // A quartic-style example over F_13 with a nontrivial denominator.
    const PrimeField f(13);
    const auto g = P(f, "x0^3*x3 + x1^3*x3 - x2^4 + x1*x2*x3^2");
    const auto phi = implicit_series_solve(g, 10);
    CHECK(evaluate_on_graph(chart_expansion(g), phi).is_zero());
}
