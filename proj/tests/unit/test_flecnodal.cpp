#include <doctest.h>

#include <chrono>

#include "linesurf/flecnodal/flecnodal.hpp"
#include "support.hpp"

using namespace linesurf;
using testing::P;
using testing::rng;

namespace {

template <class F>
Vec4<F> v4(const F &f, long long a, long long b, long long c, long long d)
{
    return {f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)};
}

const char *kQuartic11 = "x0^4 + 2*x1^4 + 3*x2^4 + 5*x3^4 + x0*x1*x2*x3 + x0^2*x1*x3 - x1^3*x2";

template <class F>
std::vector<LineP3<F>> lines_of(const Census<F> &c)
{
    std::vector<LineP3<F>> out;
    for (const auto &r : c.records)
        out.push_back(r.line);
    return out;
}

// Random smooth surface of degree d over F_p.
Surface<PrimeField> random_smooth(const PrimeField &f, int d)
{
    for (;;) {
        Poly<PrimeField> eq(f, 4);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b)
                for (int c = 0; a + b + c <= d; ++c) {
                    Mono m;
                    m.e[0] = static_cast<std::uint16_t>(a);
                    m.e[1] = static_cast<std::uint16_t>(b);
                    m.e[2] = static_cast<std::uint16_t>(c);
                    m.e[3] = static_cast<std::uint16_t>(d - a - b - c);
                    eq += Poly<PrimeField>::monomial(f, 4, m, f.random(rng()));
                }
        if (eq.is_zero() || eq.total_degree() != d)
            continue;
        const Surface<PrimeField> X(eq);
        if (smoothness_probe(X, 1).smooth)
            return X;
    }
}

} // namespace

TEST_CASE("flecnodal_resultant degree")
{
    for (int d : {3, 4}) {
        const PrimeField f(d == 3 ? 11 : 13);
        for (int trial = 0; trial < 2; ++trial) {
            const auto X = random_smooth(f, d);
            const auto D = flecnodal_resultant(X, 100 + static_cast<std::uint64_t>(trial));
            CHECK(D.degree_R() == 11 * d - 18);
            CHECK(D.class_degree == 11 * d - 24);
            CHECK(D.diag_mult == 6);
        }
    }
    const Rationals q;
    const auto D = flecnodal_resultant(Surface<Rationals>(P(q, "x0^3+x1^3+x2^3+x3^3")), 7);
    CHECK(D.degree_R() == 15);

    const PrimeField f3(3);
    const ExtField<PrimeField> f9(f3, find_irreducible(f3, 2));
    try {
        flecnodal_resultant(Surface<ExtField<PrimeField>>(P(f9, "x0^4+x1^4+x2^4+x3^4")), 1);
        FAIL("expected char gate");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::char_gate);
        CHECK(std::string(e.what()).find("(3, 4)") != std::string::npos);
    }
}

TEST_CASE("eliminant support equals the flecnodal locus off H")
{
    const PrimeField f(11);
    const Surface<PrimeField> X(P(f, kQuartic11));
    const auto D = flecnodal_resultant(X, 3);
    int flec = 0, total = 0;
    for (const auto &pt : surface_points(X)) {
        if (f.is_zero(D.H.eval(pt)))
            continue;
        const bool is_flec = is_flecnodal_point(X, pt).flecnodal;
        CHECK(eliminant_vanishes_at(D, pt) == is_flec);
        flec += is_flec;
        ++total;
    }
    CHECK(total > 100);
    CHECK(flec > 0);
    CHECK(flec < total);
}

TEST_CASE("line multiplicities and kinds on the Fermat cubic")
{
    const PrimeField f7(7);
    const Surface<PrimeField> X(P(f7, "x0^3+x1^3+x2^3+x3^3"));
    auto c = enumerate_lines(X);
    const auto D = flecnodal_resultant(X, 11, lines_of(c));
    classify_census(c, &D, 2);
    int sum = 0;
    for (const auto &r : c.records) {
        REQUIRE(r.flec_mult);
        CHECK(*r.flec_mult >= 1);
        if (r.kind == LineKind::SecondKind)
            CHECK(*r.flec_mult >= 2);
        sum += *r.flec_mult;
    }
    // deg F = d(11d - 24) = 27 on a cubic.
    CHECK(sum <= 27);
}

TEST_CASE("line_multiplicity does not depend on H")
{
    const PrimeField f13(13);
    const Surface<PrimeField> X(P(f13, "x0^4 - x0*x1^3 - x2^4 + x2*x3^3"));
    const auto c = enumerate_lines(X);
    REQUIRE(c.size() == 64);
    std::vector<FlecnodalData<PrimeField>> Ds;
    for (std::uint64_t seed : {1U, 2U, 3U})
        Ds.push_back(flecnodal_resultant(X, seed, lines_of(c)));
    for (std::size_t i = 0; i < c.size(); i += 9) {
        const int m0 = line_multiplicity(Ds[0], c.records[i].line);
        CHECK(line_multiplicity(Ds[1], c.records[i].line) == m0);
        CHECK(line_multiplicity(Ds[2], c.records[i].line) == m0);
    }
    const auto off = LineP3<PrimeField>::through(f13, v4(f13, 1, 2, 3, 4), v4(f13, 0, 1, 5, 7));
    try {
        line_multiplicity(Ds[0], off);
        FAIL("expected not-on-surface");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::not_on_surface);
    }
}

TEST_CASE("classify_line on the Schur quartic")
{
    const PrimeField f13(13);
    const Surface<PrimeField> X(P(f13, "x0^4 - x0*x1^3 - x2^4 + x2*x3^3"));
    auto c = enumerate_lines(X);
    REQUIRE(c.size() == 64);
    classify_census(c, nullptr);
    int second = 0;
    for (const auto &r : c.records)
        second += r.kind == LineKind::SecondKind;
    CHECK(second == 16);
    // Every ramification list is finite and bounded by 2d - 4.
    for (const auto &r : c.records) {
        const auto ram = ramification_points(X, r.line);
        int total = 0;
        for (const auto &p : ram.points)
            total += p.multiplicity;
        CHECK(total <= 4);
        CHECK(static_cast<int>(ram.condition.size()) - 1 <= 4);
    }
}

TEST_CASE("ramification_points fixtures")
{
    const Rationals q;
    // At (1:0:0:0) the tangent plane section has t2 = x2^2, doubling along L.
    const Surface<Rationals> X(P(q, "x0^3*x1 + x0^2*x2^2 + x1*x3^3 + x2*x3^3 + x2^4 + x1^4"));
    const auto L = LineP3<Rationals>::through(q, v4(q, 1, 0, 0, 0), v4(q, 0, 0, 0, 1));
    const auto r = ramification_points(X, L);
    bool at_zero = false;
    for (const auto &p : r.points)
        at_zero = at_zero || (p.s0 == 1 && p.s1 == 0);
    CHECK(at_zero);

    // Residual fixture: L' differs from L at s = 0.
    const Surface<Rationals> Y(P(q, "x0^3*x1 + x0^2*(x2^2 - x2*x3) + x1*x3^3 + x2*x1^3 + x2^4"));
    const auto rY = ramification_points(Y, L);
    for (const auto &p : rY.points)
        CHECK_FALSE((p.s0 == 1 && p.s1 == 0));

    // On a cubic surface each line carries 2 ramification points (over the
    // closure), so the condition has degree 2d - 4 = 2.
    const PrimeField f7(7);
    const Surface<PrimeField> cubic(P(f7, "x0^3+x1^3+x2^3+x3^3"));
    for (const auto &rec : enumerate_lines(cubic).records)
        CHECK(static_cast<int>(ramification_points(cubic, rec.line).condition.size()) - 1 == 2);
}

TEST_CASE("classify_line fixture and errors")
{
    const Rationals q;
    const Surface<Rationals> cubic(P(q, "x0^3+x1^3+x2^3+x3^3"));
    const auto off = LineP3<Rationals>::through(q, v4(q, 1, 0, 0, 0), v4(q, 0, 1, 0, 0));
    CHECK_THROWS_AS(classify_line(cubic, off), Error);
    const auto on = LineP3<Rationals>::through(q, v4(q, 1, -1, 0, 0), v4(q, 0, 0, 1, -1));
    const auto k = classify_line(cubic, on);
    CHECK((k == LineKind::FirstKind || k == LineKind::SecondKind));
}
