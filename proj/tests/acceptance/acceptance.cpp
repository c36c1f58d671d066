// Acceptance run: one PASS/FAIL line per criterion; nonzero exit when any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linesurf/algebra/implicit.hpp"
#include "linesurf/algebra/parse.hpp"
#include "linesurf/algebra/resultant.hpp"
#include "linesurf/census/audit.hpp"
#include "linesurf/census/bounds.hpp"
#include "linesurf/census/io.hpp"
#include "linesurf/flecnodal/flecnodal.hpp"
#include "linesurf/lineenum/lineenum.hpp"
#include "linesurf/linesurf.h"
#include "linesurf/tangent/tangent.hpp"

using namespace linesurf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string &name, const std::function<Outcome()> &body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << buf << ")"
              << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
    failures += o.pass ? 0 : 1;
}

template <class F>
Poly<F> P(const F &k, const std::string &text)
{
    return parse_poly(k, text, default_variable_names(4));
}

template <class F>
std::vector<LineP3<F>> lines_of(const Census<F> &c)
{
    std::vector<LineP3<F>> out;
    for (const auto &r : c.records)
        out.push_back(r.line);
    return out;
}

std::mt19937_64 &rng()
{
    static std::mt19937_64 gen(917);
    return gen;
}

template <class F>
Surface<F> random_smooth(const F &k, int d)
{
    for (;;) {
        Poly<F> eq(k, 4);
        for (int a = 0; a <= d; ++a)
            for (int b = 0; a + b <= d; ++b)
                for (int c = 0; a + b + c <= d; ++c) {
                    Mono m;
                    m.e[0] = static_cast<std::uint16_t>(a);
                    m.e[1] = static_cast<std::uint16_t>(b);
                    m.e[2] = static_cast<std::uint16_t>(c);
                    m.e[3] = static_cast<std::uint16_t>(d - a - b - c);
                    eq += Poly<F>::monomial(k, 4, m, k.random(rng()));
                }
        if (eq.is_zero() || eq.total_degree() != d)
            continue;
        Surface<F> X(eq);
        if (smoothness_probe(X, 1).smooth)
            return X;
    }
}

std::map<std::string, long long> read_keyed(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::map<std::string, long long> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream is(line);
        std::string key;
        long long v = 0;
        is >> key >> v;
        out[key] = v;
    }
    return out;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (n % i == 0)
            return false;
    return true;
}

// Contact at P versus vanishing of t2 and t3 in the direction of L.
template <class F>
void contact_agreement(const Surface<F> &X, const Vec4<F> &P, const LineP3<F> &L, Outcome &o, int &mismatches)
{
    const F &k = X.field();
    const auto W = other_point(L, P);
    const std::span<const typename F::Elem> w(W);
    const bool t1 = k.is_zero(contact_form_at(X, P, 1).eval(w));
    const bool t2 = k.is_zero(contact_form_at(X, P, 2).eval(w));
    const bool t3 = k.is_zero(contact_form_at(X, P, 3).eval(w));
    const int c = contact_order(X, L, P);
    const bool ok = (c >= 2) == t1 && (c >= 3) == (t1 && t2) && (c >= 4) == (t1 && t2 && t3);
    if (!ok && ++mismatches <= 3)
        o.require(false, "mismatch at " + vec_to_string(k, P) + " on " + L.to_string());
}

} // namespace

int main(int argc, char **argv)
{
    const std::string golden = argc > 1 ? argv[1] : "tests/golden";
    const auto start = Clock::now();
    const auto schur_p = read_keyed(golden + "/schur.txt");

    criterion(1, "Fermat cubic over F7: 27 lines equal to the Fermat family", [] {
        Outcome o;
        const PrimeField f7(7);
        const auto t0 = Clock::now();
        const auto c = enumerate_lines(Surface<PrimeField>(P(f7, "x0^3+x1^3+x2^3+x3^3")));
        const double dt = seconds_since(t0);
        o.require(c.size() == 27, "found " + std::to_string(c.size()));
        o.require(lines_of(c) == fermat_lines(3, f7), "census differs from fermat_lines(3)");
        o.require(dt < 5, "took " + std::to_string(dt) + "s");
        return o;
    });

    criterion(2, "Fermat quartic over F17: 48 of 89030 lines, at most 74, single thread", [] {
        Outcome o;
        const PrimeField f17(17);
        const auto t0 = Clock::now();
        const auto c = enumerate_lines(Surface<PrimeField>(P(f17, "x0^4+x1^4+x2^4+x3^4")), 1);
        const double dt = seconds_since(t0);
        o.require(c.size() == 48, "found " + std::to_string(c.size()));
        o.require(c.candidates == std::optional<std::uint64_t>(89030), "candidate count");
        o.require(static_cast<std::int64_t>(c.size()) <= bounds(4).new_bound, "exceeds 74");
        o.require(lines_of(c) == fermat_lines(4, f17), "census differs from fermat_lines(4)");
        o.require(dt < 60, "took " + std::to_string(dt) + "s");
        return o;
    });

    criterion(3, "Fermat quartic over F9: 112 lines; classification refused by the characteristic gate", [] {
        Outcome o;
        lsf_surface *s = nullptr;
        o.require(lsf_surface_parse("F9", "x0^4+x1^4+x2^4+x3^4", &s) == LSF_OK, lsf_last_error());
        lsf_census *c = nullptr;
        o.require(lsf_scan(s, 0, &c) == LSF_OK, lsf_last_error());
        o.require(lsf_census_size(c) == 112, "found " + std::to_string(lsf_census_size(c)));
        for (int op = 0; op < 2; ++op) {
            const auto st = op == 0 ? lsf_classify(c, 1) : lsf_flecnodal(c, 1, 1);
            o.require(st == LSF_ERR_CHAR_GATE, "status " + std::to_string(st));
            o.require(std::string(lsf_last_error()).find("(p, d) = (3, 4)") != std::string::npos,
                      std::string("message: ") + lsf_last_error());
        }
        lsf_census_free(c);
        lsf_surface_free(s);
        return o;
    });

    criterion(4, "Schur quartic: 64 lines, 48 first kind, 16 second kind of multiplicity 2, sum 80", [&] {
        Outcome o;
        const auto t0 = Clock::now();
        std::uint64_t p = 13;
        std::size_t count = 0;
        Census<PrimeField> c;
        for (; p < 200; p += 12) {
            if (!is_prime(p))
                continue;
            c = enumerate_lines(Surface<PrimeField>(P(PrimeField(p), "x0^4 - x0*x1^3 - x2^4 + x2*x3^3")));
            count = c.size();
            if (count == 64)
                break;
        }
        o.require(count == 64, "no p found");
        o.require(static_cast<long long>(p) == schur_p.at("p"), "p = " + std::to_string(p) + " differs from golden");
        const auto D = flecnodal_resultant(c.surface, 1, lines_of(c));
        classify_census(c, &D);
        int first = 0, second = 0, sum = 0;
        for (const auto &r : c.records) {
            sum += *r.flec_mult;
            if (r.kind == LineKind::FirstKind) {
                ++first;
                o.require(*r.flec_mult == 1, "first-kind multiplicity " + std::to_string(*r.flec_mult));
            } else {
                ++second;
                o.require(*r.flec_mult == 2, "second-kind multiplicity " + std::to_string(*r.flec_mult));
            }
        }
        o.require(first == schur_p.at("first_kind") && first == 48, "first kind " + std::to_string(first));
        o.require(second == schur_p.at("second_kind") && second == 16, "second kind " + std::to_string(second));
        o.require(sum == schur_p.at("multiplicity_sum") && sum == 80, "sum " + std::to_string(sum));
        o.require(seconds_since(t0) < 600, "over 10 minutes");
        o.detail += o.detail.empty() ? "p = " + std::to_string(p) : "";
        return o;
    });

    criterion(5, "eliminant degree 15 (d = 3) and 26 (d = 4) on random smooth surfaces over F11, F13", [] {
        Outcome o;
        for (int d : {3, 4})
            for (std::uint64_t p : {11U, 13U})
                for (int i = 0; i < 5; ++i) {
                    const auto X = random_smooth(PrimeField(p), d);
                    const auto D = flecnodal_resultant(X, rng()());
                    o.require(D.degree_R() == 11 * d - 18,
                              "d = " + std::to_string(d) + ": degree " + std::to_string(D.degree_R()));
                }
        return o;
    });

    criterion(6, "eliminant vanishes exactly at flecnodal points off H (exhaustive, quartic over F11)", [] {
        Outcome o;
        const auto t0 = Clock::now();
        const PrimeField f(11);
        const Surface<PrimeField> X(P(f, "x0^4 + 2*x1^4 + 3*x2^4 + 5*x3^4 + x0*x1*x2*x3 + x0^2*x1*x3 - x1^3*x2"));
        o.require(smoothness_probe(X, 2).smooth, "surface not smooth");
        const auto D = flecnodal_resultant(X, 3);
        int checked = 0, flec = 0;
        for (const auto &pt : surface_points(X)) {
            if (f.is_zero(D.H.eval(pt)))
                continue;
            const bool is_flec = is_flecnodal_point(X, pt).flecnodal;
            if (eliminant_vanishes_at(D, pt) != is_flec)
                o.require(false, "mismatch at " + vec_to_string(f, pt));
            flec += is_flec;
            ++checked;
        }
        o.require(checked > 0 && flec > 0, "degenerate sample");
        o.require(seconds_since(t0) < 120, "over 2 minutes");
        if (o.pass)
            o.detail = std::to_string(checked) + " points, " + std::to_string(flec) + " flecnodal";
        return o;
    });

    criterion(7, "diagonal multiplicity 6 at 50 admissible points of quartics and quintics", [] {
        Outcome o;
        int done = 0;
        for (int d : {4, 5})
            for (std::uint64_t p : {11U, 13U}) {
                const auto X = random_smooth(PrimeField(p), d);
                auto pts = surface_points(X);
                std::shuffle(pts.begin(), pts.end(), rng());
                int here = 0;
                for (const auto &pt : pts) {
                    if (here == 13 || done == 50)
                        break;
                    int m = 0;
                    try {
                        m = diagonal_multiplicity(X, pt, rng()());
                    } catch (const Error &e) {
                        if (e.code() == Errc::precondition)
                            continue;
                        throw;
                    }
                    o.require(m == 6, "multiplicity " + std::to_string(m));
                    ++here;
                    ++done;
                }
            }
        o.require(done == 50, "only " + std::to_string(done) + " admissible points");
        return o;
    });

    criterion(8, "contact order agrees with t2, t3 on 300 principal lines", [] {
        Outcome o;
        int samples = 0, mismatches = 0;
        const PrimeField f(13);
        while (samples < 300) {
            const auto X = random_smooth(f, 4);
            auto pts = surface_points(X);
            std::shuffle(pts.begin(), pts.end(), rng());
            for (std::size_t i = 0; i < pts.size() && i < 60 && samples < 300; ++i) {
                const auto pd = principal_lines(X, pts[i]);
                if (pd.kind == PrincipalDirections<PrimeField>::Kind::RationalPair) {
                    for (const auto &L : pd.lines) {
                        contact_agreement(X, pts[i], L, o, mismatches);
                        ++samples;
                    }
                } else if (pd.kind == PrincipalDirections<PrimeField>::Kind::ConjugatePair) {
                    const auto &G = *pd.ext;
                    const auto Xe = X.embed(G, [&](auto c) { return G.embed(c); });
                    Vec4<ExtField<PrimeField>> Pe;
                    for (std::size_t j = 0; j < 4; ++j)
                        Pe[j] = G.embed(pts[i][j]);
                    for (const auto &L : pd.ext_lines) {
                        contact_agreement(Xe, Pe, L, o, mismatches);
                        ++samples;
                    }
                }
                // A non-principal tangent line as a control.
                const auto td = tangent_data(X, pts[i]);
                for (std::uint64_t tries = 0; tries < 20; ++tries) {
                    Vec4<PrimeField> w;
                    for (auto &x : w)
                        x = f.random(rng());
                    if (!f.is_zero(td.t1.eval(std::span<const std::uint64_t>(w))))
                        continue;
                    try {
                        contact_agreement(X, pts[i], LineP3<PrimeField>::through(f, pts[i], w), o, mismatches);
                    } catch (const Error &) {
                        continue;
                    }
                    break;
                }
            }
        }
        o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
        if (o.pass)
            o.detail = std::to_string(samples) + " principal samples";
        return o;
    });

    criterion(9, "Schur audit: deg Z = 16 >= 6, l2 = 16 <= deg Z, incidences <= 18, Z.L >= 4(d-3)", [] {
        Outcome o;
        const PrimeField f(13);
        auto c = enumerate_lines(Surface<PrimeField>(P(f, "x0^4 - x0*x1^3 - x2^4 + x2*x3^3")));
        const auto D = flecnodal_resultant(c.surface, 2, lines_of(c));
        classify_census(c, &D);
        const auto r = audit_census(c);
        o.require(r.deg_Z == 16, "deg Z " + std::to_string(r.deg_Z));
        o.require(r.deg_Z >= 6 * (4 - 3), "main bound");
        o.require(r.ell2 == 16 && r.ell2 <= r.deg_Z, "l2 " + std::to_string(r.ell2));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.records[i].kind == LineKind::FirstKind)
                o.require(r.lines[i].meets <= 18, "first-kind line meets " + std::to_string(r.lines[i].meets));
            o.require(r.lines[i].Z_dot_L >= 4, "Z.L = " + std::to_string(r.lines[i].Z_dot_L));
        }
        o.require(r.all_hold(), "a verdict fails");
        return o;
    });

    criterion(10, "bounds for d = 3..20 match the golden table", [&] {
        Outcome o;
        std::ifstream in(golden + "/bounds.txt");
        o.require(bool(in), "cannot read bounds.txt");
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            std::istringstream is(line);
            std::int64_t d = 0, clebsch = 0, segre = 0, nb = 0;
            is >> d >> clebsch >> segre >> nb;
            const auto b = bounds(d);
            o.require(b.clebsch == clebsch && b.segre == segre && b.new_bound == nb, "d = " + std::to_string(d));
            o.require(b.new_bound == b.clebsch - 6 * (d - 3), "identity at d = " + std::to_string(d));
            ++rows;
        }
        o.require(rows == 18, "rows " + std::to_string(rows));
        o.require(bounds(3).new_bound == 27, "d = 3");
        return o;
    });

    criterion(11, "property suites and total time under 15 minutes", [&] {
        Outcome o;
        // Field axioms.
        const PrimeField f3(3);
        const ExtField<PrimeField> f9(f3, find_irreducible(f3, 2));
        const ExtField<Rationals> qw(Rationals{}, {1, 1, 1});
        auto axioms = [&](const auto &k) {
            for (int i = 0; i < 200; ++i) {
                const auto a = k.random(rng()), b = k.random(rng()), c = k.random(rng());
                o.require(k.eq(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c))), "distributivity in " + k.name());
                if (!k.is_zero(a))
                    o.require(k.eq(k.mul(a, k.inv(a)), k.one()), "inverse in " + k.name());
            }
        };
        axioms(PrimeField(13));
        axioms(f9);
        axioms(qw);
        // Plucker relation for random lines.
        const PrimeField f13(13);
        for (int i = 0; i < 200; ++i) {
            Vec4<PrimeField> a, b;
            for (std::size_t j = 0; j < 4; ++j) {
                a[j] = f13.random(rng());
                b[j] = f13.random(rng());
            }
            try {
                const auto l = LineP3<PrimeField>::through(f13, a, b);
                o.require(f13.is_zero(plucker_quadric(f13, l.plucker())), "Plucker relation");
                o.require(LineP3<PrimeField>::from_plucker(f13, l.plucker()) == l, "Plucker round trip");
            } catch (const Error &) {
            }
        }
        // Resultant vanishes exactly when the forms share a projective root.
        const PrimeField f7(7);
        for (int i = 0; i < 300; ++i) {
            BinaryForm<PrimeField> a(3), b(3);
            for (auto &x : a)
                x = f7.random(rng());
            for (auto &x : b)
                x = f7.random(rng());
            if ((a[0] == 0 && a[1] == 0 && a[2] == 0) || (b[0] == 0 && b[1] == 0 && b[2] == 0))
                continue;
            auto pa = a, pb = b;
            upoly::trim(f7, pa);
            upoly::trim(f7, pb);
            const bool shared = upoly::degree<PrimeField>(upoly::gcd(f7, pa, pb)) >= 1 || (a[2] == 0 && b[2] == 0);
            o.require(f7.is_zero(sylvester_resultant(f7, a, b)) == shared, "resultant criterion");
        }
        // Euler identity sum x_i df/dx_i = d f on random surfaces.
        for (int d : {3, 4, 5}) {
            const auto Y = random_smooth(f13, d);
            Poly<PrimeField> lhs = Y.f().scale(f13.from_int(-d));
            for (int i = 0; i < 4; ++i)
                lhs += Poly<PrimeField>::variable(f13, 4, i) * Y.d1(i);
            o.require(lhs.is_zero(), "Euler identity at d = " + std::to_string(d));
        }
        // Series solutions satisfy the equation to the truncation order.
        for (const char *eq : {"x3 - x2^2 + x1*x3^2", "x0^3*x3 + x1^3*x3 - x2^4 + x1*x2*x3^2"}) {
            const auto g = P(f13, eq);
            o.require(evaluate_on_graph(chart_expansion(g), implicit_series_solve(g, 10)).is_zero(), "series exactness");
        }
        // Scan determinism and census round trip.
        const Surface<PrimeField> X(P(f13, "x0^4 - x0*x1^3 - x2^4 + x2*x3^3"));
        const auto c1 = enumerate_lines(X, 1), c2 = enumerate_lines(X, 3);
        o.require(lines_of(c1) == lines_of(c2), "scan depends on the job count");
        const CensusDocument<PrimeField> doc{c1, json::object()};
        const auto text = render_census(doc);
        o.require(render_census(parse_census(X, text)) == text, "census JSON round trip");
        o.require(seconds_since(start) < 900, "total time over 15 minutes");
        return o;
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << " in "
              << seconds_since(start) << "s" << std::endl;
    return failures == 0 ? 0 : 1;
}
