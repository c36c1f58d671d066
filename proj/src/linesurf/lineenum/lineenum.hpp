#ifndef LINESURF_LINEENUM_LINEENUM_HPP
#define LINESURF_LINEENUM_LINEENUM_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/algebra/upoly.hpp"
#include "linesurf/error.hpp"
#include "linesurf/projgeom/projgeom.hpp"
#include "linesurf/tangent/surface.hpp"
#include "linesurf/tangent/tangent.hpp"

namespace linesurf {

enum class LineKind { Unclassified, FirstKind, SecondKind };
enum class LineSource { Scan, Family, UserSupplied };

inline const char *to_string(LineKind k)
{
    switch (k) {
    case LineKind::FirstKind:
        return "first";
    case LineKind::SecondKind:
        return "second";
    default:
        return "unclassified";
    }
}

inline const char *to_string(LineSource s)
{
    switch (s) {
    case LineSource::Scan:
        return "scan";
    case LineSource::Family:
        return "family";
    default:
        return "user";
    }
}

template <class F>
struct LineRecord {
    LineP3<F> line;
    LineKind kind = LineKind::Unclassified;
    std::optional<int> flec_mult;
    LineSource source = LineSource::Scan;
};

template <class F>
struct Census {
    Surface<F> surface;
    std::vector<LineRecord<F>> records;        // sorted by Plucker vector, no duplicates
    std::vector<std::vector<int>> incidence;   // adjacency lists, i != j
    std::optional<std::uint64_t> candidates;   // lines tested by a scan

    std::size_t size() const { return records.size(); }
};

// f restricted to the line spanned by the rows, as a binary form of degree d.
template <class F>
BinaryForm<F> restrict_to_line(const Surface<F> &X, const LineP3<F> &L)
{
    Matrix<F> m(4, std::vector<typename F::Elem>(2));
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][0] = L.rows()[0][i];
        m[i][1] = L.rows()[1][i];
    }
    return binary_coeffs(X.f().substitute_linear(m), X.degree());
}

template <class F>
bool line_on_surface(const Surface<F> &X, const LineP3<F> &L)
{
    return all_zero(X.field(), restrict_to_line(X, L));
}

// Sorts, removes duplicates (keeping the first record of each line) and
// rebuilds the incidence lists.
template <class F>
void finalize_census(Census<F> &c)
{
    std::stable_sort(c.records.begin(), c.records.end(),
                     [](const LineRecord<F> &a, const LineRecord<F> &b) { return a.line < b.line; });
    c.records.erase(std::unique(c.records.begin(), c.records.end(),
                                [](const LineRecord<F> &a, const LineRecord<F> &b) { return a.line == b.line; }),
                    c.records.end());
    const std::size_t n = c.records.size();
    c.incidence.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (lines_meet(c.records[i].line, c.records[j].line)) {
                c.incidence[i].push_back(static_cast<int>(j));
                c.incidence[j].push_back(static_cast<int>(i));
            }
}

template <class F>
Census<F> make_census(const Surface<F> &X, std::vector<LineRecord<F>> records)
{
    Census<F> c;
    c.surface = X;
    c.records = std::move(records);
    finalize_census(c);
    return c;
}

inline unsigned resolve_jobs(unsigned jobs)
{
    if (jobs == 0)
        jobs = std::max(1U, std::thread::hardware_concurrency());
    return jobs;
}

// Every F_q-rational line on X. Lines are visited by echelon shape; the two
// extreme coefficients of f on the span are f(row0) and f(row1), so rows are
// first filtered by those and surviving pairs get the full coefficient test.
template <class F>
Census<F> enumerate_lines(const Surface<F> &X, unsigned jobs = 0)
{
    if constexpr (!is_finite_field_v<F>) {
        fail(Errc::unsupported, "enumerate_lines needs a finite field; use verify_census for " + X.field().name());
    } else {
        const F &k = X.field();
        const std::uint64_t q = k.cardinality();
        jobs = resolve_jobs(jobs);

        struct Work {
            const EchelonShape *shape;
            std::vector<std::uint64_t> z0, z1;
        };
        std::vector<Work> work;
        for (const auto &s : echelon_shapes()) {
            Work w{&s, {}, {}};
            const std::uint64_t n0 = ipow(q, s.free0.size()), n1 = ipow(q, s.free1.size());
            for (std::uint64_t i = 0; i < n0; ++i)
                if (X.contains(echelon_rows(k, s, i, 0)[0]))
                    w.z0.push_back(i);
            for (std::uint64_t i = 0; i < n1; ++i)
                if (X.contains(echelon_rows(k, s, 0, i)[1]))
                    w.z1.push_back(i);
            work.push_back(std::move(w));
        }
        // Flatten to (shape, z0 entry) tasks and hand them out atomically.
        std::vector<std::pair<std::size_t, std::size_t>> tasks;
        for (std::size_t w = 0; w < work.size(); ++w)
            for (std::size_t i = 0; i < work[w].z0.size(); ++i)
                tasks.emplace_back(w, i);
        std::atomic<std::size_t> next{0};
        std::mutex mu;
        std::vector<LineRecord<F>> found;
        auto worker = [&] {
            std::vector<LineRecord<F>> local;
            for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
                const auto &w = work[tasks[t].first];
                const std::uint64_t i0 = w.z0[tasks[t].second];
                for (const std::uint64_t i1 : w.z1) {
                    const auto rows = echelon_rows(k, *w.shape, i0, i1);
                    const auto l = LineP3<F>::through(k, rows[0], rows[1]);
                    if (line_on_surface(X, l))
                        local.push_back({l, LineKind::Unclassified, std::nullopt, LineSource::Scan});
                }
            }
            std::lock_guard<std::mutex> g(mu);
            found.insert(found.end(), local.begin(), local.end());
        };
        std::vector<std::thread> pool;
        for (unsigned j = 1; j < jobs; ++j)
            pool.emplace_back(worker);
        worker();
        for (auto &t : pool)
            t.join();
        auto c = make_census(X, std::move(found));
        c.candidates = count_lines(q);
        return c;
    }
}

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t r = n;
    for (auto p : prime_factors(n))
        r = r / p * (p - 1);
    return r;
}

template <class F>
bool has_exact_order(const F &f, const typename F::Elem &x, std::uint64_t n)
{
    if (!f.eq(power(f, x, n), f.one()))
        return false;
    for (auto p : prime_factors(n))
        if (f.eq(power(f, x, n / p), f.one()))
            return false;
    return true;
}

// A primitive n-th root of unity in the field, if one is found.
template <class F>
std::optional<typename F::Elem> primitive_root_of_unity(const F &f, std::uint64_t n)
{
    if constexpr (is_finite_field_v<F>) {
        const std::uint64_t q = f.cardinality();
        if ((q - 1) % n != 0)
            return std::nullopt;
        for (std::uint64_t i = 1; i < q; ++i) {
            const auto y = power(f, f.element(i), (q - 1) / n);
            if (has_exact_order(f, y, n))
                return y;
        }
        return std::nullopt;
    } else {
        // Signed powers of the generator cover the usual cyclotomic
        // presentations.
        std::vector<typename F::Elem> gens{f.one()};
        if constexpr (requires { f.generator(); })
            gens.push_back(f.generator());
        for (const auto &g : gens)
            for (const auto &base : {g, f.neg(g)}) {
                auto x = f.one();
                for (std::uint64_t j = 0; j <= 2 * n; ++j) {
                    if (has_exact_order(f, x, n))
                        return x;
                    x = f.mul(x, base);
                }
            }
        return std::nullopt;
    }
}

} // namespace detail

// The 3d^2 lines {x_a = alpha x_b, x_c = beta x_e}, alpha^d = beta^d = -1, on
// the Fermat surface of degree d, over the pairings (01|23), (02|13), (03|12).
template <class F>
std::vector<LineP3<F>> fermat_lines(int d, const F &k)
{
    if (d < 3)
        fail(Errc::precondition, "fermat_lines needs d >= 3");
    const std::uint64_t n = 2 * static_cast<std::uint64_t>(d);
    const std::uint64_t p = k.characteristic();
    if (p != 0 && n % p == 0)
        fail(Errc::unsupported, "fermat_lines: characteristic " + std::to_string(p) + " divides 2d = " + std::to_string(n) +
                                    ", so x^d = -1 has repeated roots");
    const auto rho = detail::primitive_root_of_unity(k, n);
    if (!rho) {
        std::string msg = "fermat_lines: " + k.name() + " has no primitive " + std::to_string(n) + "-th root of unity; ";
        if constexpr (is_finite_field_v<F>) {
            const std::uint64_t q = k.cardinality();
            std::uint64_t e = 1, qk = q % n;
            while (qk != 1) {
                qk = qk * (q % n) % n;
                ++e;
            }
            msg += "the minimal extension is the degree-" + std::to_string(e) + " extension of " + k.name() +
                   " (F_{q^" + std::to_string(e) + "}, q = " + std::to_string(q) + ")";
        } else {
            msg += "adjoin one, e.g. the degree-" + std::to_string(detail::euler_phi(n)) +
                   " cyclotomic extension of Q by the " + std::to_string(n) + "-th cyclotomic polynomial";
        }
        fail(Errc::extension_required, msg);
    }
    std::vector<typename F::Elem> roots; // alpha with alpha^d = -1
    auto x = *rho;
    const auto rho2 = k.mul(*rho, *rho);
    for (int j = 0; j < d; ++j) {
        roots.push_back(x);
        x = k.mul(x, rho2);
    }
    const Poly<F> fermat = [&] {
        Poly<F> f(k, 4);
        for (int i = 0; i < 4; ++i)
            f += Poly<F>::variable(k, 4, i).pow(static_cast<unsigned>(d));
        return f;
    }();
    const Surface<F> X(fermat);
    const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<LineP3<F>> out;
    for (const auto &pr : pairings)
        for (const auto &alpha : roots)
            for (const auto &beta : roots) {
                Vec4<F> u, v;
                u.fill(k.zero());
                v.fill(k.zero());
                u[static_cast<std::size_t>(pr[0])] = alpha;
                u[static_cast<std::size_t>(pr[1])] = k.one();
                v[static_cast<std::size_t>(pr[2])] = beta;
                v[static_cast<std::size_t>(pr[3])] = k.one();
                auto l = LineP3<F>::through(k, u, v);
                if (!line_on_surface(X, l))
                    fail(Errc::inconsistent, "fermat_lines produced a line off the surface: " + l.to_string());
                out.push_back(std::move(l));
            }
    std::sort(out.begin(), out.end());
    return out;
}

template <class F>
struct Rejection {
    LineP3<F> line;
    std::string restriction; // nonzero f restricted to the line
};

template <class F>
struct VerifyResult {
    Census<F> census;
    std::vector<Rejection<F>> rejected;
};

template <class F>
std::string binary_form_to_string(const F &k, const BinaryForm<F> &b)
{
    std::vector<typename Poly<F>::Term> ts;
    const int m = static_cast<int>(b.size()) - 1;
    for (int i = 0; i <= m; ++i) {
        Mono mono;
        mono.e[0] = static_cast<std::uint16_t>(m - i);
        mono.e[1] = static_cast<std::uint16_t>(i);
        ts.push_back({mono, b[static_cast<std::size_t>(i)]});
    }
    return Poly<F>::from_terms(k, 2, std::move(ts)).to_string({"s", "t"});
}

template <class F>
VerifyResult<F> verify_census(const Surface<F> &X, const std::vector<LineP3<F>> &candidates,
                              LineSource source = LineSource::UserSupplied)
{
    VerifyResult<F> r;
    std::vector<LineRecord<F>> kept;
    for (const auto &l : candidates) {
        const auto b = restrict_to_line(X, l);
        if (all_zero(X.field(), b))
            kept.push_back({l, LineKind::Unclassified, std::nullopt, source});
        else
            r.rejected.push_back({l, binary_form_to_string(X.field(), b)});
    }
    r.census = make_census(X, std::move(kept));
    return r;
}

// Number of other census lines meeting each record.
template <class F>
std::vector<int> incidence_graph(const Census<F> &c)
{
    std::vector<int> out;
    for (const auto &adj : c.incidence)
        out.push_back(static_cast<int>(adj.size()));
    return out;
}

struct SmoothProbe {
    bool smooth = true;                  // no singular point found
    int k_max = 0;                       // extensions F_{q^k}, k <= k_max, were searched
    int witness_degree = 0;              // k of the field holding the witness
    std::optional<std::string> witness;  // singular point coordinates
    std::string witness_field;
};

namespace detail {

// Searches P^3(K) for a common zero of f and its partials. Points are
// fibered over (a0 : a1 : a2) in P^2(K); on each fiber the common zeros in
// x3 are the roots of a univariate gcd, which is constant for smooth X.
template <class K, class F>
std::optional<std::string> singular_point_search(const Surface<F> &X, const K &ext, const auto &embed)
{
    std::vector<Poly<K>> polys{X.f().map_coeffs(ext, embed)};
    for (int i = 0; i < 4; ++i)
        polys.push_back(X.d1(i).map_coeffs(ext, embed));
    auto check_point = [&](const Vec4<K> &x) {
        for (const auto &g : polys)
            if (!ext.is_zero(g.eval(std::span<const typename K::Elem>(x))))
                return false;
        return true;
    };
    const Vec4<K> top{ext.zero(), ext.zero(), ext.zero(), ext.one()};
    if (check_point(top))
        return vec_to_string(ext, top);
    std::optional<std::string> hit;
    const std::uint64_t q = ext.cardinality();
    // (a0 : a1 : a2) normalized, x = (a0, a1, a2, t).
    for (int lead = 0; lead < 3 && !hit; ++lead) {
        const std::uint64_t n = ipow(q, static_cast<std::size_t>(2 - lead));
        for (std::uint64_t idx = 0; idx < n && !hit; ++idx) {
            std::array<typename K::Elem, 3> a{ext.zero(), ext.zero(), ext.zero()};
            a[static_cast<std::size_t>(lead)] = ext.one();
            std::uint64_t t = idx;
            for (int j = lead + 1; j < 3; ++j) {
                a[static_cast<std::size_t>(j)] = ext.element(t % q);
                t /= q;
            }
            // x_i = a_i * u0 + delta_{i3} * u1; dehomogenize at u0 = 1.
            Matrix<K> m(4, std::vector<typename K::Elem>(2, ext.zero()));
            for (std::size_t i = 0; i < 3; ++i)
                m[i][0] = a[i];
            m[3][1] = ext.one();
            upoly::UPoly<K> g;
            bool first = true;
            for (const auto &p : polys) {
                const auto b = p.substitute_linear(m);
                upoly::UPoly<K> u;
                for (const auto &term : b.terms()) {
                    const auto e = static_cast<std::size_t>(term.mono.e[1]);
                    if (u.size() <= e)
                        u.resize(e + 1, ext.zero());
                    u[e] = term.coeff;
                }
                upoly::trim(ext, u);
                g = first ? u : upoly::gcd(ext, g, u);
                first = false;
                if (!g.empty() && g.size() == 1)
                    break;
            }
            if (!g.empty() && g.size() == 1)
                continue;
            for (std::uint64_t i = 0; i < q; ++i) {
                const auto x3 = ext.element(i);
                if (g.empty() || ext.is_zero(upoly::eval(ext, g, x3))) {
                    const Vec4<K> x{a[0], a[1], a[2], x3};
                    if (check_point(x)) {
                        hit = vec_to_string(ext, x);
                        break;
                    }
                }
            }
        }
    }
    return hit;
}

} // namespace detail

// Looks for a singular point of X over F_{q^k} for k = 1..k_max.
template <class F>
SmoothProbe smoothness_probe(const Surface<F> &X, int k_max)
{
    if constexpr (!is_finite_field_v<F>) {
        fail(Errc::unsupported, "smoothness_probe needs a finite field");
    } else {
        SmoothProbe r;
        r.k_max = k_max;
        const F &k = X.field();
        for (int e = 1; e <= k_max; ++e) {
            std::optional<std::string> w;
            std::string name;
            if (e == 1) {
                w = detail::singular_point_search(X, k, [](const auto &c) { return c; });
                name = k.name();
            } else {
                const ExtField<F> ext(k, find_irreducible(k, e));
                w = detail::singular_point_search(X, ext, [&](const auto &c) { return ext.embed(c); });
                name = ext.name();
            }
            if (w) {
                r.smooth = false;
                r.witness = w;
                r.witness_degree = e;
                r.witness_field = name;
                return r;
            }
        }
        return r;
    }
}

} // namespace linesurf

#endif
