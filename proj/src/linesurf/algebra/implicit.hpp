#ifndef LINESURF_ALGEBRA_IMPLICIT_HPP
#define LINESURF_ALGEBRA_IMPLICIT_HPP

#include <map>
#include <utility>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/algebra/series.hpp"
#include "linesurf/algebra/upoly.hpp"
#include "linesurf/error.hpp"

namespace linesurf {

// A polynomial in (x0, x1, x2, x3) read in the chart x0 = 1, x1 = s, x2 = u,
// x3 = v, grouped as sum over (b, c) of r_bc(s) u^b v^c.
template <class F>
using ChartExpansion = std::map<std::pair<int, int>, upoly::UPoly<F>>;

template <class F>
ChartExpansion<F> chart_expansion(const Poly<F> &f)
{
    if (f.nvars() != 4)
        fail(Errc::structural, "chart expansion expects 4 variables");
    const F &k = f.field();
    ChartExpansion<F> out;
    for (const auto &t : f.terms()) {
        auto &r = out[{t.mono.e[2], t.mono.e[3]}];
        const std::size_t a = t.mono.e[1];
        if (r.size() <= a)
            r.resize(a + 1, k.zero());
        r[a] = k.add(r[a], t.coeff);
    }
    for (auto it = out.begin(); it != out.end();) {
        upoly::trim(k, it->second);
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

// Sum over (b, c) of r_bc(s) u^b phi^c in K(s)[[u]] at phi's truncation.
// phi must have zero constant term, so only c <= N contributes.
template <class F>
Series<FuncField<F>> evaluate_on_graph(const ChartExpansion<F> &g, const Series<FuncField<F>> &phi)
{
    const auto &K = phi.field();
    const int N = phi.truncation();
    std::map<int, Series<FuncField<F>>> by_c;
    for (const auto &[bc, r] : g) {
        const auto [b, c] = bc;
        if (b > N || c > N)
            continue;
        auto it = by_c.try_emplace(c, K, N).first;
        auto cur = it->second.coeff(b);
        it->second.set(b, K.add(cur, K.from_poly(r)));
    }
    Series<FuncField<F>> acc(K, N);
    int prev = -1;
    for (auto it = by_c.rbegin(); it != by_c.rend(); ++it) {
        if (prev >= 0)
            for (int s = 0; s < prev - it->first; ++s)
                acc = acc * phi;
        acc = acc + it->second;
        prev = it->first;
    }
    for (int s = 0; s < prev; ++s)
        acc = acc * phi;
    return acc;
}

// Solves f(1, s, u, phi(s, u)) = 0 mod u^(N+1) with phi(s, 0) = 0, order by
// order. The first-order term is D(s) = df/dx3(1, s, 0, 0), which must be
// nonzero; each phi_k = -E_k / D, E_k the u^k coefficient of the residual.
template <class F>
Series<FuncField<F>> implicit_series_solve(const Poly<F> &f, int N)
{
    const auto g = chart_expansion(f);
    const FuncField<F> K(f.field(), "s");
    if (g.count({0, 0}))
        fail(Errc::precondition, "implicit_series_solve: f(1, s, 0, 0) is not identically zero");
    const auto dit = g.find({0, 1});
    if (dit == g.end())
        fail(Errc::precondition, "implicit_series_solve: df/dx3 vanishes identically along the line; "
                                 "permute or mix x2 and x3");
    const auto d_inv = K.inv(K.from_poly(dit->second));
    Series<FuncField<F>> phi(K, N);
    for (int k = 1; k <= N; ++k) {
        const auto residual = evaluate_on_graph(g, phi.retruncate(k));
        phi.set(k, K.neg(K.mul(residual.coeff(k), d_inv)));
    }
    return phi;
}

} // namespace linesurf

#endif
