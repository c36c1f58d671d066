#ifndef LINESURF_TANGENT_SURFACE_HPP
#define LINESURF_TANGENT_SURFACE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "linesurf/algebra/parse.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/error.hpp"
#include "linesurf/projgeom/projgeom.hpp"

namespace linesurf {

enum class SmoothStatus { AssumedSmooth, ProbedSmooth, Unknown };

inline std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Surface X = V(f) in P^3, f homogeneous of degree d >= 3. Partial
// derivatives up to order three are computed once and shared.
template <class F>
class Surface {
public:
    using Elem = typename F::Elem;

    Surface() = default;
    explicit Surface(Poly<F> f)
    {
        if (f.nvars() != 4)
            fail(Errc::structural, "a surface equation must use exactly the variables x0..x3");
        if (f.is_zero())
            fail(Errc::degenerate, "the zero polynomial does not define a surface");
        if (!f.is_homogeneous())
            fail(Errc::precondition, "surface equation is not homogeneous");
        if (f.total_degree() < 3)
            fail(Errc::precondition, "surface degree must be at least 3, got " + std::to_string(f.total_degree()));
        auto d = std::make_shared<Data>();
        d->f = std::move(f);
        for (int i = 0; i < 4; ++i)
            d->d1[static_cast<std::size_t>(i)] = d->f.derivative(i);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                d->d2[static_cast<std::size_t>(i * 4 + j)] = d->d1[static_cast<std::size_t>(i)].derivative(j);
        for (int i = 0; i < 16; ++i)
            for (int k = 0; k < 4; ++k)
                d->d3[static_cast<std::size_t>(i * 4 + k)] = d->d2[static_cast<std::size_t>(i)].derivative(k);
        data_ = std::move(d);
    }

    const Poly<F> &f() const { return data_->f; }
    const F &field() const { return data_->f.field(); }
    int degree() const { return data_->f.total_degree(); }
    const Poly<F> &d1(int i) const { return data_->d1[static_cast<std::size_t>(i)]; }
    const Poly<F> &d2(int i, int j) const { return data_->d2[static_cast<std::size_t>(i * 4 + j)]; }
    const Poly<F> &d3(int i, int j, int k) const { return data_->d3[static_cast<std::size_t>((i * 4 + j) * 4 + k)]; }

    // Characteristic 0 or p > d.
    bool char_gate() const
    {
        const auto p = field().characteristic();
        return p == 0 || p > static_cast<std::uint64_t>(degree());
    }
    void require_char_gate(const std::string &op) const
    {
        if (!char_gate())
            fail(Errc::char_gate, op + " requires characteristic 0 or p > d; got (p, d) = (" +
                                      std::to_string(field().characteristic()) + ", " + std::to_string(degree()) + ")");
    }

    SmoothStatus smooth_status() const { return status_; }
    int probed_degree() const { return probed_k_; }
    void set_smooth_status(SmoothStatus s, int k = 0)
    {
        status_ = s;
        probed_k_ = k;
    }

    Elem eval(const Vec4<F> &x) const { return f().eval(std::span<const Elem>(x)); }
    bool contains(const Vec4<F> &x) const { return field().is_zero(eval(x)); }

    std::string equation() const { return f().to_string(default_variable_names(4)); }
    std::uint64_t hash() const { return fnv1a64(field().name() + "|" + equation()); }

    // The same equation over a field containing F.
    template <class G, class Embed>
    Surface<G> embed(const G &g, Embed &&emb) const
    {
        return Surface<G>(f().map_coeffs(g, emb));
    }

private:
    struct Data {
        Poly<F> f;
        std::array<Poly<F>, 4> d1;
        std::array<Poly<F>, 16> d2;
        std::array<Poly<F>, 64> d3;
    };
    std::shared_ptr<const Data> data_;
    SmoothStatus status_ = SmoothStatus::Unknown;
    int probed_k_ = 0;
};

// All points of X over its (finite) field.
template <class F>
std::vector<Vec4<F>> surface_points(const Surface<F> &X)
{
    std::vector<Vec4<F>> out;
    all_points(X.field(), [&](const Vec4<F> &x) {
        if (X.contains(x))
            out.push_back(x);
    });
    return out;
}

} // namespace linesurf

#endif
