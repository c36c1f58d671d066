#ifndef LINESURF_PROJGEOM_PROJGEOM_HPP
#define LINESURF_PROJGEOM_PROJGEOM_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linesurf/algebra/fields.hpp"
#include "linesurf/algebra/poly.hpp"
#include "linesurf/error.hpp"

namespace linesurf {

template <class F>
using Vec4 = std::array<typename F::Elem, 4>;

template <class F>
using Plucker = std::array<typename F::Elem, 6>;

// Scales v so that its first nonzero entry is 1; nullopt for the zero vector.
template <class F, std::size_t N>
std::optional<std::array<typename F::Elem, N>> normalize_projective(const F &f, std::array<typename F::Elem, N> v)
{
    for (std::size_t i = 0; i < N; ++i) {
        if (f.is_zero(v[i]))
            continue;
        const auto inv = f.inv(v[i]);
        for (std::size_t j = i; j < N; ++j)
            v[j] = f.mul(v[j], inv);
        return v;
    }
    return std::nullopt;
}

template <class F, std::size_t N>
bool vec_equal(const F &f, const std::array<typename F::Elem, N> &a, const std::array<typename F::Elem, N> &b)
{
    for (std::size_t i = 0; i < N; ++i)
        if (!f.eq(a[i], b[i]))
            return false;
    return true;
}

template <class F, std::size_t N>
bool vec_less(const F &f, const std::array<typename F::Elem, N> &a, const std::array<typename F::Elem, N> &b)
{
    for (std::size_t i = 0; i < N; ++i) {
        if (f.less(a[i], b[i]))
            return true;
        if (f.less(b[i], a[i]))
            return false;
    }
    return false;
}

template <class F, std::size_t N>
std::string vec_to_string(const F &f, const std::array<typename F::Elem, N> &v, const char *sep = ":")
{
    std::string s = "(";
    for (std::size_t i = 0; i < N; ++i)
        s += (i ? sep : "") + f.to_string(v[i]);
    return s + ")";
}

template <class F>
class ProjPoint {
public:
    using Elem = typename F::Elem;

    ProjPoint() = default;
    ProjPoint(F field, Vec4<F> coords) : field_(std::move(field))
    {
        auto n = normalize_projective(field_, std::move(coords));
        if (!n)
            fail(Errc::degenerate, "the zero vector is not a projective point");
        c_ = std::move(*n);
    }

    const F &field() const { return field_; }
    const Vec4<F> &coords() const { return c_; }
    const Elem &operator[](std::size_t i) const { return c_[i]; }
    bool operator==(const ProjPoint &o) const { return vec_equal(field_, c_, o.c_); }
    std::string to_string() const { return vec_to_string(field_, c_); }

private:
    F field_{};
    Vec4<F> c_{};
};

template <class F>
Plucker<F> plucker_of(const F &f, const Vec4<F> &a, const Vec4<F> &b)
{
    auto p = [&](int i, int j) {
        return f.sub(f.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]),
                     f.mul(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(i)]));
    };
    return {p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3)};
}

// The bilinear pairing whose vanishing means two lines meet.
template <class F>
typename F::Elem plucker_pairing(const F &f, const Plucker<F> &p, const Plucker<F> &q)
{
    auto t = [&](int i, int j) { return f.mul(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]); };
    auto s = f.add(t(0, 5), t(5, 0));
    s = f.sub(s, f.add(t(1, 4), t(4, 1)));
    return f.add(s, f.add(t(2, 3), t(3, 2)));
}

template <class F>
typename F::Elem plucker_quadric(const F &f, const Plucker<F> &p)
{
    return f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]));
}

// Line of P^3 stored as the reduced row-echelon form of a 2x4 spanning
// matrix together with its normalized Plucker vector
// (p01, p02, p03, p12, p13, p23), pij = a_i b_j - a_j b_i.
template <class F>
class LineP3 {
public:
    using Elem = typename F::Elem;

    LineP3() = default;

    static LineP3 through(const F &f, const Vec4<F> &a, const Vec4<F> &b)
    {
        std::array<Vec4<F>, 2> m{a, b};
        int rank = 0;
        std::array<int, 2> piv{-1, -1};
        for (int col = 0; col < 4 && rank < 2; ++col) {
            int r = -1;
            for (int i = rank; i < 2; ++i)
                if (!f.is_zero(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)])) {
                    r = i;
                    break;
                }
            if (r < 0)
                continue;
            std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(rank)]);
            auto &row = m[static_cast<std::size_t>(rank)];
            const auto inv = f.inv(row[static_cast<std::size_t>(col)]);
            for (auto &x : row)
                x = f.mul(x, inv);
            for (int i = 0; i < 2; ++i) {
                if (i == rank)
                    continue;
                auto &other = m[static_cast<std::size_t>(i)];
                const auto c = other[static_cast<std::size_t>(col)];
                if (f.is_zero(c))
                    continue;
                for (std::size_t j = 0; j < 4; ++j)
                    other[j] = f.sub(other[j], f.mul(c, row[j]));
            }
            piv[static_cast<std::size_t>(rank)] = col;
            ++rank;
        }
        if (rank < 2)
            fail(Errc::degenerate, "points do not span a line");
        LineP3 l;
        l.field_ = f;
        l.rows_ = m;
        l.pivots_ = piv;
        l.plucker_ = *normalize_projective(f, plucker_of(f, m[0], m[1]));
        if (!f.is_zero(plucker_quadric(f, l.plucker_)))
            fail(Errc::inconsistent, "Plucker quadric violated");
        return l;
    }
    static LineP3 through(const ProjPoint<F> &a, const ProjPoint<F> &b) { return through(a.field(), a.coords(), b.coords()); }

    // Inverse of plucker(): two columns of the skew matrix a b^T - b a^T.
    static LineP3 from_plucker(const F &f, const Plucker<F> &p)
    {
        if (!f.is_zero(plucker_quadric(f, p)))
            fail(Errc::degenerate, "vector does not lie on the Plucker quadric");
        std::array<std::array<Elem, 4>, 4> s;
        for (auto &row : s)
            row.fill(f.zero());
        const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j)
                    continue;
                const auto &v = p[static_cast<std::size_t>(idx[i][j])];
                s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = i < j ? v : f.neg(v);
            }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                if (f.is_zero(p[static_cast<std::size_t>(idx[i][j])]))
                    continue;
                Vec4<F> a, b;
                for (std::size_t k = 0; k < 4; ++k) {
                    a[k] = s[k][static_cast<std::size_t>(i)];
                    b[k] = s[k][static_cast<std::size_t>(j)];
                }
                return through(f, a, b);
            }
        fail(Errc::degenerate, "zero Plucker vector");
    }

    const F &field() const { return field_; }
    const std::array<Vec4<F>, 2> &rows() const { return rows_; }
    const std::array<int, 2> &pivots() const { return pivots_; }
    const Plucker<F> &plucker() const { return plucker_; }

    // The point rows[0] * s0 + rows[1] * s1.
    Vec4<F> point(const Elem &s0, const Elem &s1) const
    {
        Vec4<F> r;
        for (std::size_t i = 0; i < 4; ++i)
            r[i] = field_.add(field_.mul(s0, rows_[0][i]), field_.mul(s1, rows_[1][i]));
        return r;
    }
    // Parameter (s0 : s1) of a point on the line, if it lies on it.
    std::optional<std::array<Elem, 2>> parameter_of(const Vec4<F> &x) const
    {
        std::array<Elem, 2> s{x[static_cast<std::size_t>(pivots_[0])], x[static_cast<std::size_t>(pivots_[1])]};
        const auto y = point(s[0], s[1]);
        if (!vec_equal(field_, y, x) || (field_.is_zero(s[0]) && field_.is_zero(s[1])))
            return std::nullopt;
        return s;
    }
    bool contains(const Vec4<F> &x) const { return parameter_of(x).has_value(); }

    bool operator==(const LineP3 &o) const { return vec_equal(field_, plucker_, o.plucker_); }
    bool operator<(const LineP3 &o) const { return vec_less(field_, plucker_, o.plucker_); }
    std::string to_string() const { return vec_to_string(field_, plucker_, ","); }

private:
    F field_{};
    std::array<Vec4<F>, 2> rows_{};
    std::array<int, 2> pivots_{};
    Plucker<F> plucker_{};
};

template <class F>
LineP3<F> line_from_points(const ProjPoint<F> &a, const ProjPoint<F> &b)
{
    if (a == b)
        fail(Errc::degenerate, "line_from_points: the two points coincide");
    return LineP3<F>::through(a, b);
}

template <class F>
bool lines_meet(const LineP3<F> &a, const LineP3<F> &b)
{
    return a.field().is_zero(plucker_pairing(a.field(), a.plucker(), b.plucker()));
}

template <class F>
class PlaneP3 {
public:
    using Elem = typename F::Elem;

    PlaneP3() = default;
    PlaneP3(F field, Vec4<F> form) : field_(std::move(field))
    {
        auto n = normalize_projective(field_, std::move(form));
        if (!n)
            fail(Errc::degenerate, "zero linear form");
        form_ = std::move(*n);
    }

    const F &field() const { return field_; }
    const Vec4<F> &form() const { return form_; }
    Elem eval(const Vec4<F> &x) const
    {
        auto s = field_.zero();
        for (std::size_t i = 0; i < 4; ++i)
            s = field_.add(s, field_.mul(form_[i], x[i]));
        return s;
    }
    bool contains(const Vec4<F> &x) const { return field_.is_zero(eval(x)); }
    bool contains(const LineP3<F> &l) const { return contains(l.rows()[0]) && contains(l.rows()[1]); }
    bool operator==(const PlaneP3 &o) const { return vec_equal(field_, form_, o.form_); }
    bool operator<(const PlaneP3 &o) const { return vec_less(field_, form_, o.form_); }
    std::string to_string() const { return vec_to_string(field_, form_, ","); }

private:
    F field_{};
    Vec4<F> form_{};
};

// Row reduction in place; returns pivot columns.
template <class F>
std::vector<int> row_reduce(const F &f, std::vector<std::vector<typename F::Elem>> &m)
{
    std::vector<int> piv;
    if (m.empty())
        return piv;
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t r = rank;
        while (r < m.size() && f.is_zero(m[r][col]))
            ++r;
        if (r == m.size())
            continue;
        std::swap(m[r], m[rank]);
        const auto inv = f.inv(m[rank][col]);
        for (auto &x : m[rank])
            x = f.mul(x, inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || f.is_zero(m[i][col]))
                continue;
            const auto c = m[i][col];
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = f.sub(m[i][j], f.mul(c, m[rank][j]));
        }
        piv.push_back(static_cast<int>(col));
        ++rank;
    }
    m.resize(rank);
    return piv;
}

// Basis of the kernel {x : m x = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> nullspace(const F &f, std::vector<std::vector<typename F::Elem>> m, std::size_t cols)
{
    const auto piv = row_reduce(f, m);
    std::vector<bool> is_piv(cols, false);
    for (int p : piv)
        is_piv[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<typename F::Elem>> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free])
            continue;
        std::vector<typename F::Elem> v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[static_cast<std::size_t>(piv[r])] = f.neg(m[r][free]);
        out.push_back(std::move(v));
    }
    return out;
}

// Plane containing two distinct meeting lines.
template <class F>
PlaneP3<F> plane_through(const LineP3<F> &a, const LineP3<F> &b)
{
    const F &f = a.field();
    if (a == b || !lines_meet(a, b))
        fail(Errc::degenerate, "plane_through needs two distinct meeting lines");
    std::vector<std::vector<typename F::Elem>> m;
    for (const auto &r : a.rows())
        m.emplace_back(r.begin(), r.end());
    for (const auto &r : b.rows())
        m.emplace_back(r.begin(), r.end());
    auto ker = nullspace(f, m, 4);
    if (ker.size() != 1)
        fail(Errc::inconsistent, "meeting lines do not span a unique plane");
    Vec4<F> form;
    for (std::size_t i = 0; i < 4; ++i)
        form[i] = ker[0][i];
    return PlaneP3<F>(f, form);
}

template <class F>
Matrix<F> invert_matrix(const F &f, const Matrix<F> &m)
{
    const std::size_t n = m.size();
    std::vector<std::vector<typename F::Elem>> aug(n, std::vector<typename F::Elem>(2 * n, f.zero()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = m[i][j];
        aug[i][n + i] = f.one();
    }
    const auto piv = row_reduce(f, aug);
    if (piv.size() != n || piv.back() != static_cast<int>(n) - 1)
        fail(Errc::degenerate, "matrix is not invertible");
    Matrix<F> inv(n, std::vector<typename F::Elem>(n, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = aug[i][n + j];
    return inv;
}

template <class F>
Matrix<F> matrix_mul(const F &f, const Matrix<F> &a, const Matrix<F> &b)
{
    Matrix<F> r(a.size(), std::vector<typename F::Elem>(b.front().size(), f.zero()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (f.is_zero(a[i][k]))
                continue;
            for (std::size_t j = 0; j < b[k].size(); ++j)
                r[i][j] = f.add(r[i][j], f.mul(a[i][k], b[k][j]));
        }
    return r;
}

template <class F>
Vec4<F> matrix_apply(const F &f, const Matrix<F> &m, const Vec4<F> &y)
{
    Vec4<F> x;
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = f.zero();
        for (std::size_t j = 0; j < 4; ++j)
            x[i] = f.add(x[i], f.mul(m[i][j], y[j]));
    }
    return x;
}

// Change of coordinates x = M y with M e0, M e1 spanning L: columns are
// the echelon rows of L followed by the unit vectors of the two non-pivot
// coordinates. Substituting f(M y) puts L at {y2 = y3 = 0}.
template <class F>
struct LineFrame {
    Matrix<F> M;
    Matrix<F> inverse;
};

template <class F>
LineFrame<F> standardize_line(const LineP3<F> &l)
{
    const F &f = l.field();
    Matrix<F> m(4, std::vector<typename F::Elem>(4, f.zero()));
    for (std::size_t i = 0; i < 4; ++i) {
        m[i][0] = l.rows()[0][i];
        m[i][1] = l.rows()[1][i];
    }
    std::size_t col = 2;
    for (int i = 0; i < 4; ++i) {
        if (i == l.pivots()[0] || i == l.pivots()[1])
            continue;
        m[static_cast<std::size_t>(i)][col++] = f.one();
    }
    return {m, invert_matrix(f, m)};
}

// The six echelon shapes of a rank-2 2x4 matrix, keyed by pivot columns.
// Free entries are the non-pivot positions to the right of each pivot.
struct EchelonShape {
    int p0, p1;
    std::vector<int> free0; // free columns of row 0
    std::vector<int> free1; // free columns of row 1
};

inline const std::vector<EchelonShape> &echelon_shapes()
{
    static const std::vector<EchelonShape> shapes = [] {
        std::vector<EchelonShape> out;
        for (int p0 = 0; p0 < 4; ++p0)
            for (int p1 = p0 + 1; p1 < 4; ++p1) {
                EchelonShape s{p0, p1, {}, {}};
                for (int c = p0 + 1; c < 4; ++c)
                    if (c != p1)
                        s.free0.push_back(c);
                for (int c = p1 + 1; c < 4; ++c)
                    s.free1.push_back(c);
                out.push_back(std::move(s));
            }
        return out;
    }();
    return shapes;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

// Rows of the echelon matrix with the given shape; i0 and i1 index the free
// entries of each row in base q.
template <class F>
std::array<Vec4<F>, 2> echelon_rows(const F &f, const EchelonShape &s, std::uint64_t i0, std::uint64_t i1)
{
    const std::uint64_t q = f.cardinality();
    std::array<Vec4<F>, 2> r;
    r[0].fill(f.zero());
    r[1].fill(f.zero());
    r[0][static_cast<std::size_t>(s.p0)] = f.one();
    r[1][static_cast<std::size_t>(s.p1)] = f.one();
    for (int c : s.free0) {
        r[0][static_cast<std::size_t>(c)] = f.element(i0 % q);
        i0 /= q;
    }
    for (int c : s.free1) {
        r[1][static_cast<std::size_t>(c)] = f.element(i1 % q);
        i1 /= q;
    }
    return r;
}

// Visits every point of P^3 over a finite field once, normalized.
template <class F, class Fn>
void all_points(const F &f, Fn &&fn)
{
    if constexpr (!is_finite_field_v<F>) {
        fail(Errc::unsupported, "all_points requires a finite field");
    } else {
    const std::uint64_t q = f.cardinality();
    for (int lead = 0; lead < 4; ++lead) {
        const std::uint64_t n = ipow(q, static_cast<std::size_t>(3 - lead));
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            Vec4<F> x;
            x.fill(f.zero());
            x[static_cast<std::size_t>(lead)] = f.one();
            std::uint64_t t = idx;
            for (int j = lead + 1; j < 4; ++j) {
                x[static_cast<std::size_t>(j)] = f.element(t % q);
                t /= q;
            }
            fn(x);
        }
    }
    }
}

inline std::uint64_t count_lines(std::uint64_t q)
{
    return (q * q + 1) * (q * q + q + 1);
}

// Visits every line of P^3 over a finite field exactly once.
template <class F, class Fn>
void all_lines(const F &f, Fn &&fn)
{
    if constexpr (!is_finite_field_v<F>) {
        fail(Errc::unsupported, "all_lines requires a finite field");
    } else {
    const std::uint64_t q = f.cardinality();
    for (const auto &s : echelon_shapes()) {
        const std::uint64_t n0 = ipow(q, s.free0.size()), n1 = ipow(q, s.free1.size());
        for (std::uint64_t i0 = 0; i0 < n0; ++i0)
            for (std::uint64_t i1 = 0; i1 < n1; ++i1) {
                const auto r = echelon_rows(f, s, i0, i1);
                fn(LineP3<F>::through(f, r[0], r[1]));
            }
    }
    }
}

} // namespace linesurf

#endif
