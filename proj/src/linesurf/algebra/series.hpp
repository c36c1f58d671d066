#ifndef LINESURF_ALGEBRA_SERIES_HPP
#define LINESURF_ALGEBRA_SERIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "linesurf/error.hpp"

namespace linesurf {

// Result of an order query. When no coefficient up to the truncation is
// nonzero the order is only known to be at least N+1.
struct SeriesOrder {
    int value = 0;
    bool exact = true;

    std::string to_string() const { return exact ? std::to_string(value) : "at-least-" + std::to_string(value); }
    friend bool operator==(const SeriesOrder &, const SeriesOrder &) = default;
};

// Power series c_0 + c_1 u + ... + c_N u^N + O(u^(N+1)).
template <class F>
class Series {
public:
    using Elem = typename F::Elem;

    Series() = default;
    Series(F field, int N) : field_(std::move(field)), N_(N)
    {
        if (N < 0)
            fail(Errc::structural, "negative series truncation");
        c_.assign(static_cast<std::size_t>(N) + 1, field_.zero());
    }
    static Series from_coeffs(F field, int N, const std::vector<Elem> &coeffs)
    {
        Series s(std::move(field), N);
        for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(N); ++k)
            s.c_[k] = coeffs[k];
        return s;
    }
    static Series constant(F field, int N, Elem c)
    {
        Series s(std::move(field), N);
        s.c_[0] = std::move(c);
        return s;
    }
    // The series u (zero when N = 0).
    static Series variable(F field, int N)
    {
        Series s(std::move(field), N);
        if (N >= 1)
            s.c_[1] = s.field_.one();
        return s;
    }

    const F &field() const { return field_; }
    int truncation() const { return N_; }
    const Elem &coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    void set(int k, Elem e) { c_.at(static_cast<std::size_t>(k)) = std::move(e); }
    const std::vector<Elem> &coeffs() const { return c_; }

    Series operator+(const Series &o) const
    {
        check(o);
        Series r = *this;
        for (std::size_t k = 0; k < c_.size(); ++k)
            r.c_[k] = field_.add(c_[k], o.c_[k]);
        return r;
    }
    Series operator-(const Series &o) const
    {
        check(o);
        Series r = *this;
        for (std::size_t k = 0; k < c_.size(); ++k)
            r.c_[k] = field_.sub(c_[k], o.c_[k]);
        return r;
    }
    Series operator-() const
    {
        Series r = *this;
        for (auto &c : r.c_)
            c = field_.neg(c);
        return r;
    }
    Series operator*(const Series &o) const
    {
        check(o);
        Series r(field_, N_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (field_.is_zero(c_[i]))
                continue;
            for (std::size_t j = 0; i + j < c_.size(); ++j) {
                if (field_.is_zero(o.c_[j]))
                    continue;
                r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
            }
        }
        return r;
    }
    Series scale(const Elem &a) const
    {
        Series r = *this;
        for (auto &c : r.c_)
            c = field_.mul(c, a);
        return r;
    }
    // Multiplication by u^k.
    Series shift(int k) const
    {
        Series r(field_, N_);
        for (int i = 0; i + k <= N_; ++i)
            r.c_[static_cast<std::size_t>(i + k)] = c_[static_cast<std::size_t>(i)];
        return r;
    }
    // Same series viewed at a smaller or larger truncation (new slots are 0).
    Series retruncate(int N) const { return from_coeffs(field_, N, c_); }

    SeriesOrder order() const
    {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!field_.is_zero(c_[k]))
                return {static_cast<int>(k), true};
        return {N_ + 1, false};
    }
    bool is_zero() const { return !order().exact; }

    std::string to_string(const std::string &var = "u") const
    {
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (field_.is_zero(c_[k]))
                continue;
            if (!out.empty())
                out += " + ";
            out += "(" + field_.to_string(c_[k]) + ")";
            if (k > 0)
                out += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
        }
        if (out.empty())
            out = "0";
        return out + " + O(" + var + "^" + std::to_string(N_ + 1) + ")";
    }

private:
    void check(const Series &o) const
    {
        if (N_ != o.N_)
            fail(Errc::structural, "series truncations differ");
    }

    F field_{};
    int N_ = 0;
    std::vector<Elem> c_;
};

} // namespace linesurf

#endif
