// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief truncated bivariate Taylor jets

    A Jet2 carries the value and all partial derivatives of a scalar function f(u, v) up to a total order of at most
    four. Coefficients are raw partials, coeff(i, j) = d^(i+j) f / du^i dv^j at the base point; they are not divided
    by factorials. Multiplication applies the bivariate Leibniz rule with binomial weights, so no conversion to and
    from normalized Taylor coefficients is needed.
*/
#pragma once

#include "minsurf/error.hpp"

#include <array>
#include <cmath>
#include <string>

namespace minsurf {

enum class Variable
{
    u,
    v
};

class Jet2
{
public:
    static constexpr int max_order = 4;
    static constexpr int max_size = (max_order + 1) * (max_order + 2) / 2;

    constexpr Jet2() noexcept = default;

    /// constant jet; every derivative vanishes
    static Jet2 constant(double value, int order)
    {
        check_order(order);
        Jet2 j;
        j.order_ = order;
        j.c_[0] = value;
        return j;
    }

    /// coordinate jet for u or v at the given base value
    static Jet2 seed(Variable which, double value, int order)
    {
        Jet2 j = constant(value, order);
        if (order >= 1) j.c_[which == Variable::u ? index(1, 0) : index(0, 1)] = 1.0;
        return j;
    }

    constexpr int order() const noexcept { return order_; }
    constexpr double value() const noexcept { return c_[0]; }
    static constexpr int size_for(int order) noexcept { return (order + 1) * (order + 2) / 2; }
    constexpr int size() const noexcept { return size_for(order_); }

    /// raw partial d^(i+j)/du^i dv^j; zero beyond the truncation order
    constexpr double coeff(int i, int j) const noexcept
    {
        if (i < 0 || j < 0 || i + j > order_) return 0.0;
        return c_[index(i, j)];
    }

    void set_coeff(int i, int j, double x)
    {
        if (i < 0 || j < 0 || i + j > order_) throw usage_error("Jet2::set_coeff: index beyond jet order");
        c_[index(i, j)] = x;
    }

    bool is_finite() const noexcept
    {
        for (int k = 0; k < size(); ++k)
            if (!std::isfinite(c_[k])) return false;
        return true;
    }

    // ----------------------------------------------------------------------------------------------------------------
    // arithmetic
    // ----------------------------------------------------------------------------------------------------------------

    Jet2& operator+=(Jet2 const& rhs)
    {
        require_same_order(rhs, "+");
        for (int k = 0; k < size(); ++k) c_[k] += rhs.c_[k];
        return *this;
    }

    Jet2& operator-=(Jet2 const& rhs)
    {
        require_same_order(rhs, "-");
        for (int k = 0; k < size(); ++k) c_[k] -= rhs.c_[k];
        return *this;
    }

    Jet2& operator*=(double s) noexcept
    {
        for (int k = 0; k < size(); ++k) c_[k] *= s;
        return *this;
    }

    Jet2& operator/=(double s)
    {
        if (s == 0.0) throw singularity_error("Jet2: division by zero scalar");
        return *this *= 1.0 / s;
    }

    Jet2& operator+=(double s) noexcept
    {
        c_[0] += s;
        return *this;
    }

    Jet2& operator-=(double s) noexcept
    {
        c_[0] -= s;
        return *this;
    }

    Jet2& operator*=(Jet2 const& rhs) { return *this = *this * rhs; }
    Jet2& operator/=(Jet2 const& rhs) { return *this = *this / rhs; }

    Jet2 operator-() const noexcept
    {
        Jet2 r = *this;
        for (int k = 0; k < size(); ++k) r.c_[k] = -r.c_[k];
        return r;
    }

    friend Jet2 operator+(Jet2 a, Jet2 const& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, Jet2 const& b) { return a -= b; }
    friend Jet2 operator+(Jet2 a, double s) noexcept { return a += s; }
    friend Jet2 operator+(double s, Jet2 a) noexcept { return a += s; }
    friend Jet2 operator-(Jet2 a, double s) noexcept { return a -= s; }
    friend Jet2 operator-(double s, Jet2 const& a) noexcept { return (-a) += s; }
    friend Jet2 operator*(Jet2 a, double s) noexcept { return a *= s; }
    friend Jet2 operator*(double s, Jet2 a) noexcept { return a *= s; }
    friend Jet2 operator/(Jet2 a, double s) { return a /= s; }

    friend Jet2 operator*(Jet2 const& a, Jet2 const& b)
    {
        a.require_same_order(b, "*");
        Jet2 r;
        r.order_ = a.order_;
        for (int d = 0; d <= a.order_; ++d) {
            for (int i = d, j = 0; j <= d; --i, ++j) {
                double acc = 0.0;
                for (int p = 0; p <= i; ++p)
                    for (int q = 0; q <= j; ++q)
                        acc += binomial(i, p) * binomial(j, q) * a.c_[index(p, q)] * b.c_[index(i - p, j - q)];
                r.c_[index(i, j)] = acc;
            }
        }
        return r;
    }

    friend Jet2 operator/(Jet2 const& f, Jet2 const& g)
    {
        f.require_same_order(g, "/");
        double const g0 = g.c_[0];
        if (g0 == 0.0) throw singularity_error("Jet2: division by a jet with zero value");
        Jet2 q;
        q.order_ = f.order_;
        for (int d = 0; d <= f.order_; ++d) {
            for (int i = d, j = 0; j <= d; --i, ++j) {
                double acc = f.c_[index(i, j)];
                for (int p = 0; p <= i; ++p)
                    for (int r = 0; r <= j; ++r) {
                        if (p == i && r == j) continue;
                        acc -= binomial(i, p) * binomial(j, r) * q.c_[index(p, r)] * g.c_[index(i - p, j - r)];
                    }
                q.c_[index(i, j)] = acc / g0;
            }
        }
        return q;
    }

    friend Jet2 operator/(double s, Jet2 const& g) { return constant(s, g.order_) / g; }

    /// coefficient-wise maximum absolute difference; orders must agree
    friend double max_abs_diff(Jet2 const& a, Jet2 const& b)
    {
        a.require_same_order(b, "max_abs_diff");
        double m = 0.0;
        for (int k = 0; k < a.size(); ++k) m = std::fmax(m, std::fabs(a.c_[k] - b.c_[k]));
        return m;
    }

    // ----------------------------------------------------------------------------------------------------------------
    // order changes
    // ----------------------------------------------------------------------------------------------------------------

    /// d/du or d/dv; the result has one order less
    friend Jet2 partial(Jet2 const& a, Variable which)
    {
        if (a.order_ == 0) throw usage_error("Jet2::partial: cannot differentiate an order-0 jet");
        Jet2 r;
        r.order_ = a.order_ - 1;
        for (int d = 0; d <= r.order_; ++d)
            for (int i = d, j = 0; j <= d; --i, ++j)
                r.c_[index(i, j)] = which == Variable::u ? a.c_[index(i + 1, j)] : a.c_[index(i, j + 1)];
        return r;
    }

    friend Jet2 truncate(Jet2 const& a, int order)
    {
        if (order < 0 || order > a.order_) throw usage_error("Jet2::truncate: target order out of range");
        Jet2 r;
        r.order_ = order;
        for (int k = 0; k < size_for(order); ++k) r.c_[k] = a.c_[k];
        return r;
    }

    // ----------------------------------------------------------------------------------------------------------------
    // composition with univariate functions
    // ----------------------------------------------------------------------------------------------------------------

    /// f(a) given f^(k)(a.value()) for k = 0..a.order(); exact through the truncation order
    template <typename Derivatives> friend Jet2 compose(Jet2 const& a, Derivatives const& derivs)
    {
        Jet2 delta = a;
        delta.c_[0] = 0.0;
        Jet2 power = constant(1.0, a.order_);
        Jet2 r = constant(derivs[0], a.order_);
        double factorial = 1.0;
        for (int k = 1; k <= a.order_; ++k) {
            power = power * delta;
            factorial *= k;
            Jet2 term = power;
            term *= derivs[k] / factorial;
            r += term;
        }
        return r;
    }

    static constexpr double binomial(int n, int k) noexcept
    {
        constexpr double table[max_order + 1][max_order + 1] = {
            {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
        return table[n][k];
    }

private:
    static constexpr int index(int i, int j) noexcept
    {
        int const d = i + j;
        return d * (d + 1) / 2 + j;
    }

    static void check_order(int order)
    {
        if (order < 0 || order > max_order)
            throw config_error("Jet2: order " + std::to_string(order) + " outside [0, " +
                               std::to_string(max_order) + "]");
    }

    void require_same_order(Jet2 const& other, char const* op) const
    {
        if (order_ != other.order_)
            throw usage_error(std::string("Jet2: order mismatch in ") + op + " (" + std::to_string(order_) + " vs " +
                              std::to_string(other.order_) + ")");
    }

    int order_ = 0;
    std::array<double, max_size> c_{};
};

inline Jet2 seed_variable(Variable which, double value, int order) { return Jet2::seed(which, value, order); }

inline Jet2 scale(Jet2 a, double c) noexcept { return a *= c; }

inline Jet2 sin(Jet2 const& a)
{
    double const s = std::sin(a.value()), c = std::cos(a.value());
    std::array<double, Jet2::max_order + 1> const d{s, c, -s, -c, s};
    return compose(a, d);
}

inline Jet2 cos(Jet2 const& a)
{
    double const s = std::sin(a.value()), c = std::cos(a.value());
    std::array<double, Jet2::max_order + 1> const d{c, -s, -c, s, c};
    return compose(a, d);
}

inline Jet2 exp(Jet2 const& a)
{
    double const e = std::exp(a.value());
    std::array<double, Jet2::max_order + 1> const d{e, e, e, e, e};
    return compose(a, d);
}

inline Jet2 sqrt(Jet2 const& a)
{
    double const x = a.value();
    if (!(x > 0.0)) throw singularity_error("Jet2: sqrt of nonpositive value " + std::to_string(x));
    std::array<double, Jet2::max_order + 1> d{};
    double coef = 1.0, expo = 0.5;
    for (int k = 0; k <= Jet2::max_order; ++k) {
        d[k] = coef * std::pow(x, expo);
        coef *= expo;
        expo -= 1.0;
    }
    return compose(a, d);
}

/// integer power; negative exponents require a nonzero value
inline Jet2 powi(Jet2 const& a, int n)
{
    double const x = a.value();
    if (n < 0 && x == 0.0) throw singularity_error("Jet2: negative power of a jet with zero value");
    std::array<double, Jet2::max_order + 1> d{};
    double falling = 1.0;
    for (int k = 0; k <= Jet2::max_order; ++k) {
        int const e = n - k;
        // falling factorial n(n-1)...(n-k+1) vanishes once k > n >= 0
        d[k] = falling == 0.0 ? 0.0 : falling * std::pow(x, e);
        falling *= static_cast<double>(n - k);
    }
    return compose(a, d);
}

enum class UnaryFunction
{
    sin,
    cos,
    sqrt,
    exp,
    powi
};

inline Jet2 apply_unary(UnaryFunction f, Jet2 const& a, int exponent = 2)
{
    switch (f) {
    case UnaryFunction::sin: return sin(a);
    case UnaryFunction::cos: return cos(a);
    case UnaryFunction::sqrt: return sqrt(a);
    case UnaryFunction::exp: return exp(a);
    case UnaryFunction::powi: return powi(a, exponent);
    }
    throw usage_error("apply_unary: unknown function");
}

} // namespace minsurf
