#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace subgeom {

/// Truncated multivariate Taylor number: value plus all partial derivatives
/// up to order 3 in at most kMaxVars independent variables.
///
/// Arithmetic and the elementary functions below propagate the derivatives
/// exactly (forward mode), so evaluating a chart on Taylor3 inputs gives
/// its third-order jet to rounding accuracy.
class Taylor3 {
public:
    static constexpr int kMaxVars = 4;

    Taylor3() = default;
    Taylor3(double value) : v_(value) {} // NOLINT: implicit lift of constants

    /// Independent variable `index` at `value` in an `nvars`-dimensional space.
    static Taylor3 variable(int nvars, int index, double value)
    {
        Taylor3 t(value);
        t.n_ = nvars;
        t.d1_[index] = 1.0;
        return t;
    }

    int nvars() const { return n_; }
    double value() const { return v_; }
    double d(int i) const { return d1_[i]; }
    double d(int i, int j) const { return d2_[i][j]; }
    double d(int i, int j, int k) const { return d3_[i][j][k]; }

    Taylor3 operator-() const
    {
        Taylor3 r = *this;
        r.scale(-1.0);
        return r;
    }

    Taylor3& operator+=(const Taylor3& o)
    {
        n_ = std::max(n_, o.n_);
        v_ += o.v_;
        for (int i = 0; i < n_; ++i) {
            d1_[i] += o.d1_[i];
            for (int j = 0; j < n_; ++j) {
                d2_[i][j] += o.d2_[i][j];
                for (int k = 0; k < n_; ++k) {
                    d3_[i][j][k] += o.d3_[i][j][k];
                }
            }
        }
        return *this;
    }
    Taylor3& operator-=(const Taylor3& o) { return *this += -o; }

    Taylor3& operator*=(const Taylor3& o)
    {
        *this = product(*this, o);
        return *this;
    }
    Taylor3& operator/=(const Taylor3& o)
    {
        *this = product(*this, o.reciprocal());
        return *this;
    }

    friend Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
    friend Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
    friend Taylor3 operator*(const Taylor3& a, const Taylor3& b) { return product(a, b); }
    friend Taylor3 operator/(const Taylor3& a, const Taylor3& b) { return product(a, b.reciprocal()); }

    /// Composition h(f) given h and its first three derivatives at f.value().
    Taylor3 compose(double h0, double h1, double h2, double h3) const
    {
        Taylor3 r(h0);
        r.n_ = n_;
        for (int i = 0; i < n_; ++i) {
            r.d1_[i] = h1 * d1_[i];
            for (int j = 0; j < n_; ++j) {
                r.d2_[i][j] = h2 * d1_[i] * d1_[j] + h1 * d2_[i][j];
                for (int k = 0; k < n_; ++k) {
                    r.d3_[i][j][k] = h3 * d1_[i] * d1_[j] * d1_[k] +
                                     h2 * (d2_[i][j] * d1_[k] + d2_[i][k] * d1_[j] +
                                           d2_[j][k] * d1_[i]) +
                                     h1 * d3_[i][j][k];
                }
            }
        }
        return r;
    }

private:
    static Taylor3 product(const Taylor3& a, const Taylor3& b)
    {
        Taylor3 r(a.v_ * b.v_);
        r.n_ = std::max(a.n_, b.n_);
        const int n = r.n_;
        for (int i = 0; i < n; ++i) {
            r.d1_[i] = a.d1_[i] * b.v_ + a.v_ * b.d1_[i];
            for (int j = 0; j < n; ++j) {
                r.d2_[i][j] = a.d2_[i][j] * b.v_ + a.d1_[i] * b.d1_[j] + a.d1_[j] * b.d1_[i] +
                              a.v_ * b.d2_[i][j];
                for (int k = 0; k < n; ++k) {
                    r.d3_[i][j][k] =
                        a.d3_[i][j][k] * b.v_ + a.d2_[i][j] * b.d1_[k] + a.d2_[i][k] * b.d1_[j] +
                        a.d2_[j][k] * b.d1_[i] + a.d1_[i] * b.d2_[j][k] + a.d1_[j] * b.d2_[i][k] +
                        a.d1_[k] * b.d2_[i][j] + a.v_ * b.d3_[i][j][k];
                }
            }
        }
        return r;
    }

    Taylor3 reciprocal() const
    {
        const double x = v_;
        return compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x));
    }

    void scale(double s)
    {
        v_ *= s;
        for (int i = 0; i < n_; ++i) {
            d1_[i] *= s;
            for (int j = 0; j < n_; ++j) {
                d2_[i][j] *= s;
                for (int k = 0; k < n_; ++k) {
                    d3_[i][j][k] *= s;
                }
            }
        }
    }

    int n_ = 0;
    double v_ = 0.0;
    std::array<double, kMaxVars> d1_{};
    std::array<std::array<double, kMaxVars>, kMaxVars> d2_{};
    std::array<std::array<std::array<double, kMaxVars>, kMaxVars>, kMaxVars> d3_{};
};

inline Taylor3 sin(const Taylor3& x)
{
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(s, c, -s, -c);
}

inline Taylor3 cos(const Taylor3& x)
{
    const double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(c, -s, -c, s);
}

inline Taylor3 sinh(const Taylor3& x)
{
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    return x.compose(s, c, s, c);
}

inline Taylor3 cosh(const Taylor3& x)
{
    const double s = std::sinh(x.value()), c = std::cosh(x.value());
    return x.compose(c, s, c, s);
}

inline Taylor3 exp(const Taylor3& x)
{
    const double e = std::exp(x.value());
    return x.compose(e, e, e, e);
}

inline Taylor3 log(const Taylor3& x)
{
    const double v = x.value();
    return x.compose(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

inline Taylor3 sqrt(const Taylor3& x)
{
    const double v = x.value();
    const double s = std::sqrt(v);
    return x.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

} // namespace subgeom
