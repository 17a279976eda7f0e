#pragma once

// Second-order forward-mode differentiation over at most kMaxParams chart
// parameters. Closed-form chart maps are written over Taylor2 and evaluated
// once to obtain value, gradient and Hessian together.

#include <array>
#include <cmath>

namespace affcurv {

inline constexpr int kMaxParams = 4;
inline constexpr int kMaxPairs = kMaxParams * (kMaxParams + 1) / 2;

struct Taylor2 {
    double v = 0.0;
    std::array<double, kMaxParams> g{};
    std::array<double, kMaxPairs> h{};  // upper triangle, row-major

    Taylor2() = default;
    Taylor2(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Taylor2 variable(double value, int index) {
        Taylor2 t(value);
        t.g[index] = 1.0;
        return t;
    }

    double hess(int i, int j) const { return h[pair(i, j)]; }

    static constexpr int pair(int i, int j) {
        if (i > j) {
            int t = i;
            i = j;
            j = t;
        }
        return i * kMaxParams - i * (i - 1) / 2 + (j - i);
    }

    Taylor2& operator+=(const Taylor2& o) { return *this = *this + o; }
    Taylor2& operator-=(const Taylor2& o) { return *this = *this - o; }
    Taylor2& operator*=(const Taylor2& o) { return *this = *this * o; }
    Taylor2& operator/=(const Taylor2& o) { return *this = *this / o; }

    friend Taylor2 operator+(const Taylor2& a, const Taylor2& b) {
        Taylor2 r(a.v + b.v);
        for (int i = 0; i < kMaxParams; ++i) r.g[i] = a.g[i] + b.g[i];
        for (int k = 0; k < kMaxPairs; ++k) r.h[k] = a.h[k] + b.h[k];
        return r;
    }

    friend Taylor2 operator-(const Taylor2& a, const Taylor2& b) {
        Taylor2 r(a.v - b.v);
        for (int i = 0; i < kMaxParams; ++i) r.g[i] = a.g[i] - b.g[i];
        for (int k = 0; k < kMaxPairs; ++k) r.h[k] = a.h[k] - b.h[k];
        return r;
    }

    friend Taylor2 operator-(const Taylor2& a) {
        Taylor2 r(-a.v);
        for (int i = 0; i < kMaxParams; ++i) r.g[i] = -a.g[i];
        for (int k = 0; k < kMaxPairs; ++k) r.h[k] = -a.h[k];
        return r;
    }

    friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
        Taylor2 r(a.v * b.v);
        for (int i = 0; i < kMaxParams; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int i = 0; i < kMaxParams; ++i) {
            for (int j = i; j < kMaxParams; ++j) {
                const int k = pair(i, j);
                r.h[k] = a.h[k] * b.v + a.v * b.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
            }
        }
        return r;
    }

    friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return a * reciprocal(b); }

    // Applies a scalar function given its value and first two derivatives at a.v.
    static Taylor2 chain(const Taylor2& a, double f0, double f1, double f2) {
        Taylor2 r(f0);
        for (int i = 0; i < kMaxParams; ++i) r.g[i] = f1 * a.g[i];
        for (int i = 0; i < kMaxParams; ++i) {
            for (int j = i; j < kMaxParams; ++j) {
                const int k = pair(i, j);
                r.h[k] = f1 * a.h[k] + f2 * a.g[i] * a.g[j];
            }
        }
        return r;
    }

    friend Taylor2 reciprocal(const Taylor2& a) {
        const double inv = 1.0 / a.v;
        return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
    }
};

inline Taylor2 sin(const Taylor2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return Taylor2::chain(a, s, c, -s);
}

inline Taylor2 cos(const Taylor2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return Taylor2::chain(a, c, -s, -c);
}

inline Taylor2 exp(const Taylor2& a) {
    const double e = std::exp(a.v);
    return Taylor2::chain(a, e, e, e);
}

inline Taylor2 sqrt(const Taylor2& a) {
    const double s = std::sqrt(a.v);
    return Taylor2::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// Real power for a.v > 0.
inline Taylor2 pow(const Taylor2& a, double p) {
    const double f0 = std::pow(a.v, p);
    const double f1 = p * std::pow(a.v, p - 1.0);
    const double f2 = p * (p - 1.0) * std::pow(a.v, p - 2.0);
    return Taylor2::chain(a, f0, f1, f2);
}

}  // namespace affcurv
