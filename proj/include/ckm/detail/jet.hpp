#pragma once

// Truncated derivative jets: a value together with its first kLen-1
// x-derivatives at a point. Ring operations follow the Leibniz rule, so a
// coefficient of order k in any product or quotient depends only on input
// coefficients of order <= k. derivative() shifts the jet and zero-fills the
// top slot; each shift therefore lowers the trustworthy order by exactly one
// without contaminating the orders below it.

#include <array>

#include "ckm/detail/cxmath.hpp"

namespace ckm {

inline constexpr int kJetLen = 6;

namespace detail {
// binom[k][j] for k, j < kJetLen
inline constexpr int kBinom[kJetLen][kJetLen] = {
    {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
    {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1},
};
}  // namespace detail

template <class R>
struct Jet {
    std::array<Cx<R>, kJetLen> c{};

    static Jet constant(Cx<R> v) {
        Jet j;
        j.c[0] = v;
        return j;
    }

    Cx<R> value() const { return c[0]; }
    Cx<R> d(int k) const { return c[static_cast<std::size_t>(k)]; }

    Jet derivative() const {
        Jet out;
        for (int k = 0; k + 1 < kJetLen; ++k) out.c[k] = c[k + 1];
        out.c[kJetLen - 1] = Cx<R>{};
        return out;
    }
};

template <class R>
Jet<R> operator+(const Jet<R>& a, const Jet<R>& b) {
    Jet<R> out;
    for (int k = 0; k < kJetLen; ++k) out.c[k] = a.c[k] + b.c[k];
    return out;
}

template <class R>
Jet<R> operator-(const Jet<R>& a, const Jet<R>& b) {
    Jet<R> out;
    for (int k = 0; k < kJetLen; ++k) out.c[k] = a.c[k] - b.c[k];
    return out;
}

template <class R>
Jet<R> operator-(const Jet<R>& a) {
    Jet<R> out;
    for (int k = 0; k < kJetLen; ++k) out.c[k] = -a.c[k];
    return out;
}

template <class R>
Jet<R> operator*(const Jet<R>& a, const Jet<R>& b) {
    Jet<R> out;
    for (int k = 0; k < kJetLen; ++k) {
        Cx<R> s{};
        for (int j = 0; j <= k; ++j)
            s = s + static_cast<R>(detail::kBinom[k][j]) * (a.c[j] * b.c[k - j]);
        out.c[k] = s;
    }
    return out;
}

template <class R>
Jet<R> operator*(Cx<R> s, const Jet<R>& a) {
    Jet<R> out;
    for (int k = 0; k < kJetLen; ++k) out.c[k] = s * a.c[k];
    return out;
}

template <class R>
Jet<R> operator*(R s, const Jet<R>& a) {
    return Cx<R>{s} * a;
}

// Leibniz solve for q = a / b: a^(k) = sum_j C(k,j) q^(j) b^(k-j).
template <class R>
Jet<R> operator/(const Jet<R>& a, const Jet<R>& b) {
    Jet<R> q;
    for (int k = 0; k < kJetLen; ++k) {
        Cx<R> s = a.c[k];
        for (int j = 0; j < k; ++j)
            s = s - static_cast<R>(detail::kBinom[k][j]) * (q.c[j] * b.c[k - j]);
        q.c[k] = s / b.c[0];
    }
    return q;
}

}  // namespace ckm
