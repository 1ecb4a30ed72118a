#pragma once

// Scalar math shims and a minimal complex type that work uniformly for
// double, long double and __float128. The closed-form evaluators are
// templated on the real type so the verification harnesses can run them in
// quad precision, keeping finite-difference truncation above roundoff.

#include <quadmath.h>

#include <cmath>
#include <complex>

namespace ckm {

using qreal = __float128;

namespace qm {

inline double exp(double x) { return std::exp(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double fabs(double x) { return std::fabs(x); }

inline long double exp(long double x) { return std::exp(x); }
inline long double sin(long double x) { return std::sin(x); }
inline long double cos(long double x) { return std::cos(x); }
inline long double sinh(long double x) { return std::sinh(x); }
inline long double cosh(long double x) { return std::cosh(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline long double fabs(long double x) { return std::fabs(x); }

inline qreal exp(qreal x) { return ::expq(x); }
inline qreal sin(qreal x) { return ::sinq(x); }
inline qreal cos(qreal x) { return ::cosq(x); }
inline qreal sinh(qreal x) { return ::sinhq(x); }
inline qreal cosh(qreal x) { return ::coshq(x); }
inline qreal sqrt(qreal x) { return ::sqrtq(x); }
inline qreal fabs(qreal x) { return ::fabsq(x); }

}  // namespace qm

template <class R>
struct Cx {
    R re{};
    R im{};

    constexpr Cx() = default;
    constexpr Cx(R r) : re(r) {}
    constexpr Cx(R r, R i) : re(r), im(i) {}
};

template <class R> constexpr Cx<R> operator+(Cx<R> a, Cx<R> b) { return {a.re + b.re, a.im + b.im}; }
template <class R> constexpr Cx<R> operator-(Cx<R> a, Cx<R> b) { return {a.re - b.re, a.im - b.im}; }
template <class R> constexpr Cx<R> operator-(Cx<R> a) { return {-a.re, -a.im}; }

template <class R>
constexpr Cx<R> operator*(Cx<R> a, Cx<R> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class R>
constexpr Cx<R> operator/(Cx<R> a, Cx<R> b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <class R> constexpr Cx<R> operator*(R s, Cx<R> a) { return {s * a.re, s * a.im}; }
template <class R> constexpr Cx<R> operator*(Cx<R> a, R s) { return {s * a.re, s * a.im}; }
template <class R> constexpr Cx<R> operator/(Cx<R> a, R s) { return {a.re / s, a.im / s}; }
template <class R> constexpr Cx<R> operator+(Cx<R> a, R s) { return {a.re + s, a.im}; }
template <class R> constexpr Cx<R> operator-(Cx<R> a, R s) { return {a.re - s, a.im}; }

template <class R> constexpr Cx<R> conj(Cx<R> a) { return {a.re, -a.im}; }

template <class R>
inline R abs(Cx<R> a) {
    using qm::sqrt;
    return sqrt(a.re * a.re + a.im * a.im);
}

template <class R>
inline Cx<R> exp(Cx<R> z) {
    using qm::exp;
    using qm::cos;
    using qm::sin;
    R e = exp(z.re);
    return {e * cos(z.im), e * sin(z.im)};
}

// Principal branch. Standard half-angle construction, stable for all quadrants.
template <class R>
inline Cx<R> sqrt(Cx<R> z) {
    using qm::sqrt;
    R r = abs(z);
    if (r == R(0)) return {R(0), R(0)};
    if (z.re >= R(0)) {
        R s = sqrt((r + z.re) / R(2));
        return {s, z.im / (R(2) * s)};
    }
    R s = sqrt((r - z.re) / R(2));
    if (z.im < R(0)) s = -s;
    return {z.im / (R(2) * s), s};
}

template <class R>
inline Cx<R> from_std(std::complex<double> z) {
    return {static_cast<R>(z.real()), static_cast<R>(z.imag())};
}

template <class R>
inline std::complex<double> to_std(Cx<R> z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

}  // namespace ckm
