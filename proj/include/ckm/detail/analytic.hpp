#pragma once

// Closed-form field evaluators, templated on the real type. The public API
// instantiates double; the residual harnesses instantiate __float128 so that
// finite-difference truncation stays far above arithmetic noise.

#include "ckm/detail/jet.hpp"
#include "ckm/errors.hpp"

namespace ckm::detail {

template <class R>
struct SeedParams {
    Cx<R> a, c1, c2, d1, d2;
};

// phi1 = c1 e^{ax + a^3 t} + c2 e^{-(ax + a^3 t)}
// phi2 = d1 e^{i(ax - a^3 t)} + d2 e^{-i(ax - a^3 t)}
// All x-derivative orders of an exponential sum are exact, so the jets carry
// trustworthy coefficients in every slot.
template <class R>
struct SeedJets {
    Jet<R> phi1, phi2;
};

template <class R>
SeedJets<R> seed_jets(const SeedParams<R>& p, R x, R t) {
    const Cx<R> a = p.a;
    const Cx<R> a3t = a * a * a * Cx<R>{t};
    const Cx<R> e1 = exp(a * Cx<R>{x} + a3t);
    const Cx<R> e1m = Cx<R>{R(1)} / e1;
    const Cx<R> ia = Cx<R>{R(0), R(1)} * a;
    const Cx<R> e2 = exp(ia * Cx<R>{x} - Cx<R>{R(0), R(1)} * a3t);
    const Cx<R> e2m = Cx<R>{R(1)} / e2;

    SeedJets<R> s;
    Cx<R> ak{R(1)}, mak{R(1)}, iak{R(1)}, miak{R(1)};
    for (int k = 0; k < kJetLen; ++k) {
        s.phi1.c[k] = p.c1 * ak * e1 + p.c2 * mak * e1m;
        s.phi2.c[k] = p.d1 * iak * e2 + p.d2 * miak * e2m;
        ak = ak * a;
        mak = mak * (-a);
        iak = iak * ia;
        miak = miak * (-ia);
    }
    return s;
}

template <class R>
struct Triple {
    Cx<R> f, u, v;
};

// Three-component fields from the seed pair,
//   W = phi1 phi2' - phi2 phi1',  D = phi1^2 - phi2^2,
//   f = 2 W / D,
//   u = (D'/D)' + 2 (W/D)^2,
//   v = (2 W' D - W D') / D^2,
// written over the four exponential factors P = c1 e^{E}, Q = c2 e^{-E},
// S = d1 e^{iG}, T = d2 e^{-iG}. In this basis PQ and ST are the constant
// products c1 c2, d1 d2, phi'' = +-a^2 phi collapses W' to -2 a^2 phi1 phi2,
// and u's numerator expands to
//   4 a^2 [ 2 c1c2 (P^2+Q^2) - 2 d1d2 (S^2+T^2)
//           + 4 (c1c2)^2 - 4 (d1d2)^2 + i (P^2-Q^2)(S^2-T^2) ],
// whose terms share the growth order of the result. The naive
// (D''D - D'^2 + 2W^2) form loses all relative accuracy in the decaying
// tails, where it cancels across two exponential orders.
template <class R>
Triple<R> three_component_eval(const SeedParams<R>& p, R x, R t, R pole_tol) {
    const Cx<R> a = p.a;
    const Cx<R> i{R(0), R(1)};
    const Cx<R> a3t = a * a * a * Cx<R>{t};
    const Cx<R> E = exp(a * Cx<R>{x} + a3t);
    const Cx<R> G = exp(i * (a * Cx<R>{x} - a3t));
    const Cx<R> P = p.c1 * E, Q = p.c2 / E, S = p.d1 * G, T = p.d2 / G;
    const Cx<R> p1 = P + Q, p2 = S + T;
    const Cx<R> D = p1 * p1 - p2 * p2;
    if (abs(D) < pole_tol)
        throw pole_error("three-component denominator phi1^2 - phi2^2 vanishes");
    const Cx<R> P2 = P * P, Q2 = Q * Q, S2 = S * S, T2 = T * T;
    const Cx<R> cc = p.c1 * p.c2, dd = p.d1 * p.d2;
    const Cx<R> W = a * ((i - R(1)) * (P * S - Q * T) - (i + R(1)) * (P * T - Q * S));
    const Cx<R> Dx = R(2) * a * (P2 - Q2) - R(2) * i * a * (S2 - T2);
    const Cx<R> Nu = R(4) * (a * a)
                     * (R(2) * cc * (P2 + Q2) - R(2) * dd * (S2 + T2)
                        + R(4) * cc * cc - R(4) * dd * dd + i * (P2 - Q2) * (S2 - T2));
    const Cx<R> D2 = D * D;
    Triple<R> out;
    out.f = R(2) * W / D;
    out.u = Nu / D2;
    out.v = (R(-4) * (a * a) * (p1 * p2) * D - W * Dx) / D2;
    return out;
}

// The r-parametrised family (c1 = c2 = 1/2, d1 = d2 = r/2), evaluated from
// its real trigonometric/hyperbolic form.
template <class R>
struct RealTriple {
    R f, u, v;
    R denominator;
};

template <class R>
RealTriple<R> r_family_eval(R a, R r, R x, R t, R pole_tol) {
    const R e1 = a * a * a * t - a * x;
    const R e2 = a * a * a * t + a * x;
    const R ch = qm::cosh(e2), sh = qm::sinh(e2);
    const R co = qm::cos(e1), si = qm::sin(e1);
    const R den = ch * ch - r * r * co * co;
    if (qm::fabs(den) < pole_tol)
        throw pole_error("r-family denominator cosh^2(eta2) - r^2 cos^2(eta1) vanishes");
    RealTriple<R> out;
    out.denominator = den;
    out.f = R(2) * a * r * (ch * si - co * sh) / den;
    out.u = a * a * (R(1) - r * r * r * r - r * r * r * r * qm::cos(R(2) * e1) + qm::cosh(R(2) * e2)
                     + r * r * qm::sin(R(2) * e1) * qm::sinh(R(2) * e2)) / (den * den);
    const R vden = (R(-1) + r * r + r * r * qm::cos(R(2) * e1) - qm::cosh(R(2) * e2));
    out.v = R(2) * a * a * r
            * (((R(-7) + R(6) * r * r + R(2) * r * r * qm::cos(R(2) * e1)) * co * ch
                - co * qm::cosh(R(3) * e2))
               - R(2) * (R(1) + r * r + r * r * qm::cos(R(2) * e1) + qm::cosh(R(2) * e2)) * si * sh)
            / (vden * vden);
    return out;
}

template <class R>
struct TwoComp {
    Cx<R> f21, u11, u21;
};

template <class R>
TwoComp<R> two_component_eval(const SeedParams<R>& p, R x, R t, R pole_tol) {
    const Cx<R> a = p.a;
    const Cx<R> i{R(0), R(1)};
    const Cx<R> arg = a * (a * a * Cx<R>{t} + Cx<R>{x});
    const Cx<R> E = exp(R(2) * arg);
    const Cx<R> den = p.c2 + p.c1 * E;
    if (abs(den) < pole_tol)
        throw pole_error("two-component denominator c2 + c1 e^{2a(a^2 t + x)} vanishes");
    const Cx<R> pre = exp((Cx<R>{R(1)} - i) * arg);
    const Cx<R> e2ia3t = exp(R(2) * i * (a * a * a * Cx<R>{t}));
    const Cx<R> e2iax = exp(R(2) * i * (a * Cx<R>{x}));
    TwoComp<R> out;
    out.f21 = R(2) * pre * (p.d2 * e2ia3t + p.d1 * e2iax) / den;
    out.u11 = R(8) * (a * a) * (p.c1 * p.c2) * E / (den * den);
    out.u21 = R(-2) * i * a * pre * (p.d2 * e2ia3t - p.d1 * e2iax) / den;
    return out;
}

// lambda = -2 i m^2; a = principal sqrt. The f component of the general
// three-component pipeline.
template <class R>
Cx<R> complex_case_eval(R m, Cx<R> c1, Cx<R> c2, Cx<R> d1, Cx<R> d2, R x, R t, R pole_tol) {
    const Cx<R> lambda{R(0), R(-2) * m * m};
    SeedParams<R> p{sqrt(lambda), c1, c2, d1, d2};
    return three_component_eval(p, x, t, pole_tol).f;
}

}  // namespace ckm::detail
