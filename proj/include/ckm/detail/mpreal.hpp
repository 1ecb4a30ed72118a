#pragma once

// Fixed-precision MPFR real for the compound-transformation reference path.
// The chain's potential assembly cancels across two exponential orders of
// the phase, so pointwise relative accuracy in the far tails needs working
// precision well beyond binary128.

#include <mpfr.h>

namespace ckm::detail {

class MpReal {
public:
    static constexpr mpfr_prec_t kPrec = 192;

    MpReal() {
        mpfr_init2(v_, kPrec);
        mpfr_set_zero(v_, 1);
    }
    MpReal(double d) {
        mpfr_init2(v_, kPrec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    MpReal(int i) {
        mpfr_init2(v_, kPrec);
        mpfr_set_si(v_, i, MPFR_RNDN);
    }
    MpReal(const MpReal& o) {
        mpfr_init2(v_, kPrec);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, kPrec);
        mpfr_swap(v_, o.v_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend MpReal operator+(const MpReal& a, const MpReal& b) {
        MpReal r;
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a, const MpReal& b) {
        MpReal r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator*(const MpReal& a, const MpReal& b) {
        MpReal r;
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(const MpReal& a, const MpReal& b) {
        MpReal r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a) {
        MpReal r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    friend MpReal exp(const MpReal& a) {
        MpReal r;
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal sin(const MpReal& a) {
        MpReal r;
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal cos(const MpReal& a) {
        MpReal r;
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal sinh(const MpReal& a) {
        MpReal r;
        mpfr_sinh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal cosh(const MpReal& a) {
        MpReal r;
        mpfr_cosh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal sqrt(const MpReal& a) {
        MpReal r;
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal fabs(const MpReal& a) {
        MpReal r;
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

}  // namespace ckm::detail

