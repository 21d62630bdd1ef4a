#pragma once

// RAII wrappers over MPFR: a real type whose precision travels with the
// value (binary operations widen to the larger operand precision) and a
// complex pair built on it.  Only the operations the evaluation code needs.

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace cmrel {

class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_mpz(const mpz_class& x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_mpq(const mpq_class& x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    BigFloat operator+(const BigFloat& o) const { return bin(o, mpfr_add); }
    BigFloat operator-(const BigFloat& o) const { return bin(o, mpfr_sub); }
    BigFloat operator*(const BigFloat& o) const { return bin(o, mpfr_mul); }
    BigFloat operator/(const BigFloat& o) const { return bin(o, mpfr_div); }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat log() const {
        BigFloat r(prec());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat exp() const {
        BigFloat r(prec());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    // (sin x, cos x) in one reduction pass.
    std::pair<BigFloat, BigFloat> sin_cos() const {
        BigFloat s(prec()), c(prec());
        mpfr_sin_cos(s.v_, c.v_, v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp_long(long x) const { return mpfr_cmp_si(v_, x); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    // Nearest integer, ties to even.
    mpz_class round_to_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Shortest-faithful style decimal with the given significant digits.
    std::string str(int digits = 12) const {
        char* s = nullptr;
        if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0)
            throw std::runtime_error("mpfr formatting failed");
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    static mpfr_prec_t check_prec(mpfr_prec_t p) {
        if (p < MPFR_PREC_MIN || p > (1 << 24))
            throw std::invalid_argument("unreasonable precision request");
        return p;
    }
    template <typename F>
    BigFloat bin(const BigFloat& o, F f) const {
        BigFloat r(std::max(prec(), o.prec()));
        f(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

inline BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.prec(), y.prec()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline BigFloat max(const BigFloat& x, const BigFloat& y) { return x.cmp(y) >= 0 ? x : y; }

struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    static BigComplex from_long(long x, mpfr_prec_t prec) {
        return {BigFloat::from_long(x, prec), BigFloat(prec)};
    }

    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigComplex operator/(const BigComplex& o) const {
        BigFloat den = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }

    BigComplex conj() const { return {re, -im}; }
    BigFloat abs() const { return hypot(re, im); }
};

}  // namespace cmrel
