#pragma once

// Modular j-invariant evaluation from the q-expansion, singular moduli at
// Heegner points, the bi-class difference product of two discriminants with
// integer recognition and partial factorization, and Weil heights of
// singular moduli.

#include <cmrel/bigfloat.hpp>
#include <cmrel/intmath.hpp>
#include <cmrel/quadnt.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmrel {

namespace detail {

// Sum of cubed divisors; n stays far below the overflow range (see the
// series cap in j_eval).
inline long sigma3(long n) {
    long s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += d * d * d;
        long e = n / d;
        if (e != d) s += e * e * e;
    }
    return s;
}

// |j(tau)| grows like |q|^-1 = exp(2*pi*Im tau), i.e. 2*pi/ln2 = 9.0647
// bits per unit of imaginary part; the constant absorbs the 744 + O(q) tail.
inline mpfr_prec_t magnitude_bits(double im) {
    return static_cast<mpfr_prec_t>(9.0648 * im) + 14;
}

// Working precision for an ABSOLUTE error target of 2^-precision_bits: the
// requested bits, the bits lost to the magnitude of the value itself, and a
// fixed 48-bit margin for series truncation and rounding noise.  In the
// extreme small-Im regime (series length near the cap) the truncation tail
// can eat up to ~60 of those margin bits, so the guaranteed absolute error
// is 2^-(precision_bits-16) there and far below 2^-precision_bits for the
// reduced-domain points (Im >= sqrt(3)/2) this library evaluates.
inline mpfr_prec_t j_working_prec(double im, unsigned precision_bits) {
    return static_cast<mpfr_prec_t>(precision_bits) + 48 + magnitude_bits(im);
}

}  // namespace detail

// j(tau) = E4(q)^3 / Delta(q) with q = exp(2*pi*i*tau), via
// E4 = 1 + 240*sum sigma3(n) q^n and Delta = q*prod (1-q^n)^24, truncated
// once |q|^n drops below the working-precision noise floor.
inline BigComplex j_eval(const BigComplex& tau, unsigned precision_bits) {
    if (tau.im.sign() <= 0)
        throw std::domain_error("j requires a point with positive imaginary part");
    double im_d = tau.im.to_double();
    mpfr_prec_t W = detail::j_working_prec(im_d, precision_bits);

    BigFloat two_pi = BigFloat::pi(W) + BigFloat::pi(W);
    BigFloat decay = (-(two_pi * tau.im)).exp();  // |q|
    auto [sn, cs] = (two_pi * tau.re).sin_cos();
    BigComplex q{decay * cs, decay * sn};

    double qbits = 9.0647 * im_d;  // -log2 |q|
    long n_terms = static_cast<long>((static_cast<double>(W) + 16) / qbits) + 2;
    if (n_terms > 1000000)
        throw std::domain_error("imaginary part too small for the series evaluation");

    BigComplex one = BigComplex::from_long(1, W);
    BigComplex e4 = one, prod = one, qp = q;
    for (long n = 1; n <= n_terms; ++n) {
        mpz_class coef(detail::sigma3(n));
        coef *= 240;
        BigFloat c = BigFloat::from_mpz(coef, W);
        e4 += BigComplex{qp.re * c, qp.im * c};
        prod *= one - qp;
        qp *= q;
    }
    BigComplex p2 = prod * prod;
    BigComplex p6 = p2 * p2 * p2;
    BigComplex p24 = p6 * p6 * p6 * p6;
    return (e4 * e4 * e4) / (q * p24);
}

// ---------------------------------------------------------------------------
// Heegner points and singular moduli.

struct HeegnerPoint {
    ReducedForm form;
    BigComplex tau;  // (-b + i*sqrt(|d|)) / (2a)
};

inline std::vector<HeegnerPoint> heegner_points(const Discriminant& d,
                                                unsigned precision_bits) {
    std::vector<HeegnerPoint> out;
    for (const ReducedForm& f : reduced_forms(d)) {
        double im_est = std::sqrt(static_cast<double>(-d.value)) / (2.0 * f.a);
        mpfr_prec_t W = detail::j_working_prec(im_est, precision_bits);
        mpq_class re_q(-f.b, 2 * f.a);
        re_q.canonicalize();
        BigFloat re = BigFloat::from_mpq(re_q, W);
        BigFloat im =
            BigFloat::from_long(-d.value, W).sqrt() / BigFloat::from_long(2 * f.a, W);
        out.push_back({f, BigComplex{std::move(re), std::move(im)}});
    }
    return out;
}

// j at every Heegner point of the discriminant, in reduced_forms order.
inline std::vector<BigComplex> singular_moduli(const Discriminant& d,
                                               unsigned precision_bits) {
    std::vector<BigComplex> out;
    for (const HeegnerPoint& hp : heegner_points(d, precision_bits))
        out.push_back(j_eval(hp.tau, precision_bits));
    return out;
}

// ---------------------------------------------------------------------------
// The bi-class difference product.

struct GZReport {
    Discriminant d1, d2;
    BigComplex product_value;
    mpz_class rounded_integer;
    BigFloat residual;   // |product_value - rounded_integer|
    mpq_class exponent;  // 8/(w1*w2), reduced
    PartialFactorization factorization;  // of |rounded_integer|
    std::vector<std::pair<long, LvVerdict>> criterion;  // per prime factor
    unsigned precision_bits = 0;
    bool trusted = false;            // residual < 1/4
    unsigned suggested_precision = 0;  // next ladder step when untrusted
};

// Number of units in the order of the given discriminant.
inline long unit_count(const Discriminant& d) {
    if (d.value == -3) return 6;
    if (d.value == -4) return 4;
    return 2;
}

inline constexpr unsigned kGZPrecisionCap = 4096;

// Default evaluation precision: q decays like exp(-pi*sqrt(|d|)/a), so the
// budget scales with sqrt(|d1*d2|) and the class-pair count.
inline unsigned default_gz_precision(const Discriminant& d1, const Discriminant& d2) {
    mpz_class prod(d1.value);
    prod *= d2.value;
    mpz_class s, r;
    mpz_sqrtrem(s.get_mpz_t(), r.get_mpz_t(), prod.get_mpz_t());
    if (r != 0) ++s;
    mpz_class bits =
        64 + 12 * s * std::max(class_number(d1), class_number(d2));
    if (bits > kGZPrecisionCap) return kGZPrecisionCap;
    return static_cast<unsigned>(bits.get_ui());
}

// Product of j(tau2) - j(tau1) over all class pairs, tau1 running over the
// first discriminant and tau2 over the second.  The pairing order fixes the
// overall sign, which is reported as-is (for class-number-one pairs the
// product is j(d2) - j(d1)).  The fractional exponent 8/(w1*w2) rides along
// unapplied: divisibility questions are insensitive to positive rational
// exponents, and applying it would force branch cuts.
inline GZReport gz_product(const Discriminant& d1, const Discriminant& d2,
                           unsigned precision_bits) {
    if (d1.value == d2.value) throw std::domain_error("discriminants must differ");
    GZReport rep;
    rep.d1 = d1;
    rep.d2 = d2;
    rep.precision_bits = precision_bits;
    rep.exponent = mpq_class(8, unit_count(d1) * unit_count(d2));
    rep.exponent.canonicalize();

    // Absolute-error budget: each factor j(tau2)-j(tau1) is bounded by
    // 2^(max magnitude + 2) bits, so evaluating every j with an absolute
    // target below the SUM of those bounds keeps the full product good to
    // 2^-precision_bits.
    auto f1 = reduced_forms(d1), f2 = reduced_forms(d2);
    auto im_of = [](const Discriminant& d, const ReducedForm& f) {
        return std::sqrt(static_cast<double>(-d.value)) / (2.0 * f.a);
    };
    mpfr_prec_t budget = 0;
    for (const ReducedForm& a : f1)
        for (const ReducedForm& b : f2)
            budget += std::max(detail::magnitude_bits(im_of(d1, a)),
                               detail::magnitude_bits(im_of(d2, b))) +
                      2;
    unsigned target = precision_bits + 64 + static_cast<unsigned>(budget);

    std::vector<BigComplex> j1, j2;
    for (const HeegnerPoint& hp : heegner_points(d1, target))
        j1.push_back(j_eval(hp.tau, target));
    for (const HeegnerPoint& hp : heegner_points(d2, target))
        j2.push_back(j_eval(hp.tau, target));

    BigComplex acc = BigComplex::from_long(1, target);
    for (const BigComplex& a : j1)
        for (const BigComplex& b : j2) acc *= b - a;
    rep.product_value = acc;

    rep.rounded_integer = acc.re.round_to_mpz();
    BigFloat rounded = BigFloat::from_mpz(rep.rounded_integer, acc.re.prec());
    rep.residual = hypot(acc.re - rounded, acc.im);
    rep.trusted = rep.residual.cmp(BigFloat::from_mpq(mpq_class(1, 4), 64)) < 0;
    if (!rep.trusted)
        rep.suggested_precision = std::min(precision_bits * 2, kGZPrecisionCap);

    mpz_class magnitude = abs(rep.rounded_integer);
    if (magnitude >= 1) rep.factorization = trial_division(magnitude, 1000000);
    else rep.factorization.cofactor = 1;

    for (const auto& [p, e] : rep.factorization.factors) {
        if (!mpz_fits_slong_p(p.get_mpz_t())) continue;  // desk-scale inputs never hit this
        long pl = p.get_si();
        rep.criterion.emplace_back(pl, lv_prime_check(d1, d2, pl).verdict);
    }
    return rep;
}

// Retries with doubled precision while the rounding stays untrusted.
inline GZReport gz_product_auto(const Discriminant& d1, const Discriminant& d2,
                                unsigned initial_bits = 0) {
    unsigned prec = initial_bits ? initial_bits : default_gz_precision(d1, d2);
    for (;;) {
        GZReport rep = gz_product(d1, d2, prec);
        if (rep.trusted || prec >= kGZPrecisionCap) return rep;
        prec = std::min(prec * 2, kGZPrecisionCap);
    }
}

// ---------------------------------------------------------------------------
// Weil height of the singular moduli of a discriminant.

struct WeilHeightResult {
    Discriminant d;
    long degree;  // = class number
    BigFloat height;
    std::vector<BigFloat> conjugate_magnitudes;
};

// (1/degree) * sum of log max(1, |j_i|) over the full conjugate set.
inline WeilHeightResult weil_height(const Discriminant& d, unsigned precision_bits) {
    std::vector<BigComplex> js = singular_moduli(d, precision_bits);
    mpfr_prec_t W = static_cast<mpfr_prec_t>(precision_bits) + 32;
    WeilHeightResult res{d, static_cast<long>(js.size()), BigFloat(W), {}};
    BigFloat acc(W);
    for (const BigComplex& j : js) {
        BigFloat a = j.abs();
        if (a.cmp_long(1) > 0) acc += a.log();
        res.conjugate_magnitudes.push_back(std::move(a));
    }
    res.height = acc / BigFloat::from_long(res.degree, W);
    return res;
}

}  // namespace cmrel
