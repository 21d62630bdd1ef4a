#pragma once

// Integer utilities shared by the arithmetic modules: primality testing,
// complete factorization of machine-width integers (trial division plus
// Brent's cycle-finding rho for stubborn cofactors), and bounded trial
// division for arbitrary-precision integers where only a partial
// factorization is wanted.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmrel {

inline bool is_probable_prime(const mpz_class& n) {
    // 40 Miller-Rabin rounds; false positives are out of reach in practice.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_probable_prime(long n) { return n >= 2 && is_probable_prime(mpz_class(n)); }

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Brent's variant of Pollard rho; n must be odd, composite, and > 1.
inline std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod_u64(x, x, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(std::uint64_t n, std::map<long, unsigned>& out) {
    if (n <= 1) return;
    if (is_probable_prime(static_cast<long>(n))) {
        ++out[static_cast<long>(n)];
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Complete factorization of n >= 1, ascending primes with multiplicities.
inline std::vector<std::pair<long, unsigned>> factorize(long n) {
    if (n < 1) throw std::invalid_argument("factorize expects a positive integer");
    std::map<long, unsigned> acc;
    std::uint64_t r = static_cast<std::uint64_t>(n);
    for (std::uint64_t d = 2; d <= 9973 && d * d <= r; d = (d == 2 ? 3 : d + 2)) {
        while (r % d == 0) {
            ++acc[static_cast<long>(d)];
            r /= d;
        }
    }
    detail::factor_into(r, acc);
    return {acc.begin(), acc.end()};
}

// Distinct prime divisors of n >= 1.
inline std::vector<long> prime_support(long n) {
    std::vector<long> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

struct PartialFactorization {
    std::vector<std::pair<mpz_class, unsigned>> factors;  // ascending primes
    mpz_class cofactor;  // 1, or the unfactored part beyond the bound
};

// Trial division of n >= 1 by primes up to the bound.  A leftover that is a
// probable prime is promoted to a factor; otherwise it stays as cofactor.
inline PartialFactorization trial_division(const mpz_class& n, unsigned long bound) {
    if (n < 1) throw std::invalid_argument("trial division expects a positive integer");
    PartialFactorization out;
    out.cofactor = 1;
    mpz_class r = n;
    auto strip = [&](unsigned long d) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(r.get_mpz_t(), d)) {
            mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), d);
            ++e;
        }
        if (e) out.factors.emplace_back(mpz_class(static_cast<long>(d)), e);
    };
    strip(2);
    for (unsigned long d = 3; d <= bound; d += 2) {
        if (mpz_class(d) * d > r) break;
        strip(d);
    }
    if (r > 1) {
        if (is_probable_prime(r))
            out.factors.emplace_back(r, 1);
        else
            out.cofactor = r;
    }
    return out;
}

}  // namespace cmrel
