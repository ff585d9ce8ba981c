#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace eiscong::arith {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t m);  // result in [0, m)
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Inverse of a modulo m; throws eiscong::Error when gcd(a, m) != 1.
std::int64_t invmod(std::int64_t a, std::int64_t m);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::int64_t next_prime(std::int64_t n);  // smallest prime > n

// (prime, exponent) pairs by trial division.
std::vector<std::pair<std::int64_t, int>> factor_small(std::int64_t n);

// Multiplicative order of a in (Z/m)^x.
std::int64_t multiplicative_order(std::int64_t a, std::int64_t m);
bool is_primitive_root(std::int64_t a, std::int64_t prime);
bool is_square_mod(std::int64_t a, std::int64_t prime);

// Index of Gamma_0(M) in SL_2(Z): M * prod_{q | M} (1 + 1/q).
std::int64_t gamma0_index(std::int64_t level);

// Exponent of the prime p in nonzero n.
int valuation(const BigInt& n, std::int64_t p);

std::int64_t to_int64(const BigInt& n);  // throws when out of range

// Whether a is a p-th power in F_ell^x: a^((ell-1)/gcd(p, ell-1)) == 1.
// Throws when ell divides a.
bool is_pth_power_mod(const BigInt& a, std::int64_t ell, std::int64_t p);

}  // namespace eiscong::arith
