#include "eiscong/arith/integer.hpp"

#include <cstdlib>

#include "eiscong/error.hpp"

namespace eiscong::arith {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::int64_t invmod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error("invmod: element not invertible");
  return mod(old_s, m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

std::int64_t next_prime(std::int64_t n) {
  std::int64_t c = n + 1;
  while (!is_prime(static_cast<std::uint64_t>(c))) ++c;
  return c;
}

std::vector<std::pair<std::int64_t, int>> factor_small(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::llabs(n);
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
  a = mod(a, m);
  if (gcd(a, m) != 1) throw Error("multiplicative_order: not a unit");
  std::int64_t order = 1;
  std::int64_t x = a;
  while (x != 1 % m) {
    x = static_cast<std::int64_t>(mulmod(x, a, m));
    ++order;
  }
  return order;
}

bool is_primitive_root(std::int64_t a, std::int64_t prime) {
  if (mod(a, prime) == 0) return false;
  return multiplicative_order(a, prime) == prime - 1;
}

bool is_square_mod(std::int64_t a, std::int64_t prime) {
  a = mod(a, prime);
  if (a == 0 || prime == 2) return true;
  return powmod(a, (prime - 1) / 2, prime) == 1;
}

std::int64_t gamma0_index(std::int64_t level) {
  std::int64_t index = level;
  for (auto [q, e] : factor_small(level)) index = index / q * (q + 1);
  return index;
}

int valuation(const BigInt& n, std::int64_t p) {
  if (n == 0) throw Error("valuation of zero");
  BigInt m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    m /= p;
    ++v;
  }
  return v;
}

std::int64_t to_int64(const BigInt& n) {
  if (!n.fits_slong_p()) throw Error("integer out of 64-bit range");
  return n.get_si();
}

bool is_pth_power_mod(const BigInt& a, std::int64_t ell, std::int64_t p) {
  BigInt r = a % ell;
  if (r < 0) r += ell;
  if (r == 0) throw Error("argument divisible by modulus");
  const std::int64_t e = (ell - 1) / gcd(p, ell - 1);
  return powmod(r.get_ui(), static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(ell)) == 1;
}

}  // namespace eiscong::arith
