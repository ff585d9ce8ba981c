// Factorization over Q: squarefree decomposition, factorization modulo a
// good prime, multifactor Hensel lifting and subset recombination.

#include <algorithm>

#include "eiscong/arith/poly.hpp"
#include "eiscong/error.hpp"

namespace eiscong::arith {
namespace {

// Symmetric residue of c modulo m.
BigInt symmetric_mod(const BigInt& c, const BigInt& m) {
  BigInt r = c % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

IntPoly reduce_coeffs(const IntPoly& f, const BigInt& m) {
  IntPoly r = f;
  for (auto& c : r) {
    c %= m;
    if (c < 0) c += m;
  }
  trim(r);
  return r;
}

IntPoly symmetric(const IntPoly& f, const BigInt& m) {
  IntPoly r = f;
  for (auto& c : r) c = symmetric_mod(c, m);
  trim(r);
  return r;
}

struct Lifted {
  IntPoly g;  // monic
  IntPoly h;  // monic
};

// Given f with f = lc * g0 * h0 mod p (g0, h0 monic, coprime), lift to
// monic g, h with f = lc * g * h mod p^k.
Lifted hensel_two(const IntPoly& f, const ModPoly& g0, const ModPoly& h0, const PrimeField& F, int k) {
  ModPoly s, t;
  ModPoly one = modp::xgcd(g0, h0, s, t, F);
  if (one != ModPoly{1}) throw Error("hensel: factors not coprime");
  const BigInt p(static_cast<unsigned long>(F.modulus()));
  const BigInt lc = f.back();
  const std::uint64_t lc_inv = F.inv(F.from_big(lc));
  IntPoly g = modp::lift(g0), h = modp::lift(h0);
  BigInt pk = p;
  for (int step = 1; step < k; ++step) {
    IntPoly err = sub(f, scale(mul(g, h), lc));
    for (auto& c : err) {
      if (!mpz_divisible_p(c.get_mpz_t(), pk.get_mpz_t())) throw Error("hensel: inconsistent lift");
      c /= pk;
    }
    ModPoly e = modp::scale(modp::reduce(err, F), lc_inv, F);
    ModPoly dg = modp::rem(modp::mul(e, t, F), g0, F);
    ModPoly dh = modp::divmod(modp::sub(e, modp::mul(h0, dg, F), F), g0, F).first;
    g = add(g, scale(modp::lift(dg), pk));
    h = add(h, scale(modp::lift(dh), pk));
    pk *= p;
  }
  return {g, h};
}

// Lift the modular factorization of f (f = lc * prod factors mod p) to p^k.
void hensel_multi(const IntPoly& f, const std::vector<ModPoly>& factors, const PrimeField& F, int k,
                  const BigInt& pk, std::vector<IntPoly>& out) {
  if (factors.size() == 1) {
    // f = lc * g  mod p^k  =>  g = lc^{-1} f.
    BigInt inv;
    BigInt lc = f.back();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
    out.push_back(reduce_coeffs(scale(f, inv), pk));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ModPoly> right(factors.begin() + half, factors.end());
  ModPoly g0{1}, h0{1};
  for (const auto& x : left) g0 = modp::mul(g0, x, F);
  for (const auto& x : right) h0 = modp::mul(h0, x, F);
  Lifted lifted = hensel_two(f, g0, h0, F, k);
  hensel_multi(reduce_coeffs(lifted.g, pk), left, F, k, pk, out);
  hensel_multi(reduce_coeffs(lifted.h, pk), right, F, k, pk, out);
}

// Factor a primitive squarefree polynomial of positive degree.
std::vector<IntPoly> factor_squarefree(const IntPoly& f_in) {
  IntPoly f = primitive_part(f_in);
  const int n = degree(f);
  if (n <= 1) return {f};

  // Pick the good prime with the fewest modular factors among a handful.
  std::int64_t best_p = 0;
  std::vector<modp::Factor> best;
  int tried = 0;
  for (std::int64_t p = 3; tried < 6; p = next_prime(p)) {
    PrimeField F(static_cast<std::uint64_t>(p));
    if (F.from_big(f.back()) == 0) continue;
    ModPoly fm = modp::reduce(f, F);
    if (modp::degree(modp::gcd(fm, modp::derivative(fm, F), F)) > 0) continue;
    auto facs = modp::factor(fm, F);
    ++tried;
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f};
  PrimeField F(static_cast<std::uint64_t>(best_p));

  // Coefficient bound for factors of lc * f: 2^n * ||f||_2 * |lc|.
  BigInt norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  BigInt root = sqrt(norm2) + 1;
  BigInt bound = root * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
  BigInt target = 2 * bound * abs(f.back()) + 1;
  BigInt p(static_cast<unsigned long>(best_p));
  BigInt pk = p;
  int k = 1;
  while (pk <= target) {
    pk *= p;
    ++k;
  }

  std::vector<ModPoly> mod_factors;
  for (const auto& fa : best) mod_factors.push_back(fa.factor);
  std::vector<IntPoly> lifted;
  hensel_multi(f, mod_factors, F, k, pk, lifted);

  std::vector<IntPoly> result;
  IntPoly rest = f;
  std::vector<bool> used(lifted.size(), false);
  std::size_t remaining = lifted.size();
  for (std::size_t size = 1; 2 * size <= remaining;) {
    std::vector<std::size_t> avail;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (!used[i]) avail.push_back(i);
    bool found = false;
    std::vector<bool> mask(avail.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
    do {
      IntPoly g{rest.back()};
      for (std::size_t j = 0; j < avail.size(); ++j)
        if (mask[j]) g = reduce_coeffs(mul(g, lifted[avail[j]]), pk);
      g = primitive_part(symmetric(g, pk));
      IntPoly q;
      if (divides_exactly(g, rest, &q)) {
        result.push_back(g);
        rest = primitive_part(q);
        for (std::size_t j = 0; j < avail.size(); ++j)
          if (mask[j]) used[avail[j]] = true;
        remaining -= size;
        found = true;
        break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    if (!found) ++size;
  }
  if (degree(rest) > 0) result.push_back(rest);
  return result;
}

}  // namespace

std::vector<IntFactor> factor_over_q(const IntPoly& f_in, BigInt* unit) {
  IntPoly f = f_in;
  trim(f);
  if (f.empty()) throw Error("factor_over_q: zero polynomial");
  BigInt c = content(f);
  if (f.back() < 0) c = -c;
  if (unit) *unit = c;
  f = primitive_part(f);
  std::vector<IntFactor> out;
  if (degree(f) == 0) return out;

  // Yun's squarefree decomposition over Q.
  IntPoly a = f;
  IntPoly b = derivative(a);
  IntPoly g = gcd(a, b);
  IntPoly w;
  divides_exactly(g, a, &w);
  w = primitive_part(w);
  IntPoly rest = g;
  int i = 1;
  while (degree(w) > 0) {
    IntPoly y = gcd(w, rest);
    IntPoly z;
    if (!divides_exactly(y, w, &z)) throw Error("factor_over_q: squarefree split failed");
    z = primitive_part(z);
    if (degree(z) > 0)
      for (auto& part : factor_squarefree(z)) out.push_back({part, i});
    ++i;
    w = y;
    IntPoly r2;
    if (!divides_exactly(y, rest, &r2)) throw Error("factor_over_q: squarefree split failed");
    rest = primitive_part(r2);
  }
  std::sort(out.begin(), out.end(), [](const IntFactor& x, const IntFactor& y) {
    if (x.factor.size() != y.factor.size()) return x.factor.size() < y.factor.size();
    return x.factor < y.factor;
  });
  return out;
}

}  // namespace eiscong::arith
