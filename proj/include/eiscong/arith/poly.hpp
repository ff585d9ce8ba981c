#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/arith/integer.hpp"

namespace eiscong::arith {

// Dense univariate polynomials, coefficients low to high, no trailing zeros.
// The zero polynomial is the empty vector.
using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<BigRational>;
using ModPoly = std::vector<std::uint64_t>;

// --- integer / rational polynomials -------------------------------------

int degree(const IntPoly& f);  // -1 for zero
void trim(IntPoly& f);
IntPoly poly_from_ints(std::initializer_list<long> coeffs);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly sub(const IntPoly& a, const IntPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly scale(const IntPoly& a, const BigInt& s);
IntPoly derivative(const IntPoly& f);
BigInt content(const IntPoly& f);
// Primitive part with positive leading coefficient.
IntPoly primitive_part(const IntPoly& f);
BigInt evaluate(const IntPoly& f, const BigInt& x);
// Exact quotient a / b over Z, or false if b does not divide a in Z[x].
bool divides_exactly(const IntPoly& b, const IntPoly& a, IntPoly* quotient);
// Primitive gcd over Q (normalized to positive leading coefficient).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt determinant(std::vector<std::vector<BigInt>> m);
BigInt discriminant(const IntPoly& f);
BigInt resultant(const IntPoly& a, const IntPoly& b);
std::string to_string(const IntPoly& f, const std::string& var = "x");

void trim(RatPoly& f);
RatPoly to_rational(const IntPoly& f);
// Clears denominators; returns the primitive integer polynomial and the
// rational scale with f = scale * result.
IntPoly clear_denominators(const RatPoly& f, BigRational* scale = nullptr);
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

// Irreducible factorization over Q of a nonzero integer polynomial, as
// (primitive irreducible factor, multiplicity) pairs sorted by degree then
// coefficients. The unit/content is returned through `unit` when requested
// so that unit * prod f_i^e_i == input.
struct IntFactor {
  IntPoly factor;
  int multiplicity;
};
std::vector<IntFactor> factor_over_q(const IntPoly& f, BigInt* unit = nullptr);

// --- polynomials over F_p ------------------------------------------------

namespace modp {

int degree(const ModPoly& f);
void trim(ModPoly& f);
ModPoly reduce(const IntPoly& f, const PrimeField& F);
IntPoly lift(const ModPoly& f);  // coefficients in [0, p)
ModPoly add(const ModPoly& a, const ModPoly& b, const PrimeField& F);
ModPoly sub(const ModPoly& a, const ModPoly& b, const PrimeField& F);
ModPoly mul(const ModPoly& a, const ModPoly& b, const PrimeField& F);
ModPoly scale(const ModPoly& a, std::uint64_t s, const PrimeField& F);
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b, const PrimeField& F);
ModPoly rem(const ModPoly& a, const ModPoly& b, const PrimeField& F);
ModPoly make_monic(const ModPoly& a, const PrimeField& F);
ModPoly gcd(const ModPoly& a, const ModPoly& b, const PrimeField& F);  // monic
// s*a + t*b = g (monic gcd).
ModPoly xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t, const PrimeField& F);
ModPoly derivative(const ModPoly& f, const PrimeField& F);
ModPoly powmod(const ModPoly& base, const BigInt& exp, const ModPoly& modulus, const PrimeField& F);

struct Factor {
  ModPoly factor;  // monic irreducible
  int multiplicity;
};
// Squarefree decomposition of a monic polynomial.
std::vector<Factor> squarefree(const ModPoly& f, const PrimeField& F);
// Distinct-degree factorization of a monic squarefree polynomial: pairs of
// (product of all irreducible factors of degree d, d).
std::vector<std::pair<ModPoly, int>> distinct_degree(const ModPoly& f, const PrimeField& F);
// Full factorization into monic irreducibles (Cantor-Zassenhaus with a
// fixed seed, so results are deterministic). Sorted by degree, then
// coefficients.
std::vector<Factor> factor(const ModPoly& f, const PrimeField& F);

}  // namespace modp

// Multiset (sorted) of degrees of the irreducible factors of poly over F_l,
// with multiplicity. Throws when l divides the leading coefficient.
std::vector<int> factor_degrees_mod(const IntPoly& poly, std::int64_t ell);

}  // namespace eiscong::arith
