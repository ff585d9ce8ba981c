#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/poly.hpp"

namespace eiscong::arith {

// Element of Q[t]/(m) in the power basis 1, t, ..., t^(d-1), where m is a
// monic irreducible integer polynomial. The order in question is Z[t]/(m).
class OrderElement {
 public:
  OrderElement(IntPoly minpoly, std::vector<BigRational> coeffs);
  static OrderElement from_int(const IntPoly& minpoly, long n);
  static OrderElement generator(const IntPoly& minpoly);  // t

  const IntPoly& minpoly() const { return minpoly_; }
  const std::vector<BigRational>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()); }

  bool is_zero() const;
  bool is_integral() const;  // all power-basis coefficients in Z
  std::vector<BigInt> integer_coeffs() const;  // throws "not in order"

  OrderElement operator+(const OrderElement& o) const;
  OrderElement operator-(const OrderElement& o) const;
  OrderElement operator*(const OrderElement& o) const;
  OrderElement operator-() const;
  OrderElement operator+(long n) const;
  OrderElement operator-(long n) const;
  bool operator==(const OrderElement& o) const;

  // Norm down to Q (determinant of multiplication).
  BigRational norm() const;
  // Image under t -> root (another root of the minimal polynomial,
  // expressed in the power basis).
  OrderElement substitute(const OrderElement& root) const;

  // e.g. "5 - 7*t"
  std::string to_string(const std::string& var = "t") const;

 private:
  void check(const OrderElement& o) const;
  IntPoly minpoly_;
  std::vector<BigRational> coeffs_;
};

// Square multiplication-by-alpha matrix on the power basis (column j is
// alpha * t^j).
std::vector<std::vector<BigRational>> multiplication_matrix(const OrderElement& alpha);

// Z-lattice in Z^d given by a Hermite normal form basis (upper triangular
// rows with positive pivots).
class Lattice {
 public:
  static Lattice from_generators(std::vector<std::vector<BigInt>> gens, std::size_t dim);
  const std::vector<std::vector<BigInt>>& basis() const { return rows_; }
  bool contains(std::vector<BigInt> v) const;
  BigInt index() const;  // [Z^d : L]
  bool operator==(const Lattice& o) const { return rows_ == o.rows_; }

 private:
  std::vector<std::vector<BigInt>> rows_;
};

// Prime of Z[t]/(m) above p, (p, g(t)) for an irreducible factor g of m mod
// p. `ramification` is the multiplicity of g in m mod p, which is the
// ramification index when Z[t] is maximal at p.
struct PrimeIdeal {
  IntPoly minpoly;
  std::int64_t p;
  IntPoly generator;  // monic lift of g with coefficients in [0, p)
  int ramification;
  int residue_degree;
  bool p_maximal;  // Dedekind criterion: Z[t] is maximal at p

  Lattice lattice() const;
  std::string to_string(const std::string& var = "t") const;
};

std::vector<PrimeIdeal> primes_above(const IntPoly& minpoly, std::int64_t p);
// Dedekind's criterion for p-maximality of Z[t]/(m).
bool is_p_maximal(const IntPoly& minpoly, std::int64_t p);

Lattice ideal_product(const Lattice& a, const Lattice& b, const IntPoly& minpoly);
Lattice ideal_power(const PrimeIdeal& prime, int k);

// Largest k with alpha in prime^k; nullopt for alpha = 0. Throws
// "not in order" for alpha outside Z[t]/(m).
std::optional<int> valuation(const OrderElement& alpha, const PrimeIdeal& prime);

// Whether alpha is congruent to zero modulo prime, i.e. v >= 1.
bool in_prime(const OrderElement& alpha, const PrimeIdeal& prime);

}  // namespace eiscong::arith
