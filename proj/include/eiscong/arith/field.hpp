#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "eiscong/arith/integer.hpp"
#include "eiscong/error.hpp"

namespace eiscong::arith {

// Field policies used by the dense and sparse linear algebra. A policy is a
// small value object; elements are plain values of `value_type`.
template <class F>
concept FieldPolicy = requires(const F& f, const typename F::value_type& a, long n) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.to_string(a) } -> std::same_as<std::string>;
};

class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const { return n; }
  value_type from_big(const BigInt& n) const { return value_type(n); }
  value_type from_rational(const BigRational& q) const { return q; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error("division by zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }
  std::uint64_t characteristic() const { return 0; }
  bool operator==(const RationalField&) const = default;
};

// Z/pZ for a prime p < 2^32, so that products fit in 64 bits.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 32) || !is_prime(p)) throw Error("PrimeField: modulus must be a prime below 2^32");
  }

  std::uint64_t modulus() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long n) const { return static_cast<value_type>(mod(n, static_cast<std::int64_t>(p_))); }
  value_type from_big(const BigInt& n) const {
    BigInt r = n % static_cast<unsigned long>(p_);
    if (r < 0) r += static_cast<unsigned long>(p_);
    return r.get_ui();
  }
  value_type from_rational(const BigRational& q) const {
    value_type den = from_big(q.get_den());
    if (den == 0) throw Error("rational with denominator divisible by the characteristic");
    return mul(from_big(q.get_num()), inv(den));
  }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const { return a * b % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero");
    return static_cast<value_type>(invmod(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p_)));
  }
  value_type pow(value_type a, std::uint64_t e) const { return powmod(a, e, p_); }
  bool is_zero(value_type a) const { return a == 0; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "F_" + std::to_string(p_); }
  std::uint64_t characteristic() const { return p_; }
  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

static_assert(FieldPolicy<RationalField>);
static_assert(FieldPolicy<PrimeField>);

// An element of F_l carrying its modulus; arithmetic requires equal moduli.
class PrimeFieldElement {
 public:
  PrimeFieldElement(std::int64_t value, std::int64_t modulus);

  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return modulus_; }

  PrimeFieldElement operator+(const PrimeFieldElement& o) const;
  PrimeFieldElement operator-(const PrimeFieldElement& o) const;
  PrimeFieldElement operator*(const PrimeFieldElement& o) const;
  PrimeFieldElement inverse() const;
  PrimeFieldElement pow(std::uint64_t e) const;
  bool operator==(const PrimeFieldElement&) const = default;

 private:
  void check(const PrimeFieldElement& o) const;
  std::int64_t value_;
  std::int64_t modulus_;
};

}  // namespace eiscong::arith
