#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith/integer.hpp"

namespace eiscong::eisenstein {

using arith::BigInt;
using arith::BigRational;

// Sum of the positive divisors of n >= 1.
BigInt sigma(std::int64_t n);

// Truncated power series a_0 + a_1 q + ... + a_{n-1} q^{n-1} over Q.
class QExpansion {
 public:
  QExpansion() = default;
  explicit QExpansion(std::vector<BigRational> coeffs) : a_(std::move(coeffs)) {}
  static QExpansion zero(std::size_t n) { return QExpansion(std::vector<BigRational>(n)); }

  std::string ring() const { return "Q"; }
  std::size_t size() const { return a_.size(); }
  const BigRational& operator[](std::size_t i) const { return a_.at(i); }
  BigRational& operator[](std::size_t i) { return a_.at(i); }
  const std::vector<BigRational>& coefficients() const { return a_; }

  QExpansion operator+(const QExpansion& o) const;
  QExpansion operator-(const QExpansion& o) const;
  QExpansion operator*(const BigRational& s) const;
  // f(m z): coefficient k of the result is a_{k/m} when m | k, else 0.
  QExpansion rescale(std::int64_t m) const;
  bool operator==(const QExpansion&) const = default;

 private:
  std::vector<BigRational> a_;
};

// E_2 = -1/24 + sum sigma(n) q^n.
QExpansion e2(std::size_t n_terms);
// E_{2,N}(z) = E_2(z) - N E_2(N z).
QExpansion e2N(std::int64_t n, std::size_t n_terms);
// E(z) = N E_{2,N}(z) - N E_{2,N}(N z).
QExpansion eis_E(std::int64_t n, std::size_t n_terms);
// (w_{N^2} E)(z) = E_{2,N}(z) - N^2 E_{2,N}(N z).
QExpansion atkin_lehner_E(std::int64_t n, std::size_t n_terms);

struct EigenReport {
  // T_l eigenvalue for each tested prime l (absent when the relation fails).
  std::map<std::int64_t, std::optional<BigRational>> t_eigenvalues;
  std::optional<BigRational> u_eigenvalue;
  bool all_eigen() const;
};

// Checks a_{lm} + l a_{m/l} = lambda_l a_m for primes l <= ell_max, l != N,
// and a_{Nm} = lambda a_m, over every index the truncation allows.
// Throws "insufficient truncation" when n_terms < 2 * max(ell_max, N).
EigenReport eigen_check(const QExpansion& f, std::int64_t n, std::int64_t ell_max);

}  // namespace eiscong::eisenstein
