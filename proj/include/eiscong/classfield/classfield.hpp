#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/number_field.hpp"
#include "eiscong/congruence/congruence.hpp"

namespace eiscong::classfield {

using arith::BigInt;
using arith::OrderElement;
using arith::PrimeIdeal;

// Primes of F = Q(N^(1/p)) over l, read off from x^p - N mod l.
struct SplittingReport {
  std::int64_t ell;
  std::vector<int> degrees;  // sorted residue degrees
  bool inert;
  bool pth_power;            // N is a p-th power mod l
  std::int64_t r;            // order of l in (Z/p)^x
  bool has_degree_one() const { return !degrees.empty() && degrees.front() == 1; }
};

// Throws "ramified case out of scope" for l in {p, N}, and a
// DiscrepancyError if the factorization disagrees with the case analysis:
// degrees {1} + {r} * ((p - 1) / r) when N is a p-th power mod l, else {p}.
SplittingReport splitting_in_F(std::int64_t ell, std::int64_t n, std::int64_t p);

enum class Verdict { SplitsInL, NonSplit, InertAndPrincipal, NoConclusion };
std::string to_string(Verdict v);

struct Prediction {
  std::int64_t ell;
  std::int64_t ell_mod_p;
  int v_eis;  // v(a_l - l - 1), truncated at s + 1
  int v_two;  // v(a_l - 2), truncated at s + 1
  Verdict verdict;
};

// For l = 1 mod p: inert-and-principal when v(a_l - 2) < s + 1, else no
// conclusion. Otherwise: splits in L when v(a_l - l - 1) >= s + 1, else
// non-split. Throws "paper-contradiction" when the verdict disagrees with
// splitting_in_F.
Prediction predict(std::int64_t ell, const OrderElement& a, const PrimeIdeal& prime, int s, std::int64_t p,
                   std::int64_t n);

struct TableRow {
  std::int64_t ell;
  OrderElement a;
  bool bold;
  bool circled;
  std::vector<int> degrees;  // empty for l in {p, N}
};

// bold: v(a_l - l - 1) >= s + 1. circled: l = N, or l = 1 mod p and
// v(a_l - 2) < s + 1, or l != 1 mod p and bold.
std::vector<TableRow> table_flags(const congruence::Eigensystem& es, const PrimeIdeal& prime, int s, std::int64_t n,
                                  std::int64_t p, std::int64_t ell_max);

// Columns: ell, a_ell (power-basis coefficients), bold, circled, degrees.
std::string table_tsv(const std::vector<TableRow>& rows);

// Norm from F to Q of sum c_i theta^i, theta^p = N, as Res(x^p - N, sum c_i x^i).
BigInt norm_form_value(const std::vector<BigInt>& coeffs, std::int64_t n, std::int64_t p);

// The norm form as a polynomial in c_0, ..., c_{p-1}: exponent vector ->
// coefficient, from the determinant of multiplication by sum c_i theta^i.
using Monomials = std::map<std::vector<int>, BigInt>;
Monomials norm_form_symbolic(std::int64_t n, std::int64_t p);
std::string to_string(const Monomials& form, const std::vector<std::string>& vars);

// First tuple in [-bound, bound]^p with norm equal to target. Tuples are
// visited by increasing sum of absolute values, then lexicographically with
// each coordinate ordered 0, 1, -1, 2, -2, ...
std::optional<std::vector<BigInt>> norm_search(const BigInt& target, std::int64_t n, std::int64_t p,
                                               std::int64_t bound, unsigned threads = 1);

}  // namespace eiscong::classfield
