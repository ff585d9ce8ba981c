#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/arith/linalg.hpp"
#include "eiscong/modsym/cusps.hpp"
#include "eiscong/modsym/manin.hpp"
#include "json.hpp"

namespace eiscong::eisenstein {

using arith::BigRational;
using modsym::CuspLabel;
using modsym::HeckeOp;

// A cusp of X_0(N^2) together with its width.
struct Cusp {
  CuspLabel label;
  std::int64_t width;
};
// The N + 1 cusps in the order infinity, [0], [1], ..., [N - 1].
std::vector<Cusp> cusps_of(std::int64_t n);

// Formal Q-linear combination of the cusps of X_0(N^2), stored in the
// order of cusps_of(N).
class CuspDivisor {
 public:
  explicit CuspDivisor(std::int64_t n);
  static CuspDivisor of(const CuspLabel& c, std::int64_t n);

  std::int64_t N() const { return n_; }
  const BigRational& operator[](const CuspLabel& c) const { return coeffs_.at(c.ordinal()); }
  BigRational& operator[](const CuspLabel& c) { return coeffs_.at(c.ordinal()); }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }
  BigRational degree() const;

  CuspDivisor operator+(const CuspDivisor& o) const;
  CuspDivisor operator-(const CuspDivisor& o) const;
  CuspDivisor operator*(const BigRational& s) const;
  bool operator==(const CuspDivisor& o) const = default;

  // {"inf": c, "zero": c, "x": {"1": c, ...}} with coefficients as strings.
  nlohmann::json to_json() const;
  static CuspDivisor from_json(const nlohmann::json& j, std::int64_t n);
  std::string to_string() const;

 private:
  std::int64_t n_;
  std::vector<BigRational> coeffs_;
};

// c = sum over x of ([x] - [0]).
CuspDivisor frak_c(std::int64_t n);
// infinity - [0] + c.
CuspDivisor eisenstein_pair(std::int64_t n);

// T_l (prime l != N) and U_N on Div(C):
//   T_l c = (l + 1) c for c = infinity, [0];  T_l [x] = l [l x] + [x / l];
//   U_N c = N [0] for c != infinity;  U_N infinity = infinity + sum [x].
CuspDivisor divisor_action(const HeckeOp& op, const CuspDivisor& d);

// The same operator as a matrix in the basis cusps_of(N).
template <arith::FieldPolicy F>
arith::Matrix<F> divisor_action_matrix(const HeckeOp& op, std::int64_t n, const F& field) {
  arith::Matrix<F> m(field, static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
    auto image = divisor_action(op, CuspDivisor::of(CuspLabel::from_ordinal(j), n));
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
      m(i, j) = field.from_rational(image.coefficients()[i]);
  }
  return m;
}

// Boundary map of a sign-0 level-N^2 space with rows in the order of
// cusps_of(N).
template <arith::FieldPolicy F>
arith::Matrix<F> boundary_to_divisors(const modsym::ManinSymbolSpace<F>& space, std::int64_t n) {
  if (space.level() != n * n || space.sign() != 0) throw Error("boundary_to_divisors: needs a sign-0 space of level N^2");
  const auto& b = space.boundary_matrix();
  arith::Matrix<F> out(space.field(), static_cast<std::size_t>(n + 1), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    const std::size_t r = modsym::cusp_label(space.boundary_cusps()[i], n).ordinal();
    for (std::size_t j = 0; j < b.cols(); ++j) out(r, j) = b(i, j);
  }
  return out;
}

// Res(E) and Res(E_{2,N}), derived from the constant terms a_0(E),
// a_0(w_{N^2} E), a_0(E_{2,N}) and the Hecke eigen-conditions on Div(C).
CuspDivisor residue_of_E(std::int64_t n);
CuspDivisor residue_of_E2N(std::int64_t n);

struct CuspLatticeReport {
  std::int64_t N, p, budget;
  std::int64_t aux_ell;  // l = -1 mod p, primitive root mod N
  std::int64_t aux_q;    // non-square mod N, q != -1 mod p; 0 when N = 2
  std::size_t dimension;
  bool dimension_two, span_matches, un_kills_c, un_fixes_pair;
  bool passed() const { return dimension_two && span_matches && un_kills_c && un_fixes_pair; }
  nlohmann::json to_json() const;
};

// Computes Div^0(C; F_p)[m'] using T_l - l - 1 for all primes l <= budget,
// l != N, and checks that it is spanned by c and infinity - [0] + c with the
// stated U_N action. Throws "increase budget" when the auxiliary primes are
// not available.
CuspLatticeReport verify_cusp_lattice(std::int64_t n, std::int64_t p, std::int64_t budget);

}  // namespace eiscong::eisenstein
