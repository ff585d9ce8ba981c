#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/arith/linalg.hpp"
#include "eiscong/modsym/cusps.hpp"
#include "eiscong/modsym/heilbronn.hpp"
#include "eiscong/modsym/p1.hpp"

namespace eiscong::modsym {

using arith::FieldPolicy;
using arith::Matrix;
using arith::Subspace;

// A Hecke operator label: T_n (n coprime to the level) or U_q (q | level).
struct HeckeOp {
  enum class Kind { T, U };
  Kind kind;
  std::int64_t n;
  static HeckeOp T(std::int64_t n) { return {Kind::T, n}; }
  static HeckeOp U(std::int64_t n) { return {Kind::U, n}; }
  std::string to_string() const { return (kind == Kind::T ? "T" : "U") + std::to_string(n); }
  bool operator==(const HeckeOp&) const = default;
};

// Weight-2 modular symbols for Gamma_0(M) as the quotient of the free module
// on P^1(Z/M) by the 2-term and 3-term Manin relations. With sign = +1 the
// star relation x = x* is also imposed.
template <FieldPolicy F>
class ManinSymbolSpace {
 public:
  using value_type = typename F::value_type;
  using SparseVec = std::vector<std::pair<std::size_t, value_type>>;

  ManinSymbolSpace(std::int64_t level, F field, int sign = 0);

  std::int64_t level() const { return level_; }
  const F& field() const { return field_; }
  int sign() const { return sign_; }
  const P1List& p1() const { return p1_; }
  std::size_t dimension() const { return gens_.size(); }

  // The Manin symbol (c : d) as a dense vector in the quotient basis.
  std::vector<value_type> symbol(std::int64_t c, std::int64_t d) const;
  const SparseVec& symbol_expression(std::size_t p1_index) const { return expr_[p1_index]; }
  // P^1 index of the symbol chosen for the j-th basis vector.
  std::size_t generator(std::size_t j) const { return gens_[j]; }

  // The modular symbol {alpha, beta} via continued fractions.
  std::vector<value_type> modular_symbol(const Cusp& alpha, const Cusp& beta) const;

  // Matrix of T_n or U_q on the whole quotient (columns = images of basis).
  Matrix<F> hecke_matrix(const HeckeOp& op) const;
  // Matrix of the sum over `mats` of the right action on basis symbols.
  Matrix<F> heilbronn_action(const std::vector<Mat2>& mats) const;

  // Images of the columns of `vectors` (basis coordinates) under T_n / U_q,
  // without forming the full operator matrix.
  Matrix<F> apply_hecke(const HeckeOp& op, const Matrix<F>& vectors) const;
  Matrix<F> apply_heilbronn(const std::vector<Mat2>& mats, const Matrix<F>& vectors) const;

  // Involution induced by (c : d) -> (-c : d). Identity when sign = +1.
  Matrix<F> star_involution() const;
  Subspace<F> plus_subspace() const;

  // Cusp classes in the target of the boundary map. With sign = +1 the
  // cusps c and -c are identified.
  const std::vector<Cusp>& boundary_cusps() const { return cusps_; }
  std::size_t cusp_index(const Cusp& c) const;
  Matrix<F> boundary_matrix() const { return boundary_; }
  Subspace<F> cuspidal_subspace() const;

 private:
  void build_relations();
  void build_boundary();

  std::int64_t level_;
  F field_;
  int sign_;
  P1List p1_;
  std::vector<SparseVec> expr_;
  std::vector<std::size_t> gens_;
  std::vector<Mat2> heilbronn_for(const HeckeOp& op) const;
  std::vector<Cusp> cusps_;
  Matrix<F> boundary_;
};

// Build a space over Q (p = 0) or F_p. Throws "bad characteristic" when p | 6M.
ManinSymbolSpace<arith::RationalField> build_space_q(std::int64_t level, int sign = 0);
ManinSymbolSpace<arith::PrimeField> build_space_fp(std::int64_t level, std::uint64_t p, int sign = 0);

// Matrix of the operator restricted to a stable subspace (throws otherwise).
template <FieldPolicy F>
Matrix<F> hecke(const ManinSymbolSpace<F>& space, const HeckeOp& op, const Subspace<F>& sub) {
  Matrix<F> images = space.apply_hecke(op, sub.basis());
  Matrix<F> out(space.field(), sub.dimension(), sub.dimension());
  for (std::size_t j = 0; j < sub.dimension(); ++j) {
    auto c = sub.coordinates(images.column(j));
    if (!c) throw Error("subspace is not stable under " + op.to_string());
    out.set_column(j, *c);
  }
  return out;
}

// Degeneracy map {a, b} -> {t a, t b} from level M to a space of level L
// with t L | M.
template <FieldPolicy F>
Matrix<F> degeneracy_map(const ManinSymbolSpace<F>& from, const ManinSymbolSpace<F>& to, std::int64_t t);

// Cuspidal new subspace of a level N^2 space: kernel of both degeneracy maps
// to level N.
template <FieldPolicy F>
Subspace<F> new_subspace(const ManinSymbolSpace<F>& space, std::int64_t n);

// Sturm bound ceil(k * [SL2(Z) : Gamma_0(M)] / 12) for weight k = 2.
std::int64_t sturm_bound(std::int64_t level);

// Right action of an integer matrix on (c, d): (c a + d c', c b + d d').
inline std::pair<std::int64_t, std::int64_t> act(std::int64_t c, std::int64_t d, const Mat2& h) {
  return {c * h.a + d * h.c, c * h.b + d * h.d};
}

extern template class ManinSymbolSpace<arith::RationalField>;
extern template class ManinSymbolSpace<arith::PrimeField>;

}  // namespace eiscong::modsym
