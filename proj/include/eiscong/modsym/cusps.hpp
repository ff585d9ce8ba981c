#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/modsym/heilbronn.hpp"

namespace eiscong::modsym {

// A cusp num/den in lowest terms with den >= 0; infinity is 1/0.
struct Cusp {
  std::int64_t num;
  std::int64_t den;
  static Cusp make(std::int64_t num, std::int64_t den);
  static Cusp infinity() { return {1, 0}; }
  bool operator<(const Cusp& o) const { return std::pair(num, den) < std::pair(o.num, o.den); }
  bool operator==(const Cusp& o) const = default;
};

// Gamma_0(M)-equivalence of cusps.
bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level);

// Cusp classes of Gamma_0(M), numbered in order of first appearance.
class CuspList {
 public:
  explicit CuspList(std::int64_t level) : level_(level) {}
  std::int64_t level() const { return level_; }
  // Class index of the cusp, adding a new class when needed.
  std::size_t index(const Cusp& c);
  std::size_t size() const { return reps_.size(); }
  const Cusp& rep(std::size_t i) const { return reps_[i]; }

 private:
  std::int64_t level_;
  std::vector<Cusp> reps_;
  std::map<Cusp, std::size_t> memo_;
};

// Number of cusps of X_0(M): sum over d | M of phi(gcd(d, M/d)).
std::int64_t cusp_count(std::int64_t level);
// Genus of X_0(M) by the standard formula.
std::int64_t genus_x0(std::int64_t level);

// Cusps of X_0(N^2), N prime: infinity, [0], and [x] for x in (Z/N)^x,
// where [x] is the class of x/N with 1 <= x <= N - 1.
struct CuspLabel {
  enum class Kind { Infinity, Zero, Unit };
  Kind kind;
  std::int64_t x = 0;  // only for Unit, in [1, N - 1]

  static CuspLabel infinity() { return {Kind::Infinity, 0}; }
  static CuspLabel zero() { return {Kind::Zero, 0}; }
  static CuspLabel unit(std::int64_t x, std::int64_t n);
  // Position in the order infinity, [0], [1], ..., [N - 1].
  std::size_t ordinal() const;
  static CuspLabel from_ordinal(std::size_t i);
  // Width: 1 at infinity, N^2 at [0], N elsewhere.
  std::int64_t width(std::int64_t n) const;
  std::string to_string() const;
  bool operator==(const CuspLabel&) const = default;
};

// Class of gamma (det > 0) in the cusps of X_0(N^2), read off from its
// first column a/c.
CuspLabel cusp_class(const Mat2& gamma, std::int64_t n);
CuspLabel cusp_label(const Cusp& c, std::int64_t n);

}  // namespace eiscong::modsym
