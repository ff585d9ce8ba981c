#include "eiscong/modsym/cusps.hpp"

#include <cstdlib>

#include "eiscong/arith/integer.hpp"
#include "eiscong/error.hpp"

namespace eiscong::modsym {

using arith::gcd;
using arith::mod;

Cusp Cusp::make(std::int64_t num, std::int64_t den) {
  if (num == 0 && den == 0) throw Error("0/0 is not a cusp");
  if (den == 0) return infinity();
  std::int64_t g = gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

namespace {

// s with num * s = 1 mod den (s = 1 for infinity).
std::int64_t cusp_s(const Cusp& c) {
  if (c.den == 0) return 1;
  if (c.den == 1) return 0;
  return arith::invmod(c.num, c.den);
}

}  // namespace

bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level) {
  // Cremona: p1/q1 ~ p2/q2 iff s1 q2 = s2 q1 mod gcd(q1 q2, M).
  const std::int64_t g = gcd(static_cast<std::int64_t>(static_cast<__int128>(x.den) * y.den % level), level);
  const std::int64_t m = g == 0 ? level : g;
  const __int128 lhs = static_cast<__int128>(cusp_s(x)) * y.den;
  const __int128 rhs = static_cast<__int128>(cusp_s(y)) * x.den;
  return (lhs - rhs) % m == 0;
}

std::size_t CuspList::index(const Cusp& c) {
  auto it = memo_.find(c);
  if (it != memo_.end()) return it->second;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (cusps_equivalent(c, reps_[i], level_)) {
      memo_.emplace(c, i);
      return i;
    }
  }
  reps_.push_back(c);
  memo_.emplace(c, reps_.size() - 1);
  return reps_.size() - 1;
}

namespace {

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [q, e] : arith::factor_small(n)) r = r / q * (q - 1);
  return r;
}

}  // namespace

std::int64_t cusp_count(std::int64_t level) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= level; ++d)
    if (level % d == 0) total += euler_phi(gcd(d, level / d));
  return total;
}

std::int64_t genus_x0(std::int64_t level) {
  const auto factors = arith::factor_small(level);
  const std::int64_t index = arith::gamma0_index(level);
  // Elliptic points of order 2 and 3.
  std::int64_t e2 = 1, e3 = 1;
  for (auto [q, e] : factors) {
    if (level % 4 == 0) e2 = 0;
    else if (q == 2) e2 *= 1;
    else e2 *= (q % 4 == 1) ? 2 : 0;
    if (level % 9 == 0) e3 = 0;
    else if (q == 3) e3 *= 1;
    else e3 *= (q % 3 == 1) ? 2 : 0;
  }
  const std::int64_t c = cusp_count(level);
  // g = 1 + index/12 - e2/4 - e3/3 - c/2, computed over 12.
  const std::int64_t twelve_g = 12 + index - 3 * e2 - 4 * e3 - 6 * c;
  if (twelve_g % 12 != 0) throw Error("genus formula produced a non-integer");
  return twelve_g / 12;
}

CuspLabel CuspLabel::unit(std::int64_t x, std::int64_t n) {
  x = mod(x, n);
  if (x == 0) throw Error("CuspLabel::unit: x must be a unit mod N");
  return {Kind::Unit, x};
}

std::size_t CuspLabel::ordinal() const {
  switch (kind) {
    case Kind::Infinity: return 0;
    case Kind::Zero: return 1;
    case Kind::Unit: return static_cast<std::size_t>(1 + x);
  }
  return 0;
}

CuspLabel CuspLabel::from_ordinal(std::size_t i) {
  if (i == 0) return infinity();
  if (i == 1) return zero();
  return {Kind::Unit, static_cast<std::int64_t>(i - 1)};
}

std::int64_t CuspLabel::width(std::int64_t n) const {
  switch (kind) {
    case Kind::Infinity: return 1;
    case Kind::Zero: return n * n;
    case Kind::Unit: return n;
  }
  return 0;
}

std::string CuspLabel::to_string() const {
  switch (kind) {
    case Kind::Infinity: return "inf";
    case Kind::Zero: return "[0]";
    case Kind::Unit: return "[" + std::to_string(x) + "]";
  }
  return "?";
}

CuspLabel cusp_label(const Cusp& c, std::int64_t n) {
  if (c.den == 0) return CuspLabel::infinity();
  const std::int64_t x = c.num, y = c.den;  // y > 0, coprime
  if (y % (n * n) == 0) return CuspLabel::infinity();
  if (y % n != 0) return CuspLabel::zero();
  const std::int64_t u = y / n;
  return CuspLabel::unit(mod(u % n * mod(x, n), n), n);
}

CuspLabel cusp_class(const Mat2& gamma, std::int64_t n) {
  if (gamma.det() <= 0) throw Error("cusp_class: determinant must be positive");
  if (gamma.c == 0) return CuspLabel::infinity();
  return cusp_label(Cusp::make(gamma.a, gamma.c), n);
}

}  // namespace eiscong::modsym
