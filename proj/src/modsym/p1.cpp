#include "eiscong/modsym/p1.hpp"

#include "eiscong/arith/integer.hpp"
#include "eiscong/error.hpp"

namespace eiscong::modsym {

using arith::gcd;
using arith::mod;

P1List::P1List(std::int64_t level) : level_(level) {
  if (level < 1) throw Error("P1List: level must be positive");
  if (level > 6000) throw Error("P1List: level too large for the lookup table");
  const std::int64_t m = level;
  table_.assign(static_cast<std::size_t>(m * m), -1);
  std::vector<std::int64_t> units;
  for (std::int64_t u = 0; u < m; ++u)
    if (gcd(u, m) == 1) units.push_back(u % m);
  if (m == 1) units = {0};
  for (std::int64_t c = 0; c < m; ++c)
    for (std::int64_t d = 0; d < m; ++d) {
      if (table_[c * m + d] != -1) continue;
      if (gcd(gcd(c, d), m) != 1) continue;
      const int idx = static_cast<int>(reps_.size());
      reps_.emplace_back(c, d);
      for (std::int64_t u : units) table_[(u * c % m) * m + (u * d % m)] = idx;
    }
}

int P1List::index(std::int64_t c, std::int64_t d) const {
  return table_[mod(c, level_) * level_ + mod(d, level_)];
}

std::int64_t p1_size(std::int64_t level) { return arith::gamma0_index(level); }

Sl2Lift lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level) {
  if (level == 1) return {1, 0, 0, 1};
  c = mod(c, level);
  d = mod(d, level);
  if (gcd(gcd(c, d), level) != 1) throw Error("lift_to_sl2z: not an element of P^1(Z/M)");
  if (c == 0) c = level;
  while (gcd(c, d) != 1) d += level;
  // Solve a*d - b*c = 1.
  std::int64_t old_r = d, r = c, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  // old_s * d + (...) * c = 1
  const std::int64_t a = old_s;
  const std::int64_t b = (a * d - 1) / c;
  return {a, b, c, d};
}

}  // namespace eiscong::modsym
