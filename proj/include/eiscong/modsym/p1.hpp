#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace eiscong::modsym {

// The projective line P^1(Z/M): pairs (c, d) with gcd(c, d, M) = 1 modulo
// scaling by units. Classes are numbered in order of their smallest
// representative (lexicographic in (c, d)).
class P1List {
 public:
  explicit P1List(std::int64_t level);

  std::int64_t level() const { return level_; }
  std::size_t size() const { return reps_.size(); }
  // Class index of (c, d), or -1 when gcd(c, d, M) != 1.
  int index(std::int64_t c, std::int64_t d) const;
  // Normalized representative with 0 <= c, d < M.
  std::pair<std::int64_t, std::int64_t> entry(std::size_t i) const { return reps_[i]; }

 private:
  std::int64_t level_;
  std::vector<int> table_;  // level_ * level_ entries
  std::vector<std::pair<std::int64_t, std::int64_t>> reps_;
};

// Expected size M * prod_{q | M} (1 + 1/q).
std::int64_t p1_size(std::int64_t level);

// An SL_2(Z) matrix [[a, b], [c, d]] whose bottom row reduces to (c, d)
// modulo M. Requires gcd(c, d, M) = 1.
struct Sl2Lift {
  std::int64_t a, b, c, d;
};
Sl2Lift lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level);

}  // namespace eiscong::modsym
