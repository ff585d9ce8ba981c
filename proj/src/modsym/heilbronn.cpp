#include "eiscong/modsym/heilbronn.hpp"

#include <cstdlib>

#include "eiscong/error.hpp"

namespace eiscong::modsym {
namespace {

// a / b rounded to the nearest integer, ties away from zero.
std::int64_t round_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = (2 * std::llabs(a) + std::llabs(b)) / (2 * std::llabs(b));
  return ((a < 0) != (b < 0)) ? -q : q;
}

}  // namespace

std::vector<Mat2> heilbronn_cremona(std::int64_t p) {
  if (p < 2) throw Error("heilbronn_cremona: determinant must be a prime");
  if (p == 2) return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
  std::vector<Mat2> out;
  out.push_back({1, 0, 0, p});
  for (std::int64_t r = -(p - 1) / 2; r <= (p - 1) / 2; ++r) {
    std::int64_t x1 = p, x2 = -r, y1 = 0, y2 = 1, a = -p, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      const std::int64_t q = round_div(a, b);
      const std::int64_t c = a - b * q;
      a = -b;
      b = c;
      const std::int64_t x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      const std::int64_t y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

std::vector<Mat2> heilbronn_merel(std::int64_t n) {
  if (n < 1) throw Error("heilbronn_merel: determinant must be positive");
  std::vector<Mat2> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    const std::int64_t q = n / a;
    if (q * a == n) {
      const std::int64_t d = q;
      for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, d});
      for (std::int64_t c = 1; c < d; ++c) out.push_back({a, 0, c, d});
    }
    for (std::int64_t d = q + 1; d <= n; ++d) {
      const std::int64_t bc = a * d - n;
      for (std::int64_t c = bc / a + 1; c < d; ++c)
        if (bc % c == 0) out.push_back({a, bc / c, c, d});
    }
  }
  return out;
}

}  // namespace eiscong::modsym
