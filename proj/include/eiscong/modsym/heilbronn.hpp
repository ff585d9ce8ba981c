#pragma once

#include <cstdint>
#include <vector>

namespace eiscong::modsym {

// Integer matrix [[a, b], [c, d]].
struct Mat2 {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
};

// Cremona's Heilbronn matrices of determinant p (p prime), from the
// continued-fraction expansions of p / r for |r| <= (p - 1) / 2.
std::vector<Mat2> heilbronn_cremona(std::int64_t p);

// Merel's set of matrices [[a, b], [c, d]] with determinant n, a > b >= 0,
// d > c >= 0. Valid for every n >= 1, including n dividing the level.
std::vector<Mat2> heilbronn_merel(std::int64_t n);

}  // namespace eiscong::modsym
