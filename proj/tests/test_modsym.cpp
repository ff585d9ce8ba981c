#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/linalg.hpp"
#include "eiscong/modsym/cache.hpp"
#include "eiscong/modsym/cusps.hpp"
#include "eiscong/modsym/heilbronn.hpp"
#include "eiscong/modsym/manin.hpp"
#include "eiscong/modsym/p1.hpp"

using namespace eiscong;
using namespace eiscong::modsym;
using arith::Matrix;
using arith::PrimeField;
using arith::RationalField;

namespace {

// Genus oracle from brute-force counts of elliptic points, cusps and index.
struct GenusData {
  std::int64_t index, e2, e3, cusps, genus;
};

std::int64_t brute_phi(std::int64_t n) {
  std::int64_t r = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++r;
  return r;
}

GenusData genus_oracle(std::int64_t m) {
  GenusData g{};
  for (std::int64_t c = 0; c < m; ++c)
    for (std::int64_t d = 0; d < m; ++d)
      if (std::gcd(std::gcd(c, d), m) == 1) ++g.index;
  g.index /= brute_phi(m) == 0 ? 1 : brute_phi(m);
  if (m == 1) g.index = 1;
  for (std::int64_t x = 0; x < m; ++x) {
    if ((x * x + 1) % m == 0) ++g.e2;
    if ((x * x + x + 1) % m == 0) ++g.e3;
  }
  if (m == 1) g.e2 = g.e3 = 1;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) g.cusps += brute_phi(std::gcd(d, m / d));
  g.genus = (12 + g.index - 3 * g.e2 - 4 * g.e3 - 6 * g.cusps) / 12;
  return g;
}

template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
  return a * b - b * a;
}

}  // namespace

TEST_CASE("P1 size and lifts") {
  CHECK(P1List(11).size() == 12);
  CHECK(P1List(361).size() == 380);
  for (std::int64_t m = 1; m <= 60; ++m) {
    P1List p1(m);
    CHECK(static_cast<std::int64_t>(p1.size()) == genus_oracle(m).index);
    CHECK(static_cast<std::int64_t>(p1.size()) == p1_size(m));
    for (std::size_t i = 0; i < p1.size(); ++i) {
      auto [c, d] = p1.entry(i);
      auto g = lift_to_sl2z(c, d, m);
      CHECK(g.a * g.d - g.b * g.c == 1);
      CHECK(p1.index(g.c, g.d) == static_cast<int>(i));
    }
  }
}

TEST_CASE("Heilbronn matrices") {
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 97}) {
    auto hc = heilbronn_cremona(p);
    for (const auto& h : hc) CHECK(h.det() == p);
  }
  for (std::int64_t n : {1, 2, 4, 6, 19, 25}) {
    auto hm = heilbronn_merel(n);
    CHECK(!hm.empty());
    for (const auto& h : hm) CHECK(h.det() == n);
  }
}

TEST_CASE("cusps of X_0(N^2)") {
  CHECK(cusp_class({1, 5, 0, 3}, 19) == CuspLabel::infinity());
  CHECK(cusp_class({0, -1, 1, 0}, 19) == CuspLabel::zero());
  CHECK(cusp_class({3, 1, 19, 7}, 19) == CuspLabel::unit(3, 19));
  CHECK_THROWS(cusp_class({0, 1, 1, 0}, 19));
  CHECK(cusp_count(361) == 20);
  CHECK(cusp_count(11) == 2);

  // Labels agree with Gamma_0(N^2)-equivalence on random fractions.
  std::mt19937_64 rng(7);
  for (std::int64_t n : {5, 7, 19}) {
    const std::int64_t m = n * n;
    std::vector<Cusp> sample;
    for (int k = 0; k < 120; ++k) {
      std::int64_t den = static_cast<std::int64_t>(rng() % 3000);
      std::int64_t num = static_cast<std::int64_t>(rng() % 6001) - 3000;
      if (den == 0 && num == 0) continue;
      if (den == 0) num = 1;
      if (std::gcd(num, den) != 1) continue;
      sample.push_back(Cusp::make(num, den));
    }
    for (int k = 1; k < n; ++k) sample.push_back(Cusp::make(k, n));
    for (const auto& x : sample)
      for (const auto& y : sample)
        CHECK((cusp_label(x, n) == cusp_label(y, n)) == cusps_equivalent(x, y, m));
  }
}

TEST_CASE("dimension formula") {
  auto s11 = build_space_q(11);
  CHECK(s11.p1().size() == 12);
  CHECK(s11.dimension() == 3);
  CHECK(s11.cuspidal_subspace().dimension() == 2);

  std::vector<std::int64_t> levels;
  for (std::int64_t m = 1; m <= 120; ++m) levels.push_back(m);
  for (std::int64_t m = 121; m <= 2600; m += 157) levels.push_back(m);
  for (std::int64_t m : levels) {
    auto g = genus_oracle(m);
    CHECK(g.genus == genus_x0(m));
    CHECK(g.cusps == cusp_count(m));
    auto space = build_space_q(m);
    INFO("M = " << m);
    CHECK(static_cast<std::int64_t>(space.dimension()) == 2 * g.genus + g.cusps - 1);
    CHECK(space.boundary_cusps().size() == static_cast<std::size_t>(g.cusps));
    if (m <= 120) CHECK(static_cast<std::int64_t>(space.cuspidal_subspace().dimension()) == 2 * g.genus);
  }
}

TEST_CASE("boundary image has degree zero") {
  for (std::int64_t m : {11, 37, 100, 361}) {
    auto space = build_space_q(m);
    auto b = space.boundary_matrix();
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpq_class s = 0;
      for (std::size_t i = 0; i < b.rows(); ++i) s += b(i, j);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("modular symbols from continued fractions") {
  for (std::int64_t m : {11, 25, 49}) {
    auto space = build_space_q(m);
    for (std::size_t i = 0; i < space.p1().size(); ++i) {
      auto [c, d] = space.p1().entry(i);
      auto g = lift_to_sl2z(c, d, m);
      CHECK(space.modular_symbol(Cusp::make(g.b, g.d), Cusp::make(g.a, g.c)) == space.symbol(c, d));
    }
    auto a = Cusp::make(3, 7), b = Cusp::make(-5, 13), c = Cusp::make(22, 9);
    auto ab = space.modular_symbol(a, b), bc = space.modular_symbol(b, c), ac = space.modular_symbol(a, c);
    for (std::size_t k = 0; k < ab.size(); ++k) CHECK(ab[k] + bc[k] == ac[k]);
  }
}

TEST_CASE("level 361 dimensions") {
  auto space = build_space_q(361);
  CHECK(space.p1().size() == 380);
  CHECK(space.boundary_cusps().size() == 20);
  CHECK(space.dimension() == 63);
  auto cusp = space.cuspidal_subspace();
  CHECK(cusp.dimension() == 44);

  auto star = space.star_involution();
  CHECK(star * star == Matrix<RationalField>::identity(RationalField{}, space.dimension()));
  auto plus = space.plus_subspace();
  // g + (number of cusp classes modulo c ~ -c) - 1 = 22 + 11 - 1.
  CHECK(plus.dimension() == 32);

  auto t2 = space.hecke_matrix(HeckeOp::T(2));
  auto t3 = space.hecke_matrix(HeckeOp::T(3));
  CHECK(commutator(star, t2).is_zero());
  CHECK(commutator(star, t3).is_zero());
  auto t2c = hecke(space, HeckeOp::T(2), cusp);
  auto t3c = hecke(space, HeckeOp::T(3), cusp);
  CHECK(commutator(t2c, t3c).is_zero());
  CHECK(arith::charpoly(t2c).size() == 45);

  auto nw = new_subspace(space, 19);
  CHECK(nw.dimension() == 40);
  for (std::int64_t ell : {2, 3, 5}) CHECK_NOTHROW(hecke(space, HeckeOp::T(ell), nw));

  auto plus_space = build_space_q(361, 1);
  CHECK(plus_space.dimension() == 32);
  CHECK(plus_space.boundary_cusps().size() == 11);
  CHECK(plus_space.cuspidal_subspace().dimension() == 22);
  CHECK(new_subspace(plus_space, 19).dimension() == 20);
}

TEST_CASE("Hecke operators commute") {
  for (std::int64_t m : {33, 49, 121}) {
    auto space = build_space_q(m);
    std::vector<Matrix<RationalField>> ops;
    for (std::int64_t n = 2; n <= 13; ++n) {
      if (std::gcd(n, m) == 1) ops.push_back(space.hecke_matrix(HeckeOp::T(n)));
      else if (arith::is_prime(static_cast<std::uint64_t>(n)) && m % n == 0)
        ops.push_back(space.hecke_matrix(HeckeOp::U(n)));
    }
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j) CHECK(commutator(ops[i], ops[j]).is_zero());
  }
  {
    auto space = build_space_q(121, 1);
    auto basis = space.cuspidal_subspace().basis();
    for (auto op : {HeckeOp::T(2), HeckeOp::T(7), HeckeOp::U(11)})
      CHECK(space.apply_hecke(op, basis) == space.hecke_matrix(op) * basis);
  }
  // T_4 = T_2^2 - 2 and T_6 = T_2 T_3 at a level coprime to 6.
  auto space = build_space_q(25);
  auto t2 = space.hecke_matrix(HeckeOp::T(2));
  auto t3 = space.hecke_matrix(HeckeOp::T(3));
  CHECK(space.hecke_matrix(HeckeOp::T(4)) == t2 * t2 - Matrix<RationalField>::identity({}, t2.rows()).scaled(2));
  CHECK(space.hecke_matrix(HeckeOp::T(6)) == t2 * t3);
}

TEST_CASE("boundary is Hecke-equivariant at level N^2") {
  for (std::int64_t n : {5, 7, 19}) {
    const std::int64_t m = n * n;
    auto space = build_space_q(m);
    const auto& cusps = space.boundary_cusps();
    const std::size_t nc = cusps.size();
    std::map<std::size_t, std::size_t> to_space;  // label ordinal -> boundary row
    for (std::size_t i = 0; i < nc; ++i) to_space[cusp_label(cusps[i], n).ordinal()] = i;
    REQUIRE(to_space.size() == static_cast<std::size_t>(n + 1));
    auto row = [&](const CuspLabel& l) { return to_space.at(l.ordinal()); };
    auto b = space.boundary_matrix();
    for (std::int64_t ell : {2, 3, 5, 7, 11, 13}) {
      if (ell == n) continue;
      // T_l inf = (l+1) inf, T_l [0] = (l+1) [0], T_l [x] = l [l x] + [x / l].
      Matrix<RationalField> d(RationalField{}, nc, nc);
      d(row(CuspLabel::infinity()), row(CuspLabel::infinity())) = ell + 1;
      d(row(CuspLabel::zero()), row(CuspLabel::zero())) = ell + 1;
      const std::int64_t inv = arith::invmod(ell, n);
      for (std::int64_t x = 1; x < n; ++x) {
        const std::size_t src = row(CuspLabel::unit(x, n));
        d(row(CuspLabel::unit(ell * x, n)), src) += ell;
        d(row(CuspLabel::unit(inv * x, n)), src) += 1;
      }
      CHECK(b * space.hecke_matrix(HeckeOp::T(ell)) == d * b);
    }
    // Standard U_N: U inf = N inf, U [x] = N inf, U [0] = [0] + sum [x].
    Matrix<RationalField> u(RationalField{}, nc, nc);
    u(row(CuspLabel::infinity()), row(CuspLabel::infinity())) = n;
    for (std::int64_t x = 1; x < n; ++x) u(row(CuspLabel::infinity()), row(CuspLabel::unit(x, n))) = n;
    u(row(CuspLabel::zero()), row(CuspLabel::zero())) = 1;
    for (std::int64_t x = 1; x < n; ++x) u(row(CuspLabel::unit(x, n)), row(CuspLabel::zero())) = 1;
    CHECK(b * space.hecke_matrix(HeckeOp::U(n)) == u * b);
  }
}

TEST_CASE("reduction compatibility") {
  for (std::int64_t m : {11, 23, 49, 121, 169}) {
    auto q = build_space_q(m);
    auto cq = arith::charpoly(q.hecke_matrix(HeckeOp::T(m % 2 == 0 ? 3 : 2)));
    for (std::uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 101ULL}) {
      if ((6 * static_cast<std::uint64_t>(m)) % p == 0) continue;
      INFO("M = " << m << ", p = " << p);
      auto s = build_space_fp(m, p);
      CHECK(s.dimension() == q.dimension());
      CHECK(s.cuspidal_subspace().dimension() == q.cuspidal_subspace().dimension());
      auto cp = arith::charpoly(s.hecke_matrix(HeckeOp::T(m % 2 == 0 ? 3 : 2)));
      REQUIRE(cp.size() == cq.size());
      for (std::size_t i = 0; i < cp.size(); ++i) CHECK(cp[i] == s.field().from_rational(cq[i]));
    }
  }
  CHECK_THROWS_WITH(build_space_fp(361, 19), "bad characteristic");
  CHECK_THROWS_WITH(build_space_fp(361, 3), "bad characteristic");
  CHECK_THROWS_WITH(build_space_fp(35, 5), "bad characteristic");
}

TEST_CASE("Sturm bound") {
  CHECK(sturm_bound(361) == 64);
  CHECK(sturm_bound(2209) == 376);
  CHECK(sturm_bound(11) == 2);
}

TEST_CASE("Hecke cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "eiscong_cache_test";
  fs::remove_all(dir);
  HeckeCache cache(dir);
  auto space = build_space_q(121, 1);
  SubspaceHecke<RationalField> fresh(space, space.cuspidal_subspace(), &cache);
  fresh.prefetch({HeckeOp::T(2), HeckeOp::T(3), HeckeOp::T(5), HeckeOp::U(11)}, 2);
  auto t2 = fresh.get(HeckeOp::T(2));
  CHECK(t2 == hecke(space, HeckeOp::T(2), space.cuspidal_subspace()));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
    ++files;
  }
  CHECK(files == 8);

  // A second reader gets identical matrices from disk.
  SubspaceHecke<RationalField> warm(space, space.cuspidal_subspace(), &cache);
  const HeckeKey key{121, 1, "Q", HeckeOp::T(2), subspace_hash(space.cuspidal_subspace())};
  REQUIRE(cache.load(key, RationalField{}).has_value());
  CHECK(*cache.load(key, RationalField{}) == t2);
  CHECK(warm.get(HeckeOp::T(2)) == t2);

  // Corrupt entries are ignored and recomputed.
  {
    std::ofstream out(dir / (key.digest() + ".triplets"), std::ios::app);
    out << "0 0 12345\n";
  }
  CHECK_FALSE(cache.load(key, RationalField{}).has_value());
  SubspaceHecke<RationalField> again(space, space.cuspidal_subspace(), &cache);
  CHECK(again.get(HeckeOp::T(2)) == t2);
  CHECK(cache.load(key, RationalField{}).has_value());
  fs::remove_all(dir);
}
