#include <algorithm>
#include <set>

#include "doctest.h"
#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/poly.hpp"
#include "eiscong/congruence/congruence.hpp"

using namespace eiscong;
using namespace eiscong::congruence;
using arith::BigInt;
using arith::BigRational;
using arith::Matrix;
using arith::RationalField;

namespace {

const IntPoly kGolden{BigInt(-1), BigInt(-1), BigInt(1)};

// Characteristic polynomial of multiplication by a on Q[t]/(m).
IntPoly mult_charpoly(const OrderElement& a) {
  auto mm = arith::multiplication_matrix(a);
  Matrix<RationalField> m(RationalField{}, mm.size(), mm.size());
  for (std::size_t i = 0; i < mm.size(); ++i)
    for (std::size_t j = 0; j < mm.size(); ++j) m(i, j) = mm[i][j];
  IntPoly out;
  for (const auto& c : arith::charpoly(m)) {
    REQUIRE(c.get_den() == 1);  // a is an algebraic integer
    out.push_back(c.get_num());
  }
  return out;
}

using Signature = std::vector<IntPoly>;

// Basis-free description of an orbit: char polys of T_2, T_3, T_5, T_7.
std::multiset<Signature> signatures(NewDecomposition& dec) {
  std::multiset<Signature> out;
  for (const auto& orbit : dec.orbits()) {
    Signature s;
    for (std::int64_t ell : {2, 3, 5, 7}) s.push_back(mult_charpoly(dec.eigenvalue(orbit, modsym::HeckeOp::T(ell))));
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("Sturm bound") {
  CHECK(modsym::sturm_bound(361) == 64);
  CHECK(modsym::sturm_bound(11) == 2);
  CHECK(modsym::sturm_bound(1) == 1);
}

TEST_CASE("Eisenstein locus") {
  auto r = eisenstein_locus(19, 5);
  CHECK(r.verdict_m);
  CHECK_FALSE(r.verdict_m_old);
  CHECK(r.matches_theorem());
  CHECK(r.cuspidal_dim == 22);
  CHECK(r.sturm == 64);
  auto r13 = eisenstein_locus(13, 5);
  CHECK_FALSE(r13.verdict_m);
  CHECK_FALSE(r13.verdict_m_old);
  CHECK(eisenstein_locus(29, 5).verdict_m);
  CHECK_THROWS_WITH(eisenstein_locus(11, 5), "outside theorem hypothesis");
  CHECK_THROWS(eisenstein_locus(19, 3));
  for (std::int64_t p : {5, 7})
    for (std::int64_t n : arith::primes_up_to(30)) {
      if (n == p || n % p == 1) continue;
      INFO("N = " << n << ", p = " << p);
      CHECK(eisenstein_locus(n, p).matches_theorem());
    }
}

TEST_CASE("new-space decomposition at level 361") {
  NewDecomposition dec(19);
  CHECK(dec.new_dimension() == 20);
  int total = 0;
  bool golden = false;
  for (const auto& orbit : dec.orbits()) {
    total += static_cast<int>(orbit.block.cols());
    CHECK(arith::degree(orbit.minpoly) == static_cast<int>(orbit.block.cols()));
    if (orbit.minpoly == kGolden) golden = true;
    // Every a_l has the same characteristic polynomial as T_l on the orbit,
    // so all Galois conjugates of the eigensystem occur in it.
    arith::Subspace<RationalField> sub(orbit.block);
    for (std::int64_t ell : {2, 3, 5, 7, 11, 13, 23}) {
      auto op = modsym::HeckeOp::T(ell);
      auto a = dec.eigenvalue(orbit, op);
      IntPoly block_cp;
      for (const auto& c : arith::charpoly(sub.restrict(dec.hecke_on_new(op)))) block_cp.push_back(c.get_num());
      CHECK(block_cp == mult_charpoly(a));
    }
    // Multiplicativity for coprime indices.
    for (std::int64_t l : {2, 3, 5, 7})
      for (std::int64_t q : {3, 5, 11, 13})
        if (l < q) {
          auto prod = dec.eigenvalue(orbit, modsym::HeckeOp::T(l)) * dec.eigenvalue(orbit, modsym::HeckeOp::T(q));
          CHECK(dec.eigenvalue(orbit, modsym::HeckeOp::T(l * q)) == prod);
        }
    // a_4 = a_2^2 - 2.
    auto a2 = dec.eigenvalue(orbit, modsym::HeckeOp::T(2));
    CHECK(dec.eigenvalue(orbit, modsym::HeckeOp::T(4)) == a2 * a2 - 2);
  }
  CHECK(total == 20);
  CHECK(golden);
}

TEST_CASE("decomposition does not depend on the auxiliary prime order") {
  NewDecomposition a(19);
  DecomposeOptions opts;
  opts.split_primes = {7, 3, 5, 2, 11, 13, 17, 23, 29, 31};
  NewDecomposition b(19, opts);
  CHECK(signatures(a) == signatures(b));
  NewDecomposition c(13);
  CHECK(c.new_dimension() == 8);
}

TEST_CASE("congruent newform for (19, 5)") {
  auto cn = find_congruent_newform(19, 5);
  const auto& es = cn.eigensystem;
  CHECK(es.minpoly == kGolden);
  CHECK(es.convention == "a2=t");
  CHECK(es.level == 361);
  CHECK(es.at(2) == OrderElement::generator(kGolden));
  CHECK(es.at(19).is_zero());
  CHECK(es.at(7) == OrderElement::from_int(kGolden, 3));
  CHECK(cn.prime.p == 5);
  CHECK(cn.prime.ramification == 2);
  CHECK(cn.prime.residue_degree == 1);
  CHECK(cn.prime.p_maximal);
  CHECK(arith::in_prime(es.at(2) - 3, cn.prime));

  auto cert = congruence_depth(es, cn.prime, 19);
  CHECK(cert.s == 1);
  CHECK(cert.witness == 2);
  CHECK(cert.bound == 64);
  CHECK(*arith::valuation(es.at(cert.witness) - (cert.witness + 1), cn.prime) == 1);
  // Bold rows of the table: the congruence persists modulo P^2.
  for (std::int64_t ell : {7, 13, 41, 47})
    CHECK(*arith::valuation(es.at(ell) - (ell + 1), cn.prime) >= 2);
  for (std::int64_t ell : arith::primes_up_to(64))
    if (ell != 19) CHECK(*arith::valuation(es.at(ell) - (ell + 1), cn.prime) >= cert.s);

  auto j = es.to_json();
  CHECK(j.at("convention") == "a2=t");
  CHECK(j.at("a").at("2") == nlohmann::json::parse(R"([["0","1"],["1","1"]])"));
  auto back = Eigensystem::from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.minpoly == es.minpoly);
  CHECK(back.a.size() == es.a.size());
  for (const auto& [ell, v] : es.a) CHECK(back.at(ell) == v);
  CHECK(cert.to_json().at("s") == "1");
}

TEST_CASE("congruent newform consistency") {
  CHECK_THROWS_WITH(find_congruent_newform(13, 5), "precondition failed: the Eisenstein locus is empty");
  auto cn = find_congruent_newform(13, 7);
  CHECK(congruence_depth(cn.eigensystem, cn.prime, 13).s >= 1);
  CHECK(arith::in_prime(cn.eigensystem.at(13), cn.prime));
}

TEST_CASE("decompose_new") {
  auto all = decompose_new(19);
  int total = 0;
  for (const auto& es : all) {
    total += es.degree();
    for (const auto& [ell, a] : es.a) CHECK(a.is_integral());
    CHECK(es.bound == 64);
    CHECK(es.a.size() == arith::primes_up_to(64).size());
  }
  CHECK(total == 20);
  DecomposeOptions tight;
  tight.degree_cap = 3;
  CHECK_THROWS_WITH(decompose_new(19, tight), "Hecke-field degree 4 of an orbit exceeds cap 3");
}
