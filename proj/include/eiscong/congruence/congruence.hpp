#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/arith/linalg.hpp"
#include "eiscong/arith/number_field.hpp"
#include "eiscong/modsym/cache.hpp"
#include "eiscong/modsym/manin.hpp"
#include "json.hpp"

namespace eiscong::congruence {

using arith::IntPoly;
using arith::OrderElement;
using arith::PrimeIdeal;
using modsym::HeckeOp;

nlohmann::json to_json(const OrderElement& a);
OrderElement order_element_from_json(const nlohmann::json& j);

struct EisensteinLocusReport {
  std::int64_t N, p;
  std::int64_t sturm;
  std::vector<std::int64_t> primes_used;
  std::size_t cuspidal_dim;  // cuspidal plus-space over F_p
  std::size_t dim_m, dim_m_old;
  bool verdict_m, verdict_m_old;
  bool expected;  // N = -1 mod p
  bool matches_theorem() const { return verdict_m == expected && !verdict_m_old; }
  nlohmann::json to_json() const;
};

// Simultaneous kernel of T_l - (l + 1) for primes l <= sturm bound, l != N,
// on the cuspidal plus space of level N^2 over F_p, then of U_N (m) and of
// U_N - 1 (m_old). Throws "outside theorem hypothesis" when N = 1 mod p.
EisensteinLocusReport eisenstein_locus(std::int64_t n, std::int64_t p, std::optional<std::int64_t> sturm = {});

// A Hecke eigensystem: a_l in Z[t]/(m) where t is the eigenvalue of the
// generating operator named by `convention` (e.g. "a2=t").
struct Eigensystem {
  std::int64_t level;
  IntPoly minpoly;
  std::map<std::int64_t, OrderElement> a;
  std::string convention;
  std::int64_t bound;

  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
  const OrderElement& at(std::int64_t ell) const;
  nlohmann::json to_json() const;
  static Eigensystem from_json(const nlohmann::json& j);
};

struct DecomposeOptions {
  std::int64_t bound = 0;  // a_l stored for primes l <= bound; 0 means the Sturm bound
  int degree_cap = 8;
  const modsym::HeckeCache* cache = nullptr;
  unsigned threads = 1;
  // Auxiliary primes tried in this order to split blocks; empty means
  // increasing primes up to the Sturm bound.
  std::vector<std::int64_t> split_primes;
};

// Decomposition of the new cuspidal plus space of level N^2 over Q into
// Hecke orbits.
class NewDecomposition {
 public:
  struct Orbit {
    arith::Matrix<arith::RationalField> block;  // columns in new-subspace coordinates
    HeckeOp generator;
    IntPoly minpoly;
  };

  NewDecomposition(std::int64_t n, DecomposeOptions opts = {});
  NewDecomposition(const NewDecomposition&) = delete;
  NewDecomposition& operator=(const NewDecomposition&) = delete;

  std::int64_t N() const { return n_; }
  std::size_t new_dimension() const { return hecke_->subspace().dimension(); }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  // Operator matrix on the new subspace (memoized, cached on disk if set).
  arith::Matrix<arith::RationalField> hecke_on_new(const HeckeOp& op) { return hecke_->get(op); }
  // Eigenvalue of T_n / U_q on the orbit, as g(t) with t the generator's
  // eigenvalue.
  OrderElement eigenvalue(const Orbit& orbit, const HeckeOp& op);
  // Eigensystem with a_l for all primes l <= bound (U_N at l = N).
  Eigensystem eigensystem(const Orbit& orbit, std::int64_t bound);

 private:
  void split(const arith::Matrix<arith::RationalField>& block, std::size_t from);

  std::int64_t n_;
  DecomposeOptions opts_;
  std::vector<std::int64_t> split_primes_;
  modsym::ManinSymbolSpace<arith::RationalField> space_;
  std::unique_ptr<modsym::SubspaceHecke<arith::RationalField>> hecke_;
  std::vector<Orbit> orbits_;
};

// All orbits, sorted by degree and then minimal polynomial.
std::vector<Eigensystem> decompose_new(std::int64_t n, const DecomposeOptions& opts = {});

struct CongruentNewform {
  Eigensystem eigensystem;
  PrimeIdeal prime;
};

// An orbit and a prime P | p with a_l = l + 1 mod P for primes l <= Sturm
// bound, l != N, and a_N in P. Requires a nonempty Eisenstein locus.
CongruentNewform find_congruent_newform(std::int64_t n, std::int64_t p, const DecomposeOptions& opts = {});

struct CongruenceCertificate {
  std::int64_t level;
  IntPoly minpoly;
  PrimeIdeal prime;
  int s;
  std::int64_t witness;
  std::int64_t bound;
  nlohmann::json to_json() const;
};

// s = min over primes l <= Sturm bound, l != N, of v_P(a_l - l - 1).
CongruenceCertificate congruence_depth(const Eigensystem& es, const PrimeIdeal& prime, std::int64_t n);

}  // namespace eiscong::congruence
