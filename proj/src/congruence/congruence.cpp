#include "eiscong/congruence/congruence.hpp"

#include <algorithm>

#include "eiscong/arith/integer.hpp"
#include "eiscong/arith/poly.hpp"
#include "eiscong/error.hpp"

namespace eiscong::congruence {

using arith::BigInt;
using arith::BigRational;
using arith::Matrix;
using arith::PrimeField;
using arith::RationalField;
using arith::Subspace;
using nlohmann::json;

json to_json(const OrderElement& a) {
  json mp = json::array(), cs = json::array();
  for (const auto& c : a.minpoly()) mp.push_back(c.get_str());
  for (const auto& c : a.coeffs()) cs.push_back({c.get_num().get_str(), c.get_den().get_str()});
  return {{"minpoly", mp}, {"coeffs", cs}};
}

namespace {

IntPoly poly_from_json(const json& j) {
  IntPoly f;
  for (const auto& c : j) f.emplace_back(c.get<std::string>());
  return f;
}

std::vector<BigRational> coeffs_from_json(const json& j) {
  std::vector<BigRational> out;
  for (const auto& c : j) {
    BigRational q(BigInt(c.at(0).get<std::string>()), BigInt(c.at(1).get<std::string>()));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

json poly_to_json(const IntPoly& f) {
  json out = json::array();
  for (const auto& c : f) out.push_back(c.get_str());
  return out;
}

json prime_to_json(const PrimeIdeal& P) {
  return {{"p", std::to_string(P.p)},
          {"generator", poly_to_json(P.generator)},
          {"ramification", P.ramification},
          {"residue_degree", P.residue_degree},
          {"p_maximal", P.p_maximal},
          {"label", P.to_string()}};
}

// Monic integer polynomial from a characteristic polynomial over Q.
IntPoly integral_poly(const std::vector<BigRational>& cp) {
  IntPoly f;
  for (const auto& c : cp) {
    if (c.get_den() != 1) throw DiscrepancyError("Hecke characteristic polynomial is not integral");
    f.push_back(c.get_num());
  }
  return f;
}

std::vector<BigRational> as_rational(const IntPoly& f) {
  std::vector<BigRational> out;
  for (const auto& c : f) out.emplace_back(c);
  return out;
}

bool all_in_order(const std::map<std::int64_t, OrderElement>& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second.is_integral(); });
}

// Re-express every a_l in the power basis of u = a_{ell}, if u generates the
// field and all a_l land in Z[u].
std::optional<Eigensystem> repin(const Eigensystem& es, std::int64_t ell) {
  const OrderElement& u = es.at(ell);
  const std::size_t d = static_cast<std::size_t>(es.degree());
  Matrix<RationalField> powers(RationalField{}, d, d);
  OrderElement pw = OrderElement::from_int(es.minpoly, 1);
  for (std::size_t j = 0; j < d; ++j) {
    powers.set_column(j, pw.coeffs());
    pw = pw * u;
  }
  if (arith::rank(powers) < d) return std::nullopt;
  const Matrix<RationalField> inv = arith::inverse(powers);
  auto mm = arith::multiplication_matrix(u);
  Matrix<RationalField> mult(RationalField{}, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mult(i, j) = mm[i][j];
  Eigensystem out{es.level, integral_poly(arith::charpoly(mult)), {}, "a" + std::to_string(ell) + "=t", es.bound};
  for (const auto& [l, a] : es.a) {
    OrderElement b(out.minpoly, inv * a.coeffs());
    if (!b.is_integral()) return std::nullopt;
    out.a.emplace(l, std::move(b));
  }
  return out;
}

}  // namespace

OrderElement order_element_from_json(const json& j) {
  return OrderElement(poly_from_json(j.at("minpoly")), coeffs_from_json(j.at("coeffs")));
}

json EisensteinLocusReport::to_json() const {
  return {{"N", std::to_string(N)},
          {"p", std::to_string(p)},
          {"sturm", std::to_string(sturm)},
          {"primes_used", std::to_string(primes_used.size())},
          {"cuspidal_dim", std::to_string(cuspidal_dim)},
          {"dim_m", std::to_string(dim_m)},
          {"dim_m_old", std::to_string(dim_m_old)},
          {"verdict_m", verdict_m},
          {"verdict_m_old", verdict_m_old},
          {"N_is_minus_one_mod_p", expected},
          {"matches_theorem", matches_theorem()}};
}

EisensteinLocusReport eisenstein_locus(std::int64_t n, std::int64_t p, std::optional<std::int64_t> sturm) {
  if (!arith::is_prime(static_cast<std::uint64_t>(n)) || !arith::is_prime(static_cast<std::uint64_t>(p)))
    throw Error("N and p must be prime");
  if (p < 5) throw Error("p must be at least 5");
  if (n == p) throw Error("N and p must be distinct");
  if (n % p == 1) throw Error("outside theorem hypothesis");
  EisensteinLocusReport rep{};
  rep.N = n;
  rep.p = p;
  rep.sturm = sturm.value_or(modsym::sturm_bound(n * n));
  rep.expected = n % p == p - 1;

  auto space = modsym::build_space_fp(n * n, static_cast<std::uint64_t>(p), 1);
  const PrimeField& f = space.field();
  Matrix<PrimeField> k = space.cuspidal_subspace().basis();
  rep.cuspidal_dim = k.cols();
  // Replace k by the part of its span killed by (op - shift).
  auto cut = [&](const HeckeOp& op, std::uint64_t shift) {
    Matrix<PrimeField> img = space.apply_hecke(op, k) - k.scaled(shift);
    return k * arith::kernel(img);
  };
  for (std::int64_t ell : arith::primes_up_to(rep.sturm)) {
    if (k.cols() == 0) break;
    if (ell == n) continue;
    k = cut(HeckeOp::T(ell), f.from_int(ell + 1));
    rep.primes_used.push_back(ell);
  }
  if (k.cols() > 0) {
    rep.dim_m = cut(HeckeOp::U(n), 0).cols();
    rep.dim_m_old = cut(HeckeOp::U(n), 1).cols();
  }
  rep.verdict_m = rep.dim_m > 0;
  rep.verdict_m_old = rep.dim_m_old > 0;
  return rep;
}

const OrderElement& Eigensystem::at(std::int64_t ell) const {
  auto it = a.find(ell);
  if (it == a.end()) throw Error("a_" + std::to_string(ell) + " not stored (bound " + std::to_string(bound) + ")");
  return it->second;
}

json Eigensystem::to_json() const {
  json as = json::object();
  for (const auto& [ell, v] : a) as[std::to_string(ell)] = congruence::to_json(v).at("coeffs");
  return {{"level", std::to_string(level)},
          {"minpoly", poly_to_json(minpoly)},
          {"a", as},
          {"convention", convention},
          {"bound", std::to_string(bound)}};
}

Eigensystem Eigensystem::from_json(const json& j) {
  Eigensystem es;
  es.level = std::stoll(j.at("level").get<std::string>());
  es.minpoly = poly_from_json(j.at("minpoly"));
  es.convention = j.at("convention").get<std::string>();
  es.bound = std::stoll(j.at("bound").get<std::string>());
  for (const auto& [k, v] : j.at("a").items()) es.a.emplace(std::stoll(k), OrderElement(es.minpoly, coeffs_from_json(v)));
  return es;
}

NewDecomposition::NewDecomposition(std::int64_t n, DecomposeOptions opts)
    : n_(n), opts_(std::move(opts)), space_(modsym::build_space_q(n * n, 1)) {
  if (!arith::is_prime(static_cast<std::uint64_t>(n))) throw Error("N must be prime");
  hecke_ = std::make_unique<modsym::SubspaceHecke<RationalField>>(space_, modsym::new_subspace(space_, n), opts_.cache);
  split_primes_ = opts_.split_primes;
  if (split_primes_.empty())
    for (std::int64_t ell : arith::primes_up_to(modsym::sturm_bound(n * n)))
      if (ell != n) split_primes_.push_back(ell);
  const std::size_t dim = new_dimension();
  if (dim > 0) split(Matrix<RationalField>::identity(RationalField{}, dim), 0);
  std::sort(orbits_.begin(), orbits_.end(), [](const Orbit& x, const Orbit& y) {
    if (x.minpoly.size() != y.minpoly.size()) return x.minpoly.size() < y.minpoly.size();
    return x.minpoly < y.minpoly;
  });
}

void NewDecomposition::split(const Matrix<RationalField>& block, std::size_t from) {
  const std::size_t d = block.cols();
  Subspace<RationalField> sub(block);
  for (std::size_t i = from; i < split_primes_.size(); ++i) {
    const HeckeOp op = HeckeOp::T(split_primes_[i]);
    Matrix<RationalField> a = sub.restrict(hecke_->get(op));
    IntPoly cp = integral_poly(arith::charpoly(a));
    auto factors = arith::factor_over_q(cp);
    if (factors.size() == 1 && factors[0].multiplicity == 1) {
      // Irreducible: pin the generator to the first prime acting with an
      // irreducible characteristic polynomial of full degree.
      if (static_cast<int>(d) > opts_.degree_cap)
        throw Error("Hecke-field degree " + std::to_string(d) + " of an orbit exceeds cap " +
                    std::to_string(opts_.degree_cap));
      Orbit orbit{block, op, cp};
      for (std::size_t j = 0; j < i; ++j) {
        const HeckeOp g = HeckeOp::T(split_primes_[j]);
        IntPoly gp = integral_poly(arith::charpoly(sub.restrict(hecke_->get(g))));
        auto gf = arith::factor_over_q(gp);
        if (gf.size() == 1 && gf[0].multiplicity == 1) {
          orbit.generator = g;
          orbit.minpoly = gp;
          break;
        }
      }
      orbits_.push_back(std::move(orbit));
      return;
    }
    if (factors.size() == 1) continue;  // one eigenvalue system for this operator
    for (const auto& fac : factors) {
      IntPoly pw{BigInt(1)};
      for (int e = 0; e < fac.multiplicity; ++e) pw = arith::mul(pw, fac.factor);
      Matrix<RationalField> coords = arith::kernel(arith::evaluate(as_rational(pw), a));
      split(block * coords, i);
    }
    return;
  }
  throw DiscrepancyError("could not split a Hecke block of dimension " + std::to_string(d) +
                         " with the available operators");
}

OrderElement NewDecomposition::eigenvalue(const Orbit& orbit, const HeckeOp& op) {
  const std::size_t d = orbit.block.cols();
  Matrix<RationalField> a = hecke_->get(orbit.generator);
  Matrix<RationalField> krylov(RationalField{}, orbit.block.rows(), d);
  std::vector<BigRational> v = orbit.block.column(0);
  for (std::size_t j = 0; j < d; ++j) {
    krylov.set_column(j, v);
    v = a * v;
  }
  Subspace<RationalField> ks(krylov);
  auto c = ks.coordinates(hecke_->get(op) * orbit.block.column(0));
  if (!c) throw DiscrepancyError("orbit is not stable under " + op.to_string());
  return OrderElement(orbit.minpoly, *c);
}

Eigensystem NewDecomposition::eigensystem(const Orbit& orbit, std::int64_t bound) {
  Eigensystem es;
  es.level = n_ * n_;
  es.minpoly = orbit.minpoly;
  es.convention = "a" + std::to_string(orbit.generator.n) + "=t";
  es.bound = bound;
  std::vector<HeckeOp> ops;
  for (std::int64_t ell : arith::primes_up_to(bound)) ops.push_back(ell == n_ ? HeckeOp::U(ell) : HeckeOp::T(ell));
  hecke_->prefetch(ops, opts_.threads);
  for (const auto& op : ops) es.a.emplace(op.n, eigenvalue(orbit, op));
  if (!all_in_order(es.a))
    for (const auto& [ell, a] : es.a)
      if (auto r = repin(es, ell)) return *r;
  return es;
}

std::vector<Eigensystem> decompose_new(std::int64_t n, const DecomposeOptions& opts) {
  NewDecomposition dec(n, opts);
  const std::int64_t bound = opts.bound > 0 ? opts.bound : modsym::sturm_bound(n * n);
  std::vector<Eigensystem> out;
  for (const auto& orbit : dec.orbits()) out.push_back(dec.eigensystem(orbit, bound));
  return out;
}

CongruentNewform find_congruent_newform(std::int64_t n, std::int64_t p, const DecomposeOptions& opts) {
  if (!eisenstein_locus(n, p).verdict_m) throw Error("precondition failed: the Eisenstein locus is empty");
  const std::int64_t sturm = modsym::sturm_bound(n * n);
  NewDecomposition dec(n, opts);
  const std::int64_t bound = std::max(opts.bound, sturm);
  for (const auto& orbit : dec.orbits()) {
    Eigensystem es = dec.eigensystem(orbit, bound);
    if (!all_in_order(es.a)) continue;  // valuations need Z[t]
    for (const auto& prime : arith::primes_above(es.minpoly, p)) {
      bool ok = true;
      for (const auto& [ell, a] : es.a) {
        if (ell > sturm) break;
        const OrderElement target = ell == n ? a : a - (ell + 1);
        if (!arith::in_prime(target, prime)) {
          ok = false;
          break;
        }
      }
      if (ok) return {std::move(es), prime};
    }
  }
  throw DiscrepancyError("contradiction with Theorem: investigate index/order issues");
}

json CongruenceCertificate::to_json() const {
  return {{"level", std::to_string(level)},
          {"minpoly", poly_to_json(minpoly)},
          {"prime", prime_to_json(prime)},
          {"s", std::to_string(s)},
          {"witness", std::to_string(witness)},
          {"bound", std::to_string(bound)}};
}

CongruenceCertificate congruence_depth(const Eigensystem& es, const PrimeIdeal& prime, std::int64_t n) {
  const std::int64_t sturm = modsym::sturm_bound(n * n);
  CongruenceCertificate cert{es.level, es.minpoly, prime, -1, 0, sturm};
  for (std::int64_t ell : arith::primes_up_to(sturm)) {
    if (ell == n) continue;
    auto v = arith::valuation(es.at(ell) - (ell + 1), prime);
    if (!v) continue;
    if (cert.s < 0 || *v < cert.s) {
      cert.s = *v;
      cert.witness = ell;
    }
  }
  if (cert.s < 0) throw DiscrepancyError("a_l = l + 1 exactly for every l up to the Sturm bound");
  if (cert.s == 0) throw Error("eigensystem is not congruent modulo the prime");
  return cert;
}

}  // namespace eiscong::congruence
