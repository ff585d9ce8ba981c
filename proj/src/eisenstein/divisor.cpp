#include "eiscong/eisenstein/divisor.hpp"

#include "eiscong/eisenstein/qexp.hpp"
#include "eiscong/error.hpp"

namespace eiscong::eisenstein {

using arith::Matrix;
using arith::PrimeField;
using arith::RationalField;

std::vector<Cusp> cusps_of(std::int64_t n) {
  std::vector<Cusp> out;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
    auto l = CuspLabel::from_ordinal(i);
    out.push_back({l, l.width(n)});
  }
  return out;
}

CuspDivisor::CuspDivisor(std::int64_t n) : n_(n), coeffs_(static_cast<std::size_t>(n + 1)) {
  if (n < 2 || !arith::is_prime(static_cast<std::uint64_t>(n))) throw Error("N must be prime");
}

CuspDivisor CuspDivisor::of(const CuspLabel& c, std::int64_t n) {
  CuspDivisor d(n);
  d[c] = 1;
  return d;
}

BigRational CuspDivisor::degree() const {
  BigRational s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

CuspDivisor CuspDivisor::operator+(const CuspDivisor& o) const {
  if (n_ != o.n_) throw Error("divisors on different curves");
  CuspDivisor r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

CuspDivisor CuspDivisor::operator-(const CuspDivisor& o) const { return *this + o * BigRational(-1); }

CuspDivisor CuspDivisor::operator*(const BigRational& s) const {
  CuspDivisor r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

nlohmann::json CuspDivisor::to_json() const {
  nlohmann::json x = nlohmann::json::object();
  for (std::int64_t k = 1; k < n_; ++k) x[std::to_string(k)] = (*this)[CuspLabel::unit(k, n_)].get_str();
  return {{"inf", (*this)[CuspLabel::infinity()].get_str()}, {"zero", (*this)[CuspLabel::zero()].get_str()}, {"x", x}};
}

CuspDivisor CuspDivisor::from_json(const nlohmann::json& j, std::int64_t n) {
  CuspDivisor d(n);
  d[CuspLabel::infinity()] = BigRational(j.at("inf").get<std::string>());
  d[CuspLabel::zero()] = BigRational(j.at("zero").get<std::string>());
  for (const auto& [k, v] : j.at("x").items()) d[CuspLabel::unit(std::stoll(k), n)] = BigRational(v.get<std::string>());
  for (auto& c : d.coeffs_) c.canonicalize();
  return d;
}

std::string CuspDivisor::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[i].get_str() + "*" + CuspLabel::from_ordinal(i).to_string();
  }
  return s.empty() ? "0" : s;
}

CuspDivisor frak_c(std::int64_t n) {
  CuspDivisor d(n);
  for (std::int64_t x = 1; x < n; ++x) d[CuspLabel::unit(x, n)] = 1;
  d[CuspLabel::zero()] = -(n - 1);
  return d;
}

CuspDivisor eisenstein_pair(std::int64_t n) {
  return CuspDivisor::of(CuspLabel::infinity(), n) - CuspDivisor::of(CuspLabel::zero(), n) + frak_c(n);
}

CuspDivisor divisor_action(const HeckeOp& op, const CuspDivisor& d) {
  const std::int64_t n = d.N();
  CuspDivisor out(n);
  const BigRational& inf = d[CuspLabel::infinity()];
  const BigRational& zero = d[CuspLabel::zero()];
  if (op.kind == HeckeOp::Kind::T) {
    const std::int64_t ell = op.n;
    if (ell == n || !arith::is_prime(static_cast<std::uint64_t>(ell))) throw Error("T_l needs a prime l != N");
    out[CuspLabel::infinity()] = inf * (ell + 1);
    out[CuspLabel::zero()] = zero * (ell + 1);
    const std::int64_t inv = arith::invmod(ell % n, n);
    for (std::int64_t x = 1; x < n; ++x) {
      const BigRational& a = d[CuspLabel::unit(x, n)];
      out[CuspLabel::unit(ell * x, n)] += a * ell;
      out[CuspLabel::unit(inv * x, n)] += a;
    }
    return out;
  }
  if (op.n != n) throw Error("U_q on cusp divisors needs q = N");
  out[CuspLabel::infinity()] = inf;
  BigRational rest = zero;
  for (std::int64_t x = 1; x < n; ++x) {
    out[CuspLabel::unit(x, n)] += inf;
    rest += d[CuspLabel::unit(x, n)];
  }
  out[CuspLabel::zero()] = rest * n;
  return out;
}

namespace {

// Kernel of the degree map and the given operators on Div(C).
template <arith::FieldPolicy F>
Matrix<F> joint_kernel(std::int64_t n, const F& f, const std::vector<Matrix<F>>& ops) {
  const std::size_t dim = static_cast<std::size_t>(n + 1);
  Matrix<F> stacked(f, 1 + ops.size() * dim, dim);
  for (std::size_t c = 0; c < dim; ++c) stacked(0, c) = f.one();
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) stacked(1 + k * dim + r, c) = ops[k](r, c);
  return arith::kernel(stacked);
}

std::vector<Matrix<RationalField>> eisenstein_conditions(std::int64_t n, const BigRational& un_eigenvalue) {
  RationalField q;
  std::vector<Matrix<RationalField>> ops;
  for (std::int64_t ell : arith::primes_up_to(20))
    if (ell != n) ops.push_back(divisor_action_matrix(HeckeOp::T(ell), n, q).shifted(ell + 1));
  ops.push_back(divisor_action_matrix(HeckeOp::U(n), n, q).shifted(un_eigenvalue));
  return ops;
}

CuspDivisor from_column(const Matrix<RationalField>& k, std::int64_t n) {
  if (k.cols() != 1) throw DiscrepancyError("Eisenstein part of Div^0 is not one-dimensional");
  CuspDivisor d(n);
  for (std::size_t i = 0; i < k.rows(); ++i) d[CuspLabel::from_ordinal(i)] = k(i, 0);
  return d;
}

}  // namespace

CuspDivisor residue_of_E(std::int64_t n) {
  if (n < 5) throw Error("residue_of_E needs a prime N >= 5");
  // Residue at a cusp = width * constant term there.
  const std::size_t terms = static_cast<std::size_t>(2 * n + 2);
  const BigRational res_inf = eis_E(n, terms)[0] * CuspLabel::infinity().width(n);
  const BigRational res_zero = atkin_lehner_E(n, terms)[0];
  CuspDivisor v = from_column(joint_kernel(n, RationalField{}, eisenstein_conditions(n, 0)), n);
  const BigRational& v0 = v[CuspLabel::zero()];
  if (v0 == 0) throw DiscrepancyError("Eisenstein divisor vanishes at [0]");
  CuspDivisor res = v * (res_zero / v0);
  if (res[CuspLabel::infinity()] != res_inf) throw DiscrepancyError("Res(E) disagrees with a_0(E) at infinity");
  return res;
}

CuspDivisor residue_of_E2N(std::int64_t n) {
  if (n < 5) throw Error("residue_of_E2N needs a prime N >= 5");
  const BigRational res_inf = e2N(n, 2)[0];
  CuspDivisor v = from_column(joint_kernel(n, RationalField{}, eisenstein_conditions(n, 1)), n);
  const BigRational& vi = v[CuspLabel::infinity()];
  if (vi == 0) throw DiscrepancyError("Eisenstein divisor vanishes at infinity");
  return v * (res_inf / vi);
}

nlohmann::json CuspLatticeReport::to_json() const {
  return {{"N", std::to_string(N)},
          {"p", std::to_string(p)},
          {"budget", std::to_string(budget)},
          {"aux_ell", std::to_string(aux_ell)},
          {"aux_q", std::to_string(aux_q)},
          {"dimension", std::to_string(dimension)},
          {"checks",
           {{"dimension_two", dimension_two},
            {"span_matches", span_matches},
            {"un_kills_c", un_kills_c},
            {"un_fixes_pair", un_fixes_pair}}},
          {"passed", passed()}};
}

CuspLatticeReport verify_cusp_lattice(std::int64_t n, std::int64_t p, std::int64_t budget) {
  if (!arith::is_prime(static_cast<std::uint64_t>(n)) || !arith::is_prime(static_cast<std::uint64_t>(p)))
    throw Error("N and p must be prime");
  if (n == p) throw Error("p must not divide N");
  if (n % p == 1) throw Error("outside theorem hypothesis: N = 1 mod p");
  CuspLatticeReport rep{n, p, budget, 0, 0, 0, false, false, false, false};
  const auto primes = arith::primes_up_to(budget);
  bool need_q = false;
  for (std::int64_t x = 1; x < n; ++x)
    if (!arith::is_square_mod(x, n)) need_q = true;
  for (std::int64_t ell : primes) {
    if (ell == n) continue;
    if (!rep.aux_ell && ell % p == p - 1 && arith::is_primitive_root(ell, n)) rep.aux_ell = ell;
    if (need_q && !rep.aux_q && ell % p != p - 1 && !arith::is_square_mod(ell, n)) rep.aux_q = ell;
  }
  if (!rep.aux_ell || (need_q && !rep.aux_q)) throw Error("increase budget");

  PrimeField f(static_cast<std::uint64_t>(p));
  std::vector<Matrix<PrimeField>> ops;
  for (std::int64_t ell : primes)
    if (ell != n) ops.push_back(divisor_action_matrix(HeckeOp::T(ell), n, f).shifted(f.from_int(ell + 1)));
  Matrix<PrimeField> k = joint_kernel(n, f, ops);
  rep.dimension = k.cols();
  rep.dimension_two = k.cols() == 2;

  auto reduce = [&](const CuspDivisor& d) {
    std::vector<std::uint64_t> v;
    for (const auto& c : d.coefficients()) v.push_back(f.from_rational(c));
    return v;
  };
  const auto c = reduce(frak_c(n)), pair = reduce(eisenstein_pair(n));
  if (k.cols() > 0) {
    arith::Subspace<PrimeField> sub(k);
    Matrix<PrimeField> gens(f, k.rows(), 2);
    gens.set_column(0, c);
    gens.set_column(1, pair);
    rep.span_matches = rep.dimension_two && sub.contains(c) && sub.contains(pair) && arith::rank(gens) == 2;
  }
  auto un = divisor_action_matrix(HeckeOp::U(n), n, f);
  const auto un_c = un * c, un_pair = un * pair;
  rep.un_kills_c = std::all_of(un_c.begin(), un_c.end(), [](std::uint64_t x) { return x == 0; });
  rep.un_fixes_pair = un_pair == pair;
  return rep;
}

}  // namespace eiscong::eisenstein
