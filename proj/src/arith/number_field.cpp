#include "eiscong/arith/number_field.hpp"

#include <algorithm>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong::arith {
namespace {

// a mod m for monic m, rational coefficients, padded to deg m.
std::vector<BigRational> reduce_mod(std::vector<BigRational> a, const IntPoly& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    BigRational c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * m[j];
  }
  a.resize(d, BigRational(0));
  return a;
}

std::vector<BigInt> reduce_mod_int(const std::vector<BigInt>& a, const IntPoly& m) {
  std::vector<BigRational> r(a.begin(), a.end());
  r = reduce_mod(std::move(r), m);
  std::vector<BigInt> out;
  out.reserve(r.size());
  for (const auto& c : r) out.push_back(c.get_num());
  return out;
}

std::vector<BigInt> poly_times(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void check_minpoly(const IntPoly& m) {
  if (degree(m) < 1 || m.back() != 1) throw Error("minimal polynomial must be monic of positive degree");
}

}  // namespace

OrderElement::OrderElement(IntPoly minpoly, std::vector<BigRational> coeffs) : minpoly_(std::move(minpoly)) {
  check_minpoly(minpoly_);
  coeffs_ = reduce_mod(std::move(coeffs), minpoly_);
}

OrderElement OrderElement::from_int(const IntPoly& minpoly, long n) {
  return OrderElement(minpoly, {BigRational(n)});
}

OrderElement OrderElement::generator(const IntPoly& minpoly) {
  return OrderElement(minpoly, {BigRational(0), BigRational(1)});
}

bool OrderElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c == 0; });
}

bool OrderElement::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c.get_den() == 1; });
}

std::vector<BigInt> OrderElement::integer_coeffs() const {
  if (!is_integral()) throw Error("not in order");
  std::vector<BigInt> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_num());
  return out;
}

void OrderElement::check(const OrderElement& o) const {
  if (o.minpoly_ != minpoly_) throw Error("elements of different fields");
}

OrderElement OrderElement::operator+(const OrderElement& o) const {
  check(o);
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coeffs_[i];
  return OrderElement(minpoly_, std::move(c));
}

OrderElement OrderElement::operator-(const OrderElement& o) const {
  check(o);
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coeffs_[i];
  return OrderElement(minpoly_, std::move(c));
}

OrderElement OrderElement::operator*(const OrderElement& o) const {
  check(o);
  std::vector<BigRational> r(2 * coeffs_.size(), BigRational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return OrderElement(minpoly_, std::move(r));
}

OrderElement OrderElement::operator-() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return OrderElement(minpoly_, std::move(c));
}

OrderElement OrderElement::operator+(long n) const { return *this + from_int(minpoly_, n); }
OrderElement OrderElement::operator-(long n) const { return *this - from_int(minpoly_, n); }

bool OrderElement::operator==(const OrderElement& o) const {
  return minpoly_ == o.minpoly_ && coeffs_ == o.coeffs_;
}

BigRational OrderElement::norm() const {
  BigRational scale_back;
  IntPoly a = clear_denominators(coeffs_, &scale_back);
  if (a.empty()) return 0;
  BigRational r(resultant(minpoly_, a));
  BigRational s = 1;
  for (int i = 0; i < degree(); ++i) s *= scale_back;
  r *= s;
  r.canonicalize();
  return r;
}

OrderElement OrderElement::substitute(const OrderElement& root) const {
  check(root);
  OrderElement acc(minpoly_, {BigRational(0)});
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * root;
    acc = acc + OrderElement(minpoly_, {coeffs_[i]});
  }
  return acc;
}

std::string OrderElement::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    BigRational c = coeffs_[i];
    if (c == 0) continue;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0) {
      os << "-";
      c = abs(c);
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return first ? "0" : os.str();
}

std::vector<std::vector<BigRational>> multiplication_matrix(const OrderElement& alpha) {
  const int d = alpha.degree();
  std::vector<std::vector<BigRational>> m(d, std::vector<BigRational>(d));
  OrderElement basis = OrderElement::from_int(alpha.minpoly(), 1);
  const OrderElement t = OrderElement::generator(alpha.minpoly());
  for (int j = 0; j < d; ++j) {
    OrderElement col = alpha * basis;
    for (int i = 0; i < d; ++i) m[i][j] = col.coeffs()[i];
    basis = basis * t;
  }
  return m;
}

// --- lattices ------------------------------------------------------------

Lattice Lattice::from_generators(std::vector<std::vector<BigInt>> gens, std::size_t dim) {
  for (auto& g : gens) g.resize(dim, 0);
  std::vector<std::vector<BigInt>> out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim; ++col) {
    // Euclid on column `col` among rows top..end.
    for (;;) {
      std::size_t best = gens.size();
      for (std::size_t r = top; r < gens.size(); ++r) {
        if (gens[r][col] == 0) continue;
        if (best == gens.size() || abs(gens[r][col]) < abs(gens[best][col])) best = r;
      }
      if (best == gens.size()) break;
      std::swap(gens[top], gens[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < gens.size(); ++r) {
        if (gens[r][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), gens[r][col].get_mpz_t(), gens[top][col].get_mpz_t());
        for (std::size_t c = col; c < dim; ++c) gens[r][c] -= q * gens[top][c];
        if (gens[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (top < gens.size() && gens[top][col] != 0) {
      if (gens[top][col] < 0)
        for (auto& x : gens[top]) x = -x;
      ++top;
    }
  }
  gens.resize(top);
  // Reduce entries above pivots into [0, pivot).
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::size_t pc = 0;
    while (gens[i][pc] == 0) ++pc;
    for (std::size_t r = 0; r < i; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), gens[r][pc].get_mpz_t(), gens[i][pc].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t c = pc; c < dim; ++c) gens[r][c] -= q * gens[i][c];
    }
  }
  Lattice l;
  l.rows_ = std::move(gens);
  return l;
}

bool Lattice::contains(std::vector<BigInt> v) const {
  for (const auto& row : rows_) {
    std::size_t pc = 0;
    while (row[pc] == 0) ++pc;
    for (std::size_t c = 0; c < pc; ++c)
      if (v[c] != 0) return false;
    if (!mpz_divisible_p(v[pc].get_mpz_t(), row[pc].get_mpz_t())) return false;
    BigInt q = v[pc] / row[pc];
    for (std::size_t c = pc; c < v.size(); ++c) v[c] -= q * row[c];
  }
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

BigInt Lattice::index() const {
  if (rows_.empty()) throw Error("index of the zero lattice");
  if (rows_.size() != rows_[0].size()) throw Error("lattice is not of full rank");
  BigInt r = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) r *= rows_[i][i];
  return r;
}

// --- prime ideals ----------------------------------------------------------

Lattice PrimeIdeal::lattice() const {
  const std::size_t d = minpoly.size() - 1;
  std::vector<std::vector<BigInt>> gens;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<BigInt> pt(d, 0);
    pt[j] = p;
    gens.push_back(pt);
    std::vector<BigInt> shifted(j, 0);
    shifted.insert(shifted.end(), generator.begin(), generator.end());
    gens.push_back(reduce_mod_int(shifted, minpoly));
  }
  return Lattice::from_generators(std::move(gens), d);
}

std::string PrimeIdeal::to_string(const std::string& var) const {
  return "(" + std::to_string(p) + ", " + arith::to_string(generator, var) + ")";
}

bool is_p_maximal(const IntPoly& minpoly, std::int64_t p) {
  PrimeField F(static_cast<std::uint64_t>(p));
  auto facs = modp::factor(modp::reduce(minpoly, F), F);
  ModPoly g{1}, h{1};
  for (const auto& fa : facs) {
    g = modp::mul(g, fa.factor, F);
    for (int i = 1; i < fa.multiplicity; ++i) h = modp::mul(h, fa.factor, F);
  }
  IntPoly diff = sub(mul(modp::lift(g), modp::lift(h)), minpoly);
  for (auto& c : diff) {
    if (c % p != 0) throw Error("Dedekind criterion: inconsistent factorization");
    c /= p;
  }
  ModPoly fbar = modp::reduce(diff, F);
  ModPoly common = modp::gcd(modp::gcd(fbar, g, F), h, F);
  return modp::degree(common) == 0;
}

std::vector<PrimeIdeal> primes_above(const IntPoly& minpoly, std::int64_t p) {
  check_minpoly(minpoly);
  PrimeField F(static_cast<std::uint64_t>(p));
  const bool maximal = is_p_maximal(minpoly, p);
  std::vector<PrimeIdeal> out;
  for (const auto& fa : modp::factor(modp::reduce(minpoly, F), F)) {
    out.push_back({minpoly, p, modp::lift(fa.factor), fa.multiplicity, modp::degree(fa.factor), maximal});
  }
  return out;
}

Lattice ideal_product(const Lattice& a, const Lattice& b, const IntPoly& minpoly) {
  const std::size_t d = minpoly.size() - 1;
  std::vector<std::vector<BigInt>> gens;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) gens.push_back(reduce_mod_int(poly_times(x, y), minpoly));
  return Lattice::from_generators(std::move(gens), d);
}

Lattice ideal_power(const PrimeIdeal& prime, int k) {
  const std::size_t d = prime.minpoly.size() - 1;
  std::vector<std::vector<BigInt>> unit;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<BigInt> e(d, 0);
    e[i] = 1;
    unit.push_back(e);
  }
  Lattice acc = Lattice::from_generators(unit, d);
  const Lattice base = prime.lattice();
  for (int i = 0; i < k; ++i) acc = ideal_product(acc, base, prime.minpoly);
  return acc;
}

std::optional<int> valuation(const OrderElement& alpha, const PrimeIdeal& prime) {
  if (alpha.minpoly() != prime.minpoly) throw Error("valuation: element and prime live in different orders");
  auto coeffs = alpha.integer_coeffs();
  if (alpha.is_zero()) return std::nullopt;
  const BigRational n = alpha.norm();
  const int bound = valuation(n.get_num(), prime.p);
  const Lattice base = prime.lattice();
  Lattice power = base;
  int k = 0;
  while (k < bound && power.contains(coeffs)) {
    ++k;
    power = ideal_product(power, base, prime.minpoly);
  }
  return k;
}

bool in_prime(const OrderElement& alpha, const PrimeIdeal& prime) {
  if (alpha.is_zero()) return true;
  return prime.lattice().contains(alpha.integer_coeffs());
}

}  // namespace eiscong::arith
