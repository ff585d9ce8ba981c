#include "eiscong/arith/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong::arith {

int degree(const IntPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly poly_from_ints(std::initializer_list<long> coeffs) {
  IntPoly f;
  for (long c : coeffs) f.emplace_back(c);
  trim(f);
  return f;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

IntPoly scale(const IntPoly& a, const BigInt& s) {
  IntPoly r = a;
  for (auto& c : r) c *= s;
  trim(r);
  return r;
}

IntPoly derivative(const IntPoly& f) {
  if (f.size() <= 1) return {};
  IntPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * static_cast<long>(i);
  trim(d);
  return d;
}

BigInt content(const IntPoly& f) {
  BigInt g = 0;
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.empty()) return {};
  BigInt c = content(f);
  if (f.back() < 0) c = -c;
  IntPoly r = f;
  for (auto& x : r) x /= c;
  return r;
}

BigInt evaluate(const IntPoly& f, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

bool divides_exactly(const IntPoly& b, const IntPoly& a, IntPoly* quotient) {
  if (b.empty()) throw Error("division by zero polynomial");
  if (a.empty()) {
    if (quotient) quotient->clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  IntPoly r = a;
  IntPoly q(a.size() - b.size() + 1);
  const BigInt& lead = b.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const BigInt& top = r[i + b.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return false;
    BigInt c = top / lead;
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
  }
  trim(r);
  if (!r.empty()) return false;
  trim(q);
  if (quotient) *quotient = std::move(q);
  return true;
}

void trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly to_rational(const IntPoly& f) {
  RatPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.emplace_back(c);
  return r;
}

IntPoly clear_denominators(const RatPoly& f, BigRational* scale_out) {
  BigInt den = 1;
  for (const auto& c : f) den = lcm(den, c.get_den());
  IntPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(c.get_num() * (den / c.get_den()));
  trim(r);
  BigInt cont = content(r);
  if (!r.empty() && r.back() < 0) cont = -cont;
  if (cont != 0)
    for (auto& c : r) c /= cont;
  if (scale_out) *scale_out = cont == 0 ? BigRational(0) : BigRational(cont, den);
  if (scale_out) scale_out->canonicalize();
  return r;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.empty()) throw Error("division by zero polynomial");
  RatPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  RatPoly q(r.size() - b.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    BigRational c = r[i + b.size() - 1] / b.back();
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
  }
  trim(r);
  trim(q);
  return {q, r};
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = primitive_part(a), y = primitive_part(b);
  while (!y.empty()) {
    auto [q, r] = divmod(to_rational(x), to_rational(y));
    x = std::move(y);
    y = clear_denominators(r);
  }
  return primitive_part(x);
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k] == 0) ++sel;
      if (sel == n) return 0;
      std::swap(m[k], m[sel]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant(const IntPoly& a, const IntPoly& b) {
  const int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  // Sylvester matrix, highest coefficients first.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
  return determinant(std::move(s));
}

BigInt discriminant(const IntPoly& f) {
  const int n = degree(f);
  if (n < 1) throw Error("discriminant of constant polynomial");
  BigInt r = resultant(f, derivative(f));
  BigInt d = r / f.back();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

std::string to_string(const IntPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    BigInt c = f[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0) {
      os << "-";
      c = abs(c);
    }
    first = false;
    if (i == 0 || c != 1) os << c.get_str();
    if (i >= 1) os << (i == 0 || c != 1 ? "*" : "") << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// --- F_p ---------------------------------------------------------------

namespace modp {

int degree(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly reduce(const IntPoly& f, const PrimeField& F) {
  ModPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(F.from_big(c));
  trim(r);
  return r;
}

IntPoly lift(const ModPoly& f) {
  IntPoly r;
  r.reserve(f.size());
  for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

ModPoly add(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

ModPoly scale(const ModPoly& a, std::uint64_t s, const PrimeField& F) {
  ModPoly r = a;
  for (auto& c : r) c = F.mul(c, s);
  trim(r);
  return r;
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  if (b.empty()) throw Error("division by zero polynomial");
  ModPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  ModPoly q(r.size() - b.size() + 1, 0);
  const std::uint64_t inv_lead = F.inv(b.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    std::uint64_t c = F.mul(r[i + b.size() - 1], inv_lead);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.sub(r[i + j], F.mul(c, b[j]));
  }
  trim(r);
  trim(q);
  return {q, r};
}

ModPoly rem(const ModPoly& a, const ModPoly& b, const PrimeField& F) { return divmod(a, b, F).second; }

ModPoly make_monic(const ModPoly& a, const PrimeField& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

ModPoly gcd(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
  ModPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    ModPoly r = rem(x, y, F);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x, F);
}

ModPoly xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t, const PrimeField& F) {
  ModPoly r0 = a, r1 = b;
  ModPoly s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, F);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = sub(s0, mul(q, s1, F), F);
    ModPoly t2 = sub(t0, mul(q, t1, F), F);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = s0;
    t = t0;
    return r0;
  }
  std::uint64_t inv = F.inv(r0.back());
  s = scale(s0, inv, F);
  t = scale(t0, inv, F);
  return scale(r0, inv, F);
}

ModPoly derivative(const ModPoly& f, const PrimeField& F) {
  if (f.size() <= 1) return {};
  ModPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = F.mul(f[i], F.from_int(static_cast<long>(i)));
  trim(d);
  return d;
}

ModPoly powmod(const ModPoly& base, const BigInt& exp, const ModPoly& modulus, const PrimeField& F) {
  ModPoly result{1};
  result = rem(result, modulus, F);
  ModPoly b = rem(base, modulus, F);
  const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, F), modulus, F);
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = rem(mul(result, b, F), modulus, F);
  }
  return result;
}

std::vector<Factor> squarefree(const ModPoly& f_in, const PrimeField& F) {
  std::vector<Factor> out;
  ModPoly f = make_monic(f_in, F);
  if (degree(f) < 1) return out;
  const std::uint64_t p = F.modulus();
  ModPoly c = gcd(f, derivative(f, F), F);
  ModPoly w = divmod(f, c, F).first;
  int i = 1;
  while (degree(w) > 0) {
    ModPoly y = gcd(w, c, F);
    ModPoly z = divmod(w, y, F).first;
    if (degree(z) > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = divmod(c, y, F).first;
  }
  if (degree(c) > 0) {
    // c is a p-th power.
    ModPoly root(static_cast<std::size_t>(degree(c)) / p + 1, 0);
    for (std::size_t k = 0; k < root.size(); ++k) root[k] = c[k * p];
    for (auto& sub : squarefree(root, F)) out.push_back({sub.factor, sub.multiplicity * static_cast<int>(p)});
  }
  return out;
}

std::vector<std::pair<ModPoly, int>> distinct_degree(const ModPoly& f_in, const PrimeField& F) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly f = make_monic(f_in, F);
  const ModPoly x{0, 1};
  ModPoly h = rem(x, f, F);
  const BigInt p(static_cast<unsigned long>(F.modulus()));
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(h, p, f, F);
    ModPoly g = gcd(f, sub(h, x, F), F);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g, F).first;
      h = rem(h, f, F);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

namespace {

ModPoly random_poly(std::mt19937_64& rng, int deg, const PrimeField& F) {
  ModPoly r(static_cast<std::size_t>(deg) + 1);
  for (auto& c : r) c = rng() % F.modulus();
  trim(r);
  return r;
}

// Splits g (monic, squarefree, all irreducible factors of degree d).
void equal_degree(const ModPoly& g, int d, const PrimeField& F, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  const std::uint64_t p = F.modulus();
  for (;;) {
    ModPoly a = random_poly(rng, degree(g) - 1, F);
    if (degree(a) < 1) continue;
    ModPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(nd-1)); any nd works, use d.
      ModPoly t = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t, F), g, F);
        b = add(b, t, F);
      }
    } else {
      BigInt e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = sub(powmod(a, e, g, F), ModPoly{1}, F);
    }
    ModPoly h = gcd(g, b, F);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree(h, d, F, rng, out);
      equal_degree(divmod(g, h, F).first, d, F, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const ModPoly& f, const PrimeField& F) {
  if (f.empty()) throw Error("factor: zero polynomial");
  std::vector<Factor> out;
  std::mt19937_64 rng(0x5eed);
  for (const auto& sq : squarefree(f, F)) {
    for (const auto& [g, d] : distinct_degree(sq.factor, F)) {
      std::vector<ModPoly> parts;
      equal_degree(g, d, F, rng, parts);
      for (auto& part : parts) out.push_back({std::move(part), sq.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    return a.factor < b.factor;
  });
  return out;
}

}  // namespace modp

std::vector<int> factor_degrees_mod(const IntPoly& poly, std::int64_t ell) {
  if (poly.empty()) throw Error("factor_degrees_mod: zero polynomial");
  PrimeField F(static_cast<std::uint64_t>(ell));
  if (F.from_big(poly.back()) == 0) throw Error("factor_degrees_mod: modulus divides the leading coefficient");
  ModPoly f = modp::reduce(poly, F);
  std::vector<int> degrees;
  for (const auto& sq : modp::squarefree(f, F))
    for (const auto& [g, d] : modp::distinct_degree(sq.factor, F))
      for (int k = 0; k < modp::degree(g) / d; ++k)
        for (int m = 0; m < sq.multiplicity; ++m) degrees.push_back(d);
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace eiscong::arith
