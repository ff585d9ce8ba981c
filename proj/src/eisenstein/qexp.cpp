#include "eiscong/eisenstein/qexp.hpp"

#include <algorithm>

#include "eiscong/error.hpp"

namespace eiscong::eisenstein {

BigInt sigma(std::int64_t n) {
  if (n < 1) throw Error("sigma: n must be positive");
  BigInt s = 1;
  for (auto [q, e] : arith::factor_small(n)) {
    BigInt term = 1, pw = 1;
    for (int i = 0; i < e; ++i) {
      pw *= q;
      term += pw;
    }
    s *= term;
  }
  return s;
}

QExpansion QExpansion::operator+(const QExpansion& o) const {
  if (size() != o.size()) throw Error("q-expansions of different length");
  QExpansion r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

QExpansion QExpansion::operator-(const QExpansion& o) const {
  if (size() != o.size()) throw Error("q-expansions of different length");
  QExpansion r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

QExpansion QExpansion::operator*(const BigRational& s) const {
  QExpansion r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

QExpansion QExpansion::rescale(std::int64_t m) const {
  if (m < 1) throw Error("rescale factor must be positive");
  QExpansion r = zero(size());
  for (std::size_t k = 0; k * m < size(); ++k) r.a_[k * m] = a_[k];
  return r;
}

QExpansion e2(std::size_t n_terms) {
  if (n_terms < 1) throw Error("n_terms must be positive");
  QExpansion f = QExpansion::zero(n_terms);
  f[0] = BigRational(-1, 24);
  for (std::size_t k = 1; k < n_terms; ++k) f[k] = BigRational(sigma(static_cast<std::int64_t>(k)));
  return f;
}

QExpansion e2N(std::int64_t n, std::size_t n_terms) {
  QExpansion f = e2(n_terms);
  return f - f.rescale(n) * BigRational(n);
}

QExpansion eis_E(std::int64_t n, std::size_t n_terms) {
  QExpansion f = e2N(n, n_terms);
  return f * BigRational(n) - f.rescale(n) * BigRational(n);
}

QExpansion atkin_lehner_E(std::int64_t n, std::size_t n_terms) {
  QExpansion f = e2N(n, n_terms);
  return f - f.rescale(n) * BigRational(n * n);
}

bool EigenReport::all_eigen() const {
  for (const auto& [l, v] : t_eigenvalues)
    if (!v) return false;
  return u_eigenvalue.has_value();
}

EigenReport eigen_check(const QExpansion& f, std::int64_t n, std::int64_t ell_max) {
  const auto len = static_cast<std::int64_t>(f.size());
  if (len < 2 * std::max(ell_max, n)) throw Error("insufficient truncation");
  EigenReport report;
  auto at = [&](std::int64_t k) { return f[static_cast<std::size_t>(k)]; };
  for (std::int64_t ell : arith::primes_up_to(ell_max)) {
    if (ell == n) continue;
    // a_{l m} + l a_{m / l}, with a_{m / l} = 0 unless l | m.
    auto lhs = [&](std::int64_t m) {
      BigRational v = at(ell * m);
      if (m % ell == 0) v += BigRational(ell) * at(m / ell);
      return v;
    };
    std::optional<BigRational> lambda;
    bool ok = true;
    for (std::int64_t m = 0; ell * m < len; ++m) {
      if (!lambda) {
        if (at(m) != 0) lambda = lhs(m) / at(m);
        else if (lhs(m) != 0) ok = false;
      } else if (lhs(m) != *lambda * at(m)) {
        ok = false;
      }
      if (!ok) break;
    }
    report.t_eigenvalues[ell] = ok ? lambda : std::nullopt;
  }
  std::optional<BigRational> mu;
  bool ok = true;
  for (std::int64_t m = 0; n * m < len && ok; ++m) {
    if (!mu) {
      if (at(m) != 0) mu = at(n * m) / at(m);
      else if (at(n * m) != 0) ok = false;
    } else if (at(n * m) != *mu * at(m)) {
      ok = false;
    }
  }
  report.u_eigenvalue = ok ? mu : std::nullopt;
  return report;
}

}  // namespace eiscong::eisenstein
