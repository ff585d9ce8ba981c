#include "eiscong/classfield/classfield.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "eiscong/arith/poly.hpp"
#include "eiscong/error.hpp"

namespace eiscong::classfield {

using arith::IntPoly;

namespace {

IntPoly x_p_minus_n(std::int64_t n, std::int64_t p) {
  IntPoly f(static_cast<std::size_t>(p + 1), BigInt(0));
  f[0] = -n;
  f.back() = 1;
  return f;
}

int truncated(const std::optional<int>& v, int cap) { return v ? std::min(*v, cap) : cap; }

}  // namespace

SplittingReport splitting_in_F(std::int64_t ell, std::int64_t n, std::int64_t p) {
  if (ell == p || ell == n) throw Error("ramified case out of scope");
  if (!arith::is_prime(static_cast<std::uint64_t>(ell))) throw Error("l must be prime");
  SplittingReport rep{ell, arith::factor_degrees_mod(x_p_minus_n(n, p), ell), false, false, 0};
  std::sort(rep.degrees.begin(), rep.degrees.end());
  rep.inert = rep.degrees == std::vector<int>{static_cast<int>(p)};
  rep.pth_power = arith::is_pth_power_mod(BigInt(n), ell, p);
  rep.r = arith::multiplicative_order(ell % p, p);
  std::vector<int> expected;
  if (rep.pth_power) {
    expected.push_back(1);
    for (std::int64_t i = 0; i < (p - 1) / rep.r; ++i) expected.push_back(static_cast<int>(rep.r));
  } else {
    expected.push_back(static_cast<int>(p));
  }
  std::sort(expected.begin(), expected.end());
  if (expected != rep.degrees)
    throw DiscrepancyError("splitting of l = " + std::to_string(ell) + " disagrees with the case analysis");
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SplitsInL: return "splits-in-L";
    case Verdict::NonSplit: return "non-split";
    case Verdict::InertAndPrincipal: return "inert-and-principal";
    case Verdict::NoConclusion: return "no-conclusion";
  }
  return "?";
}

Prediction predict(std::int64_t ell, const OrderElement& a, const PrimeIdeal& prime, int s, std::int64_t p,
                   std::int64_t n) {
  if (ell == n || ell == p) throw Error("predict needs l not in {p, N}");
  Prediction pr{ell, ell % p, truncated(arith::valuation(a - (ell + 1), prime), s + 1),
                truncated(arith::valuation(a - 2, prime), s + 1), Verdict::NoConclusion};
  const SplittingReport sp = splitting_in_F(ell, n, p);
  if (ell % p == 1) {
    pr.verdict = pr.v_two < s + 1 ? Verdict::InertAndPrincipal : Verdict::NoConclusion;
    if (pr.verdict == Verdict::InertAndPrincipal && !sp.inert) throw DiscrepancyError("paper-contradiction");
  } else {
    pr.verdict = pr.v_eis >= s + 1 ? Verdict::SplitsInL : Verdict::NonSplit;
    if (!sp.has_degree_one()) throw DiscrepancyError("paper-contradiction");
  }
  return pr;
}

std::vector<TableRow> table_flags(const congruence::Eigensystem& es, const PrimeIdeal& prime, int s, std::int64_t n,
                                  std::int64_t p, std::int64_t ell_max) {
  std::vector<TableRow> rows;
  for (std::int64_t ell : arith::primes_up_to(ell_max)) {
    const OrderElement& a = es.at(ell);
    TableRow row{ell, a, false, false, {}};
    row.bold = truncated(arith::valuation(a - (ell + 1), prime), s + 1) >= s + 1;
    if (ell == n) {
      row.circled = true;
    } else if (ell % p == 1) {
      row.circled = truncated(arith::valuation(a - 2, prime), s + 1) < s + 1;
    } else {
      row.circled = row.bold;
    }
    if (ell != n && ell != p) {
      row.degrees = splitting_in_F(ell, n, p).degrees;
      // The circled flag is what the predictor implies.
      const Verdict v = predict(ell, a, prime, s, p, n).verdict;
      const bool implied = v == Verdict::SplitsInL || v == Verdict::InertAndPrincipal;
      if (implied != row.circled) throw DiscrepancyError("table flag disagrees with prediction at l = " + std::to_string(ell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_tsv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "ell\ta_ell\tbold\tcircled\tdegrees\n";
  for (const auto& r : rows) {
    os << r.ell << '\t';
    for (std::size_t i = 0; i < r.a.coeffs().size(); ++i) os << (i ? "," : "") << r.a.coeffs()[i].get_str();
    os << '\t' << (r.bold ? 1 : 0) << '\t' << (r.circled ? 1 : 0) << '\t';
    if (r.degrees.empty()) os << '-';
    for (std::size_t i = 0; i < r.degrees.size(); ++i) os << (i ? "," : "") << r.degrees[i];
    os << '\n';
  }
  return os.str();
}

BigInt norm_form_value(const std::vector<BigInt>& coeffs, std::int64_t n, std::int64_t p) {
  if (static_cast<std::int64_t>(coeffs.size()) != p) throw Error("norm_form_value needs p coefficients");
  IntPoly g = coeffs;
  arith::trim(g);
  return arith::resultant(x_p_minus_n(n, p), g);
}

Monomials norm_form_symbolic(std::int64_t n, std::int64_t p) {
  const std::size_t d = static_cast<std::size_t>(p);
  // Entry (k, j) of multiplication by sum c_i theta^i: coefficient times
  // the variable index.
  auto entry = [&](std::size_t k, std::size_t j) -> std::pair<BigInt, std::size_t> {
    if (k >= j) return {BigInt(1), k - j};
    return {BigInt(n), k + d - j};
  };
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Monomials out;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt c = inversions % 2 ? -1 : 1;
    std::vector<int> exps(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      auto [coef, var] = entry(perm[j], j);
      c *= coef;
      ++exps[var];
    }
    out[exps] += c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::string to_string(const Monomials& form, const std::vector<std::string>& vars) {
  std::string s;
  // Highest powers of the first variables first.
  std::vector<std::pair<std::vector<int>, BigInt>> terms(form.begin(), form.end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [e, c] : terms) {
    s += c < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
    BigInt mag = abs(c);
    if (mag != 1) s += mag.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      s += vars.at(i);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
  }
  return s.empty() ? "0" : s;
}

namespace {

// 0, 1, -1, 2, -2, ... as a rank.
std::int64_t coord_value(std::int64_t rank) { return rank % 2 ? (rank + 1) / 2 : -(rank / 2); }

// Calls visit on every tuple in [-bound, bound]^p with sum of |c_i| == total,
// in lexicographic order of ranks, stopping when visit returns true.
template <class Visit>
bool enumerate_shell(std::vector<std::int64_t>& ranks, std::size_t pos, std::int64_t remaining, std::int64_t bound,
                     Visit& visit) {
  if (pos == ranks.size()) return remaining == 0 && visit(ranks);
  for (std::int64_t r = 0; r <= 2 * bound; ++r) {
    const std::int64_t mag = (r + 1) / 2;
    if (mag > remaining) break;
    ranks[pos] = r;
    if (enumerate_shell(ranks, pos + 1, remaining - mag, bound, visit)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<BigInt>> norm_search(const BigInt& target, std::int64_t n, std::int64_t p,
                                               std::int64_t bound, unsigned threads) {
  if (bound < 0) throw Error("box bound must be non-negative");
  const std::size_t d = static_cast<std::size_t>(p);
  auto to_tuple = [&](const std::vector<std::int64_t>& ranks) {
    std::vector<BigInt> c;
    for (auto r : ranks) c.emplace_back(coord_value(r));
    return c;
  };
  for (std::int64_t total = 0; total <= bound * p; ++total) {
    // Split the shell by the rank of the first coordinate; the smallest
    // rank with a hit wins, so the result does not depend on threads.
    const std::int64_t first_ranks = std::min<std::int64_t>(2 * bound, 2 * total) + 1;
    std::vector<std::optional<std::vector<BigInt>>> found(static_cast<std::size_t>(first_ranks));
    std::atomic<std::int64_t> next{0}, best{first_ranks};
    auto work = [&] {
      for (std::int64_t r0; (r0 = next++) < first_ranks;) {
        if (r0 > best.load()) break;
        std::vector<std::int64_t> ranks(d, 0);
        ranks[0] = r0;
        const std::int64_t mag = (r0 + 1) / 2;
        if (mag > total) continue;
        auto visit = [&](const std::vector<std::int64_t>& rs) {
          auto c = to_tuple(rs);
          if (norm_form_value(c, n, p) != target) return false;
          found[static_cast<std::size_t>(r0)] = c;
          std::int64_t b = best.load();
          while (r0 < b && !best.compare_exchange_weak(b, r0)) {
          }
          return true;
        };
        enumerate_shell(ranks, 1, total - mag, bound, visit);
      }
    };
    const unsigned nt = std::max(1u, threads);
    if (nt == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (auto& f : found)
      if (f) return f;
  }
  return std::nullopt;
}

}  // namespace eiscong::classfield
