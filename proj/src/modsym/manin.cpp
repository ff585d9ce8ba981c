#include "eiscong/modsym/manin.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "eiscong/arith/integer.hpp"
#include "eiscong/error.hpp"

namespace eiscong::modsym {

using arith::gcd;
using arith::kernel;
using arith::mod;

namespace {

template <class F, class V = typename F::value_type>
using Sparse = std::vector<std::pair<std::size_t, V>>;

// a + s * b for sorted sparse vectors.
template <class F>
Sparse<F> axpy(const F& f, const Sparse<F>& a, const typename F::value_type& s, const Sparse<F>& b) {
  Sparse<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f.mul(s, b[j].second));
      ++j;
    } else {
      auto v = f.add(a[i].second, f.mul(s, b[j].second));
      if (!f.is_zero(v)) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
bool is_unit_coeff(const F& f, const typename F::value_type& v) {
  return !f.is_zero(f.sub(v, f.one())) ? f.is_zero(f.add(v, f.one())) : true;
}

}  // namespace

template <FieldPolicy F>
ManinSymbolSpace<F>::ManinSymbolSpace(std::int64_t level, F field, int sign)
    : level_(level), field_(std::move(field)), sign_(sign), p1_(level), boundary_(field_, 0, 0) {
  if (sign != 0 && sign != 1) throw Error("sign must be 0 or +1");
  build_relations();
  build_boundary();
}

template <FieldPolicy F>
void ManinSymbolSpace<F>::build_relations() {
  const F& f = field_;
  const std::size_t n = p1_.size();
  auto idx = [&](std::int64_t c, std::int64_t d) { return static_cast<std::size_t>(p1_.index(c, d)); };

  // Two-term (and star) relations: x_i = s * x_j. Components get a root and a
  // sign relative to it; a sign conflict forces the component to vanish.
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [c, d] = p1_.entry(i);
    const std::size_t s = idx(d, -c);
    adj[i].emplace_back(s, -1);
    adj[s].emplace_back(i, -1);
    if (sign_ == 1) {
      const std::size_t t = idx(-c, d);
      adj[i].emplace_back(t, 1);
      adj[t].emplace_back(i, 1);
    }
  }
  std::vector<std::size_t> root(n, n);
  std::vector<int> rel(n, 0);
  std::vector<bool> dead_root(n, false);
  std::vector<std::size_t> roots;
  for (std::size_t start = 0; start < n; ++start) {
    if (root[start] != n) continue;
    root[start] = start;
    rel[start] = 1;
    roots.push_back(start);
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (auto [v, s] : adj[u]) {
        if (root[v] == n) {
          root[v] = start;
          rel[v] = rel[u] * s;
          queue.push_back(v);
        } else if (rel[v] != rel[u] * s) {
          dead_root[start] = true;
        }
      }
    }
  }

  // Variables are the live roots.
  std::vector<std::size_t> var_of(n, n);
  std::vector<std::size_t> var_root;
  for (std::size_t r : roots)
    if (!dead_root[r]) {
      var_of[r] = var_root.size();
      var_root.push_back(r);
    }
  const std::size_t nvars = var_root.size();

  // Three-term relations, one per tau-orbit, eliminated sparsely.
  std::vector<Sparse<F>> pivot_row(nvars);
  std::vector<bool> is_pivot(nvars, false);
  std::vector<std::size_t> pivot_order;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::map<std::size_t, value_type> acc;
    std::size_t cur = i;
    for (int k = 0; k < 3; ++k) {
      seen[cur] = true;
      const std::size_t r = root[cur];
      if (!dead_root[r]) {
        auto& slot = acc.try_emplace(var_of[r], f.zero()).first->second;
        slot = f.add(slot, f.from_int(rel[cur]));
      }
      auto [c, d] = p1_.entry(cur);
      cur = idx(d, -c - d);
    }
    Sparse<F> row;
    for (auto& [v, a] : acc)
      if (!f.is_zero(a)) row.emplace_back(v, a);
    // Reduce against existing pivots until none remain.
    for (bool changed = true; changed && !row.empty();) {
      changed = false;
      for (const auto& [v, a] : row) {
        if (!is_pivot[v]) continue;
        row = axpy(f, row, f.neg(a), pivot_row[v]);
        changed = true;
        break;
      }
    }
    if (row.empty()) continue;
    // Prefer a unit coefficient, then the sparsest choice by index.
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      const bool ku = is_unit_coeff(f, row[k].second), bu = is_unit_coeff(f, row[best].second);
      if (ku && !bu) best = k;
      else if (ku == bu && row[k].first > row[best].first) best = k;
    }
    const std::size_t pv = row[best].first;
    const value_type inv = f.inv(row[best].second);
    for (auto& e : row) e.second = f.mul(e.second, inv);
    pivot_row[pv] = std::move(row);
    is_pivot[pv] = true;
    pivot_order.push_back(pv);
  }

  // Free variables form the basis; pivots resolve in reverse order.
  std::vector<Sparse<F>> var_expr(nvars);
  for (std::size_t v = 0; v < nvars; ++v)
    if (!is_pivot[v]) {
      var_expr[v] = {{gens_.size(), f.one()}};
      gens_.push_back(var_root[v]);
    }
  for (auto it = pivot_order.rbegin(); it != pivot_order.rend(); ++it) {
    const std::size_t pv = *it;
    Sparse<F> e;
    for (const auto& [w, a] : pivot_row[pv])
      if (w != pv) e = axpy(f, e, f.neg(a), var_expr[w]);
    var_expr[pv] = std::move(e);
  }

  expr_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root[i];
    if (dead_root[r]) continue;
    expr_[i] = var_expr[var_of[r]];
    if (rel[i] < 0)
      for (auto& e : expr_[i]) e.second = f.neg(e.second);
  }
}

template <FieldPolicy F>
std::size_t ManinSymbolSpace<F>::cusp_index(const Cusp& c) const {
  for (std::size_t i = 0; i < cusps_.size(); ++i) {
    if (cusps_equivalent(c, cusps_[i], level_)) return i;
    if (sign_ == 1 && cusps_equivalent(Cusp::make(-c.num, c.den), cusps_[i], level_)) return i;
  }
  throw Error("cusp not found in boundary cusp list");
}

template <FieldPolicy F>
void ManinSymbolSpace<F>::build_boundary() {
  std::map<Cusp, std::size_t> memo;
  auto lookup = [&](const Cusp& c) {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    std::size_t k = cusps_.size();
    for (std::size_t i = 0; i < cusps_.size(); ++i) {
      if (cusps_equivalent(c, cusps_[i], level_) ||
          (sign_ == 1 && cusps_equivalent(Cusp::make(-c.num, c.den), cusps_[i], level_))) {
        k = i;
        break;
      }
    }
    if (k == cusps_.size()) cusps_.push_back(c);
    memo.emplace(c, k);
    return k;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ends(p1_.size());
  lookup(Cusp::infinity());
  lookup(Cusp::make(0, 1));
  for (std::size_t i = 0; i < p1_.size(); ++i) {
    auto [c, d] = p1_.entry(i);
    auto g = lift_to_sl2z(c, d, level_);
    ends[i] = {lookup(Cusp::make(g.a, g.c)), lookup(Cusp::make(g.b, g.d))};
  }
  boundary_ = Matrix<F>(field_, cusps_.size(), dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    auto [to, from] = ends[gens_[j]];
    boundary_(to, j) = field_.add(boundary_(to, j), field_.one());
    boundary_(from, j) = field_.sub(boundary_(from, j), field_.one());
  }
}

template <FieldPolicy F>
std::vector<typename F::value_type> ManinSymbolSpace<F>::symbol(std::int64_t c, std::int64_t d) const {
  std::vector<value_type> v(dimension(), field_.zero());
  const int i = p1_.index(c, d);
  if (i < 0) throw Error("Manin symbol not in P^1(Z/M)");
  for (const auto& [k, a] : expr_[static_cast<std::size_t>(i)]) v[k] = a;
  return v;
}

template <FieldPolicy F>
std::vector<typename F::value_type> ManinSymbolSpace<F>::modular_symbol(const Cusp& alpha, const Cusp& beta) const {
  const F& f = field_;
  // {0, x} as a sum of Manin symbols from the convergents of x.
  auto from_zero = [&](const Cusp& x) {
    std::vector<value_type> v = symbol(0, 1);
    if (x.den == 0) return v;
    std::int64_t a = x.num, b = x.den;
    std::int64_t p2 = 0, q2 = 1, p1 = 1, q1 = 0;  // p_{j-2}/q_{j-2}, p_{j-1}/q_{j-1}
    int j = 0;
    while (b != 0) {
      std::int64_t t = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --t;
      const std::int64_t r = a - t * b;
      a = b;
      b = r;
      const std::int64_t p = t * p1 + p2, q = t * q1 + q2;
      const std::int64_t cc = (j % 2 == 0) ? -q : q;  // (-1)^(j-1) q_j
      auto s = symbol(cc, q1);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.add(v[k], s[k]);
      p2 = p1;
      q2 = q1;
      p1 = p;
      q1 = q;
      ++j;
    }
    return v;
  };
  auto vb = from_zero(beta), va = from_zero(alpha);
  for (std::size_t k = 0; k < vb.size(); ++k) vb[k] = f.sub(vb[k], va[k]);
  return vb;
}

template <FieldPolicy F>
Matrix<F> ManinSymbolSpace<F>::heilbronn_action(const std::vector<Mat2>& mats) const {
  const F& f = field_;
  Matrix<F> out(f, dimension(), dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    auto [c, d] = p1_.entry(gens_[j]);
    std::vector<value_type> col(dimension(), f.zero());
    for (const auto& h : mats) {
      auto [c2, d2] = act(c, d, h);
      const int i = p1_.index(c2, d2);
      if (i < 0) continue;
      for (const auto& [k, a] : expr_[static_cast<std::size_t>(i)]) col[k] = f.add(col[k], a);
    }
    out.set_column(j, col);
  }
  return out;
}

template <FieldPolicy F>
std::vector<Mat2> ManinSymbolSpace<F>::heilbronn_for(const HeckeOp& op) const {
  if (op.n < 1) throw Error("Hecke index must be positive");
  if (op.kind == HeckeOp::Kind::T) {
    if (gcd(op.n, level_) != 1) throw Error("T_n requires n coprime to the level; use U_q");
    if (arith::is_prime(static_cast<std::uint64_t>(op.n))) return heilbronn_cremona(op.n);
    return heilbronn_merel(op.n);
  }
  if (level_ % op.n != 0) throw Error("U_q requires q dividing the level");
  return heilbronn_merel(op.n);
}

template <FieldPolicy F>
Matrix<F> ManinSymbolSpace<F>::hecke_matrix(const HeckeOp& op) const {
  return heilbronn_action(heilbronn_for(op));
}

template <FieldPolicy F>
Matrix<F> ManinSymbolSpace<F>::apply_hecke(const HeckeOp& op, const Matrix<F>& vectors) const {
  return apply_heilbronn(heilbronn_for(op), vectors);
}

template <FieldPolicy F>
Matrix<F> ManinSymbolSpace<F>::apply_heilbronn(const std::vector<Mat2>& mats, const Matrix<F>& vectors) const {
  const F& f = field_;
  if (vectors.rows() != dimension()) throw Error("apply_heilbronn: vector length mismatch");
  // Images of each generator as P^1 indices, shared by all columns.
  std::vector<std::vector<int>> hits(dimension());
  auto hits_of = [&](std::size_t j) -> const std::vector<int>& {
    if (hits[j].empty()) {
      auto [c, d] = p1_.entry(gens_[j]);
      for (const auto& h : mats) {
        auto [c2, d2] = act(c, d, h);
        hits[j].push_back(p1_.index(c2, d2));
      }
    }
    return hits[j];
  };
  Matrix<F> out(f, dimension(), vectors.cols());
  std::vector<value_type> w(p1_.size(), f.zero());
  std::vector<std::size_t> touched;
  for (std::size_t k = 0; k < vectors.cols(); ++k) {
    touched.clear();
    for (std::size_t j = 0; j < dimension(); ++j) {
      const value_type& vj = vectors(j, k);
      if (f.is_zero(vj)) continue;
      for (int i : hits_of(j)) {
        if (i < 0) continue;
        const auto ui = static_cast<std::size_t>(i);
        if (f.is_zero(w[ui])) touched.push_back(ui);
        w[ui] = f.add(w[ui], vj);
      }
    }
    for (std::size_t i : touched) {
      if (f.is_zero(w[i])) continue;
      for (const auto& [r, a] : expr_[i]) out(r, k) = f.add(out(r, k), f.mul(a, w[i]));
      w[i] = f.zero();
    }
  }
  return out;
}

template <FieldPolicy F>
Matrix<F> ManinSymbolSpace<F>::star_involution() const {
  Matrix<F> out(field_, dimension(), dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    auto [c, d] = p1_.entry(gens_[j]);
    out.set_column(j, symbol(-c, d));
  }
  return out;
}

template <FieldPolicy F>
Subspace<F> ManinSymbolSpace<F>::plus_subspace() const {
  return Subspace<F>(kernel(star_involution().shifted(field_.one())));
}

template <FieldPolicy F>
Subspace<F> ManinSymbolSpace<F>::cuspidal_subspace() const {
  return Subspace<F>(kernel(boundary_));
}

template <FieldPolicy F>
Matrix<F> degeneracy_map(const ManinSymbolSpace<F>& from, const ManinSymbolSpace<F>& to, std::int64_t t) {
  if (t < 1 || from.level() % (t * to.level()) != 0) throw Error("degeneracy map needs t * L | M");
  if (from.sign() != to.sign()) throw Error("degeneracy map between spaces of different sign");
  Matrix<F> out(from.field(), to.dimension(), from.dimension());
  for (std::size_t j = 0; j < from.dimension(); ++j) {
    auto [c, d] = from.p1().entry(from.generator(j));
    auto g = lift_to_sl2z(c, d, from.level());
    out.set_column(j, to.modular_symbol(Cusp::make(t * g.b, g.d), Cusp::make(t * g.a, g.c)));
  }
  return out;
}

template <FieldPolicy F>
Subspace<F> new_subspace(const ManinSymbolSpace<F>& space, std::int64_t n) {
  if (space.level() != n * n) throw Error("new_subspace: level must be N^2");
  ManinSymbolSpace<F> low(n, space.field(), space.sign());
  Subspace<F> cusp = space.cuspidal_subspace();
  Matrix<F> d1 = degeneracy_map(space, low, 1) * cusp.basis();
  Matrix<F> dn = degeneracy_map(space, low, n) * cusp.basis();
  Matrix<F> stacked(space.field(), d1.rows() + dn.rows(), cusp.dimension());
  for (std::size_t r = 0; r < d1.rows(); ++r)
    for (std::size_t c = 0; c < d1.cols(); ++c) {
      stacked(r, c) = d1(r, c);
      stacked(d1.rows() + r, c) = dn(r, c);
    }
  return cusp.sub(kernel(stacked));
}

std::int64_t sturm_bound(std::int64_t level) {
  const std::int64_t idx = arith::gamma0_index(level);
  return (2 * idx + 11) / 12;
}

ManinSymbolSpace<arith::RationalField> build_space_q(std::int64_t level, int sign) {
  if (level < 1) throw Error("level must be positive");
  return ManinSymbolSpace<arith::RationalField>(level, arith::RationalField{}, sign);
}

ManinSymbolSpace<arith::PrimeField> build_space_fp(std::int64_t level, std::uint64_t p, int sign) {
  if (level < 1) throw Error("level must be positive");
  if (p == 0 || (6 * static_cast<std::uint64_t>(level)) % p == 0) throw Error("bad characteristic");
  return ManinSymbolSpace<arith::PrimeField>(level, arith::PrimeField(p), sign);
}

template class ManinSymbolSpace<arith::RationalField>;
template class ManinSymbolSpace<arith::PrimeField>;
template Matrix<arith::RationalField> degeneracy_map(const ManinSymbolSpace<arith::RationalField>&,
                                                     const ManinSymbolSpace<arith::RationalField>&, std::int64_t);
template Matrix<arith::PrimeField> degeneracy_map(const ManinSymbolSpace<arith::PrimeField>&,
                                                  const ManinSymbolSpace<arith::PrimeField>&, std::int64_t);
template Subspace<arith::RationalField> new_subspace(const ManinSymbolSpace<arith::RationalField>&, std::int64_t);
template Subspace<arith::PrimeField> new_subspace(const ManinSymbolSpace<arith::PrimeField>&, std::int64_t);

}  // namespace eiscong::modsym
