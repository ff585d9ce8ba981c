#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/arith/field.hpp"
#include "eiscong/error.hpp"

namespace eiscong::arith {

// Dense row-major matrix over a field policy.
template <FieldPolicy F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<value_type> column(std::size_t c) const {
    std::vector<value_type> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, const std::vector<value_type>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.is_zero(field_.sub(data_[i], o.data_[i]))) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const value_type& b = o(k, j);
          if (field_.is_zero(b)) continue;
          out(i, j) = field_.add(out(i, j), field_.mul(a, b));
        }
      }
    return out;
  }

  std::vector<value_type> operator*(const std::vector<value_type>& v) const {
    if (cols_ != v.size()) throw Error("matrix-vector product: shape mismatch");
    std::vector<value_type> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = (*this)(i, k);
        if (field_.is_zero(a) || field_.is_zero(v[k])) continue;
        out[i] = field_.add(out[i], field_.mul(a, v[k]));
      }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], o.data_[i]);
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], o.data_[i]);
    return out;
  }

  Matrix scaled(const value_type& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = field_.mul(x, s);
    return out;
  }

  // this - s * I
  Matrix shifted(const value_type& s) const {
    Matrix out = *this;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out(i, i) = field_.sub(out(i, i), s);
    return out;
  }

  // Submatrix of the listed columns.
  Matrix columns(const std::vector<std::size_t>& cols) const {
    Matrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << field_.to_string((*this)(r, c));
      os << "]\n";
    }
    return os.str();
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shapes differ");
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

// Reduced row echelon form in place; returns the pivot columns.
template <FieldPolicy F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    auto inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m(r, col))) continue;
      auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (f.is_zero(m(row, c))) continue;
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <FieldPolicy F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

// Basis of the right null space, as the columns of the returned matrix.
template <FieldPolicy F>
Matrix<F> kernel(const Matrix<F>& a) {
  const F& f = a.field();
  Matrix<F> r = a;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<F> k(f, a.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    k(free_cols[j], j) = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], j) = f.neg(r(i, free_cols[j]));
  }
  return k;
}

// Inverse of a square matrix; throws if singular.
template <FieldPolicy F>
Matrix<F> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw Error("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<F> aug(a.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = a.field().one();
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw Error("singular matrix");
  Matrix<F> out(a.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

// A subspace of F^n with a fixed basis (the columns of `basis`). Supports
// coordinates with respect to that basis.
template <FieldPolicy F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  explicit Subspace(Matrix<F> basis) : basis_(std::move(basis)), solver_(basis_.field(), 0, 0) {
    Matrix<F> t = basis_.transpose();
    auto piv = rref(t);
    if (piv.size() != basis_.cols()) throw Error("Subspace: basis columns are dependent");
    pivot_rows_ = piv;
    solver_ = inverse(basis_.transpose().columns(pivot_rows_).transpose());
  }

  // Spanned by the columns of `gens`, which may be dependent.
  static Subspace span(const Matrix<F>& gens) {
    Matrix<F> t = gens.transpose();
    auto piv = rref(t);
    Matrix<F> basis(gens.field(), gens.rows(), piv.size());
    for (std::size_t j = 0; j < piv.size(); ++j)
      for (std::size_t r = 0; r < gens.rows(); ++r) basis(r, j) = t(j, r);
    return Subspace(std::move(basis));
  }

  static Subspace whole(const F& field, std::size_t n) { return Subspace(Matrix<F>::identity(field, n)); }

  const Matrix<F>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.cols(); }
  std::size_t ambient_dimension() const { return basis_.rows(); }

  std::optional<std::vector<value_type>> coordinates(const std::vector<value_type>& v) const {
    const F& f = basis_.field();
    std::vector<value_type> picked(pivot_rows_.size());
    for (std::size_t i = 0; i < pivot_rows_.size(); ++i) picked[i] = v[pivot_rows_[i]];
    auto coords = solver_ * picked;
    auto back = basis_ * coords;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!f.is_zero(f.sub(back[i], v[i]))) return std::nullopt;
    return coords;
  }

  bool contains(const std::vector<value_type>& v) const { return coordinates(v).has_value(); }

  // Matrix of an ambient operator restricted to this subspace; throws if
  // the subspace is not stable.
  Matrix<F> restrict(const Matrix<F>& op) const {
    Matrix<F> images = op * basis_;
    Matrix<F> out(basis_.field(), dimension(), dimension());
    for (std::size_t j = 0; j < dimension(); ++j) {
      auto c = coordinates(images.column(j));
      if (!c) throw Error("subspace is not stable under the operator");
      out.set_column(j, *c);
    }
    return out;
  }

  // Subspace of this one given by coordinate vectors (columns of `coords`).
  Subspace sub(const Matrix<F>& coords) const { return Subspace(basis_ * coords); }

 private:
  Matrix<F> basis_;
  std::vector<std::size_t> pivot_rows_;
  Matrix<F> solver_;
};

// Characteristic polynomial det(xI - A), coefficients low to high, via
// reduction to upper Hessenberg form.
template <FieldPolicy F>
std::vector<typename F::value_type> charpoly(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw Error("charpoly of non-square matrix");
  const F& f = a.field();
  const std::size_t n = a.rows();
  Matrix<F> h = a;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && f.is_zero(h(i, m - 1))) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
    }
    auto inv = f.inv(h(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      if (f.is_zero(h(r, m - 1))) continue;
      auto u = f.mul(h(r, m - 1), inv);
      for (std::size_t c = 0; c < n; ++c) h(r, c) = f.sub(h(r, c), f.mul(u, h(m, c)));
      for (std::size_t rr = 0; rr < n; ++rr) h(rr, m) = f.add(h(rr, m), f.mul(u, h(rr, r)));
    }
  }
  // p_k = characteristic polynomial of the leading k x k block.
  using V = typename F::value_type;
  std::vector<std::vector<V>> p(n + 1);
  p[0] = {f.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<V> next(k + 1, f.zero());
    // x * p_{k-1} - h(k-1,k-1) * p_{k-1}
    for (std::size_t d = 0; d < k; ++d) {
      next[d + 1] = f.add(next[d + 1], p[k - 1][d]);
      next[d] = f.sub(next[d], f.mul(h(k - 1, k - 1), p[k - 1][d]));
    }
    V prod = f.one();
    for (std::size_t i = 1; i < k; ++i) {
      prod = f.mul(prod, h(k - i, k - i - 1));
      V coeff = f.mul(prod, h(k - i - 1, k - 1));
      if (f.is_zero(coeff)) continue;
      for (std::size_t d = 0; d < p[k - i - 1].size(); ++d)
        next[d] = f.sub(next[d], f.mul(coeff, p[k - i - 1][d]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

// poly(A) by Horner's rule; coefficients low to high.
template <FieldPolicy F>
Matrix<F> evaluate(const std::vector<typename F::value_type>& poly, const Matrix<F>& a) {
  const F& f = a.field();
  Matrix<F> acc(f, a.rows(), a.cols());
  for (std::size_t i = poly.size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t d = 0; d < a.rows(); ++d) acc(d, d) = f.add(acc(d, d), poly[i]);
  }
  return acc;
}

}  // namespace eiscong::arith
