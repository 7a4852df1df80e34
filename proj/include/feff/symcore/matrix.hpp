#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "feff/errors.hpp"
#include "feff/symcore/ratfunc.hpp"

namespace feff {

inline bool is_zero(const Rational& q) { return q == 0; }

// Pivot preference during elimination: smaller is simpler.
inline std::size_t pivot_weight(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}
inline std::size_t pivot_weight(const RatFunc& f) {
  if (f.is_constant()) return 0;
  return 1 + f.num().size() + 2 * f.den().size() + f.num().total_degree() + f.den().total_degree();
}

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix m(rows, cols);
    m(i, j) = T(1);
    return m;
  }
  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// Rows of the result are the given vectors.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  /// Entries in row-major order.
  std::vector<T> flatten() const { return data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!feff::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T& c) { return a *= c; }
  friend Matrix operator*(const T& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product size mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (feff::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!feff::is_zero(b(k, j))) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw DomainError("matrix-vector size mismatch");
    std::vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!feff::is_zero(a(i, k)) && !feff::is_zero(v[k])) r[i] += a(i, k) * v[k];
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Commutator [a, b] = ab - ba.
  friend Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(data_[0]));
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  /// Reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t best = rows_;
      std::size_t best_w = 0;
      for (std::size_t i = r; i < rows_; ++i) {
        if (feff::is_zero((*this)(i, c))) continue;
        std::size_t w = pivot_weight((*this)(i, c));
        if (best == rows_ || w < best_w) {
          best = i;
          best_w = w;
          if (w == 0) break;
        }
      }
      if (best == rows_) continue;
      swap_rows(r, best);
      T inv = T(1) / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j)
        if (!feff::is_zero((*this)(r, j))) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || feff::is_zero((*this)(i, c))) continue;
        T f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!feff::is_zero((*this)(r, j))) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  Matrix rref() const {
    Matrix m = *this;
    m.rref_in_place();
    return m;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref_in_place().size();
  }

  /// Basis of {v : Av = 0}, as columns of the result.
  Matrix nullspace() const {
    Matrix m = *this;
    auto pivots = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t free_count = cols_ - pivots.size();
    Matrix basis(cols_, free_count);
    std::size_t k = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      basis(f, k) = T(1);
      for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, f);
      ++k;
    }
    return basis;
  }

  /// Some solution X of AX = B, or nullopt when inconsistent.
  std::optional<Matrix> solve(const Matrix& b) const {
    if (b.rows_ != rows_) throw DomainError("solve: right-hand side size mismatch");
    Matrix aug(rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) aug(i, cols_ + j) = b(i, j);
    }
    auto pivots = aug.rref_in_place();
    Matrix x(cols_, b.cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] >= cols_) return std::nullopt;
      for (std::size_t j = 0; j < b.cols_; ++j) x(pivots[r], j) = aug(r, cols_ + j);
    }
    return x;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw DomainError("inverse of a non-square matrix");
    auto x = solve(identity(rows_));
    if (!x || rank() != rows_) throw DomainError("matrix is singular");
    return *x;
  }

  T determinant() const {
    if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
    Matrix m = *this;
    T det(1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t best = rows_, best_w = 0;
      for (std::size_t i = c; i < rows_; ++i) {
        if (feff::is_zero(m(i, c))) continue;
        std::size_t w = pivot_weight(m(i, c));
        if (best == rows_ || w < best_w) {
          best = i;
          best_w = w;
        }
      }
      if (best == rows_) return T(0);
      if (best != c) {
        m.swap_rows(best, c);
        det = -det;
      }
      det *= m(c, c);
      T inv = T(1) / m(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (feff::is_zero(m(i, c))) continue;
        T f = m(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j)
          if (!feff::is_zero(m(c, j))) m(i, j) -= f * m(c, j);
      }
    }
    return det;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + to_str((*this)(i, j));
    }
    return s + "]";
  }

 private:
  static std::string to_str(const Rational& q) { return q.get_str(); }
  static std::string to_str(const RatFunc& f) { return f.str(); }
  template <class U>
  static std::string to_str(const U& u) {
    return u.str();
  }

  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix size mismatch");
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using FMatrix = Matrix<RatFunc>;
using QVector = std::vector<Rational>;

inline FMatrix lift(const QMatrix& m) {
  return m.map([](const Rational& q) { return RatFunc(q); });
}

/// Stacks matrices as flattened rows: row k = entries of ms[k].
inline QMatrix flatten_rows(const std::vector<QMatrix>& ms) {
  if (ms.empty()) return {};
  QMatrix out(ms.size(), ms[0].rows() * ms[0].cols());
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t e = 0; e < ms[k].data().size(); ++e) out(k, e) = ms[k].data()[e];
  return out;
}

/// Dimension of the span of a list of matrices.
inline std::size_t span_dim(const std::vector<QMatrix>& ms) { return ms.empty() ? 0 : flatten_rows(ms).rank(); }

}  // namespace feff
