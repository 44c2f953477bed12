#pragma once

// Dense exact linear algebra. Conventions used throughout the library:
//  * vectors are column matrices;
//  * Kronecker products use the row-major block convention
//      (a ⊗ b)(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l),
//    so an iterated tensor x ⊗ y ⊗ z is flattened the same way whichever
//    way it is bracketed;
//  * pivots are chosen leftmost-first, which makes every basis produced by
//    echelon reduction reproducible.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catmod/errors.hpp"
#include "catmod/scalar.hpp"

namespace catmod {

template <ExactScalar S>
class Mat {
 public:
  using Traits = ScalarTraits<S>;
  using Field = FieldOf<S>;

  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, Field field = Field{})
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Traits::zero(field)) {}

  static Mat identity(std::size_t n, Field field = Field{}) {
    Mat m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one(field);
    return m;
  }

  /// Integer literal convenience, mostly for tests and fixtures.
  static Mat from_ints(std::initializer_list<std::initializer_list<long long>> rows, Field field = Field{}) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    Mat m(r, c, field);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw ShapeError("ragged initializer");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = Traits::from_int(field, v);
      ++i;
    }
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<S>>& rows, Field field = Field{}) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.front().size() : 0;
    Mat m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ShapeError("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat column(const std::vector<S>& entries, Field field = Field{}) {
    Mat m(entries.size(), 1, field);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const S> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<S> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<S>& entries() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& x) { return Traits::is_zero(x); });
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const S& x = (*this)(i, j);
        if (i == j ? !(x == Traits::one(field_)) : !Traits::is_zero(x)) return false;
      }
    return true;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
    return a.data_ == b.data_;
  }

  Mat transpose() const {
    Mat t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat col(std::size_t j) const {
    Mat c(rows_, 1, field_);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Mat select_rows(const std::vector<std::size_t>& idx) const {
    Mat m(idx.size(), cols_, field_);
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(idx[r], j);
    return m;
  }

  Mat select_cols(const std::vector<std::size_t>& idx) const {
    Mat m(rows_, idx.size(), field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < idx.size(); ++c) m(i, c) = (*this)(i, idx[c]);
    return m;
  }

  S trace() const {
    if (!is_square()) throw ShapeError("trace of non-square matrix");
    S t = Traits::zero(field_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Mat& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const S& s, Mat a) { return a *= s; }
  friend Mat operator-(Mat a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    a.check_field(b);
    if (a.cols_ != b.rows_)
      throw ShapeError("product of " + a.shape() + " and " + b.shape());
    Mat c(a.rows_, b.cols_, a.field_);
    S tmp = Traits::zero(a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (Traits::is_zero(aik)) continue;
        const S* brow = b.data_.data() + k * b.cols_;
        S* crow = c.data_.data() + i * c.cols_;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (Traits::is_zero(brow[j])) continue;
          tmp = aik * brow[j];
          crow[j] += tmp;
        }
      }
    return c;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << Traits::to_string((*this)(i, j));
    }
    os << "]";
    return os.str();
  }

  void check_field(const Mat& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch(field_.name() + " vs " + o.field_.name());
  }

 private:
  void same_shape(const Mat& o, const char* op) const {
    check_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string("operator") + op + " on " + shape() + " and " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{};
  std::vector<S> data_;
};

template <ExactScalar S>
struct Echelon {
  Mat<S> form;                       // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank = 0;
};

namespace detail {

// Gauss-Jordan elimination in place; optionally mirrors every row operation
// on `transform`.
template <ExactScalar S>
std::vector<std::size_t> reduce_rows(Mat<S>& a, Mat<S>* transform) {
  using T = ScalarTraits<S>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  S tmp = T::zero(a.field());
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && T::is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
      if (transform)
        for (std::size_t j = 0; j < transform->cols(); ++j) std::swap((*transform)(p, j), (*transform)(r, j));
    }
    S inv = T::inverse(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    if (transform)
      for (std::size_t j = 0; j < transform->cols(); ++j) (*transform)(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || T::is_zero(a(i, c))) continue;
      S f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (T::is_zero(a(r, j))) continue;
        tmp = f * a(r, j);
        a(i, j) -= tmp;
      }
      if (transform)
        for (std::size_t j = 0; j < transform->cols(); ++j) {
          if (T::is_zero((*transform)(r, j))) continue;
          tmp = f * (*transform)(r, j);
          (*transform)(i, j) -= tmp;
        }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Reduced row echelon form with leftmost pivots.
template <ExactScalar S>
Echelon<S> echelonize(Mat<S> m) {
  auto pivots = detail::reduce_rows<S>(m, nullptr);
  Echelon<S> e{std::move(m), std::move(pivots), 0};
  e.rank = e.pivots.size();
  return e;
}

/// As echelonize, also returning the invertible T with T * m == form.
template <ExactScalar S>
std::pair<Echelon<S>, Mat<S>> echelonize_with_transform(Mat<S> m) {
  auto t = Mat<S>::identity(m.rows(), m.field());
  auto pivots = detail::reduce_rows<S>(m, &t);
  Echelon<S> e{std::move(m), std::move(pivots), 0};
  e.rank = e.pivots.size();
  return {std::move(e), std::move(t)};
}

template <ExactScalar S>
std::size_t rank(const Mat<S>& m) {
  return echelonize(m).rank;
}

/// Columns spanning {v : m v = 0}; one per free column, in increasing order.
template <ExactScalar S>
Mat<S> kernel_matrix(const Mat<S>& m) {
  using T = ScalarTraits<S>;
  auto e = echelonize(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Mat<S> k(m.cols(), free.size(), m.field());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = T::one(m.field());
    for (std::size_t r = 0; r < e.rank; ++r) k(e.pivots[r], f) = -e.form(r, free[f]);
  }
  if (!(m * k).is_zero()) throw Error("internal: kernel vector fails m v = 0");
  return k;
}

template <ExactScalar S>
std::vector<Mat<S>> kernel_basis(const Mat<S>& m) {
  auto k = kernel_matrix(m);
  std::vector<Mat<S>> out;
  for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
  return out;
}

/// Some x with m x == rhs, or nullopt when rhs leaves the column space.
template <ExactScalar S>
std::optional<Mat<S>> solve(const Mat<S>& m, const Mat<S>& rhs) {
  using T = ScalarTraits<S>;
  m.check_field(rhs);
  if (m.rows() != rhs.rows()) throw ShapeError("solve: " + m.shape() + " vs rhs " + rhs.shape());
  Mat<S> aug(m.rows(), m.cols() + rhs.cols(), m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, m.cols() + j) = rhs(i, j);
  }
  // Only eliminate on the coefficient columns.
  std::vector<std::size_t> pivots;
  {
    std::size_t r = 0;
    S tmp = T::zero(m.field());
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
      std::size_t p = r;
      while (p < m.rows() && T::is_zero(aug(p, c))) ++p;
      if (p == m.rows()) continue;
      if (p != r)
        for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(p, j), aug(r, j));
      S inv = T::inverse(aug(r, c));
      for (std::size_t j = c; j < aug.cols(); ++j) aug(r, j) *= inv;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == r || T::is_zero(aug(i, c))) continue;
        S f = aug(i, c);
        for (std::size_t j = c; j < aug.cols(); ++j) {
          if (T::is_zero(aug(r, j))) continue;
          tmp = f * aug(r, j);
          aug(i, j) -= tmp;
        }
      }
      pivots.push_back(c);
      ++r;
    }
  }
  for (std::size_t i = pivots.size(); i < m.rows(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      if (!T::is_zero(aug(i, m.cols() + j))) return std::nullopt;
  Mat<S> x(m.cols(), rhs.cols(), m.field());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(pivots[r], j) = aug(r, m.cols() + j);
  return x;
}

template <ExactScalar S>
Mat<S> inverse(const Mat<S>& m) {
  if (!m.is_square()) throw ShapeError("inverse of " + m.shape());
  auto [e, t] = echelonize_with_transform(m);
  if (e.rank != m.rows()) throw SingularMatrix("rank " + std::to_string(e.rank) + " < " + std::to_string(m.rows()));
  return t;
}

template <ExactScalar S>
bool is_invertible(const Mat<S>& m) {
  return m.is_square() && rank(m) == m.rows();
}

template <ExactScalar S>
Mat<S> kronecker(const Mat<S>& a, const Mat<S>& b) {
  using T = ScalarTraits<S>;
  a.check_field(b);
  Mat<S> k(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& aij = a(i, j);
      if (T::is_zero(aij)) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
          if (T::is_zero(b(r, c))) continue;
          k(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
        }
    }
  return k;
}

template <ExactScalar S>
Mat<S> hstack(const std::vector<Mat<S>>& blocks, std::size_t rows, FieldOf<S> field) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw ShapeError("hstack row mismatch");
    cols += b.cols();
  }
  Mat<S> out(rows, cols, field);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, off + j) = b(i, j);
    off += b.cols();
  }
  return out;
}

template <ExactScalar S>
Mat<S> vstack(const std::vector<Mat<S>>& blocks, std::size_t cols, FieldOf<S> field) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw ShapeError("vstack column mismatch");
    rows += b.rows();
  }
  Mat<S> out(rows, cols, field);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(off + i, j) = b(i, j);
    off += b.rows();
  }
  return out;
}

/// Block-diagonal matrix diag(a, b).
template <ExactScalar S>
Mat<S> direct_sum(const Mat<S>& a, const Mat<S>& b) {
  a.check_field(b);
  Mat<S> out(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

template <ExactScalar S>
Mat<S> power(const Mat<S>& m, std::size_t k) {
  if (!m.is_square()) throw ShapeError("power of " + m.shape());
  auto r = Mat<S>::identity(m.rows(), m.field());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

enum class Pivoting { leftmost, rightmost };

/// Basis of the column space of m in reduced column echelon form: column k
/// has a 1 in row pivot_rows[k] and 0 in every other pivot row. The
/// coordinates of a vector v in the span are therefore v's pivot entries.
template <ExactScalar S>
struct ColumnBasis {
  Mat<S> basis;
  std::vector<std::size_t> pivot_rows;

  std::size_t dim() const { return pivot_rows.size(); }
  /// Coordinate extraction; exact on vectors of the span.
  Mat<S> coordinates(const Mat<S>& v) const { return v.select_rows(pivot_rows); }
  /// The selection matrix realizing coordinates() as a linear map.
  Mat<S> selector() const {
    Mat<S> s(pivot_rows.size(), basis.rows(), basis.field());
    for (std::size_t k = 0; k < pivot_rows.size(); ++k) s(k, pivot_rows[k]) = ScalarTraits<S>::one(basis.field());
    return s;
  }
};

template <ExactScalar S>
ColumnBasis<S> column_basis(const Mat<S>& m, Pivoting pivoting = Pivoting::leftmost) {
  std::size_t n = m.rows();
  Mat<S> t = m.transpose();
  if (pivoting == Pivoting::rightmost) {
    std::vector<std::size_t> rev(n);
    for (std::size_t i = 0; i < n; ++i) rev[i] = n - 1 - i;
    t = t.select_cols(rev);
  }
  auto e = echelonize(std::move(t));
  ColumnBasis<S> out{Mat<S>(n, e.rank, m.field()), {}};
  for (std::size_t k = 0; k < e.rank; ++k) {
    std::size_t piv = pivoting == Pivoting::rightmost ? n - 1 - e.pivots[k] : e.pivots[k];
    out.pivot_rows.push_back(piv);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t src = pivoting == Pivoting::rightmost ? n - 1 - j : j;
      out.basis(j, k) = e.form(k, src);
    }
  }
  return out;
}

template <ExactScalar S>
bool same_column_space(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) return false;
  return column_basis(a).basis == column_basis(b).basis;
}

}  // namespace catmod
