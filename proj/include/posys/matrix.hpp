#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "posys/rational.hpp"

namespace posys {

/// Dense row-major matrix over an exact rational or binary64 scalar.
/// `tol` is the relative rank threshold consulted by the binary64 backend
/// (singular values below tol * sigma_max count as zero); the exact backend
/// ignores it.
template <class T>
class Mat {
 public:
  double tol = 1e-10;

  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Mat from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> tmp;
    for (const auto& r : rows) tmp.emplace_back(r);
    return from_rows(tmp);
  }

  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    Mat m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw std::invalid_argument("Mat::from_rows: ragged rows");
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  static Mat from_cols(const std::vector<std::vector<T>>& cols) {
    Mat m(cols.empty() ? 0 : cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw std::invalid_argument("Mat::from_cols: ragged columns");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Mat transposed() const {
    Mat m(cols_, rows_);
    m.tol = tol;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
    Mat out(rows_, rhs.cols_);
    out.tol = tol;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T{}) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("Mat::operator*: vector length mismatch");
    std::vector<T> out(rows_, T{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Columns selected in the given order.
  Mat select_cols(const std::vector<std::size_t>& idx) const {
    Mat out(rows_, idx.size());
    out.tol = tol;
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
    return out;
  }

  Mat select_rows(const std::vector<std::size_t>& idx) const {
    Mat out(idx.size(), cols_);
    out.tol = tol;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
    return out;
  }

  static Mat vstack(const Mat& top, const Mat& bottom) {
    if (top.cols_ != bottom.cols_) throw std::invalid_argument("Mat::vstack: width mismatch");
    Mat out(top.rows_ + bottom.rows_, top.cols_);
    out.tol = top.tol;
    for (std::size_t i = 0; i < top.rows_; ++i)
      for (std::size_t j = 0; j < top.cols_; ++j) out(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows_; ++i)
      for (std::size_t j = 0; j < top.cols_; ++j) out(top.rows_ + i, j) = bottom(i, j);
    return out;
  }

  bool same_entries(const Mat& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Mat<Rat>;
using RealMatrix = Mat<double>;

RealMatrix to_real(const RatMatrix& m);
RatMatrix to_rational(const RealMatrix& m);

}  // namespace posys
