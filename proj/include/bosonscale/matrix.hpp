#ifndef BOSONSCALE_MATRIX_HPP
#define BOSONSCALE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bosonscale {

using complex_t = std::complex<double>;

/// Dense complex matrix, row-major. Every entry is finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : ComplexMatrix(rows, cols, std::vector<complex_t>(rows * cols)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    }
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  /// Row-major initializer, e.g. ComplexMatrix::from_rows({{a, b}, {c, d}}).
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complex_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<complex_t> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ComplexMatrix: ragged rows");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
    return m;
  }

  static ComplexMatrix constant(std::size_t rows, std::size_t cols, complex_t value) {
    return ComplexMatrix(rows, cols, std::vector<complex_t>(rows * cols, value));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex_t operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  complex_t& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const complex_t> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const complex_t> entries() const noexcept { return data_; }

  ComplexMatrix scaled(complex_t c) const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z *= c;
    return out;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex_t aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("ComplexMatrix: shape mismatch in difference");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  /// Largest entry modulus.
  double max_abs() const noexcept {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<complex_t> data_;
};

/// Row and column index sets of an n x n sub-matrix, both strictly increasing.
class SubmatrixSpec {
 public:
  SubmatrixSpec(std::vector<std::size_t> row_indices, std::vector<std::size_t> col_indices)
      : rows_(std::move(row_indices)), cols_(std::move(col_indices)) {
    if (rows_.empty() || rows_.size() != cols_.size()) {
      throw std::invalid_argument("SubmatrixSpec: index lists must be non-empty and equal length");
    }
    check_increasing(rows_, "row");
    check_increasing(cols_, "column");
  }

  /// Leading block: rows and columns 0..n-1.
  static SubmatrixSpec leading(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return SubmatrixSpec(idx, idx);
  }

  /// Principal block with the same index set on rows and columns.
  static SubmatrixSpec diagonal(std::vector<std::size_t> idx) { return SubmatrixSpec(idx, idx); }

  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<std::size_t>& row_indices() const noexcept { return rows_; }
  const std::vector<std::size_t>& col_indices() const noexcept { return cols_; }

 private:
  static void check_increasing(const std::vector<std::size_t>& v, const char* what) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] <= v[i - 1]) {
        throw std::invalid_argument(std::string("SubmatrixSpec: ") + what +
                                    " indices must be strictly increasing");
      }
    }
  }

  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
};

inline ComplexMatrix submatrix(const ComplexMatrix& m, const SubmatrixSpec& spec) {
  const auto& ri = spec.row_indices();
  const auto& ci = spec.col_indices();
  if (ri.back() >= m.rows() || ci.back() >= m.cols()) {
    throw std::invalid_argument("submatrix: index out of range");
  }
  const std::size_t n = spec.size();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(ri[i], ci[j]);
  return out;
}

}  // namespace bosonscale

#endif  // BOSONSCALE_MATRIX_HPP
