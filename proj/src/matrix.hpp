#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace elmlc {

// Dense row-major matrix of 64-bit floats. Plain value type; treated as
// immutable once handed to a model or dataset.
class Matrix {
 public:
  Matrix() = default;  // empty 0x0, used only as a "not yet set" placeholder
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Standard product; throws ShapeError when a.cols != b.rows.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);
Matrix identity(std::size_t n);
double frobenius_norm(const Matrix& m);

// Entrywise a - b; throws ShapeError on shape mismatch.
Matrix subtract(const Matrix& a, const Matrix& b);

// True when shapes and every bit of every entry agree.
bool bit_equal(const Matrix& a, const Matrix& b);

}  // namespace elmlc
