#pragma once

#include <cstddef>
#include <vector>

// Minimal dense linear algebra: just enough for the Procrustes solve.
// Everything is double precision, row-major, and immutable in spirit --
// operations return fresh matrices.

namespace livkit::la {

class DenseMatrix {
 public:
  // Zero-initialized r x c matrix. r and c must be positive.
  DenseMatrix(std::size_t r, std::size_t c);
  // Takes ownership of row-major data; validates size and finiteness.
  DenseMatrix(std::size_t r, std::size_t c, std::vector<double> values);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
double frobenius_norm(const DenseMatrix& a);

struct SvdResult {
  DenseMatrix u;              // m x k, orthonormal columns
  std::vector<double> sigma;  // length k, non-negative, non-increasing
  DenseMatrix vt;             // k x n, orthonormal rows
};

// Thin SVD via cyclic one-sided Jacobi. Deterministic for a fixed input:
// fixed sweep order, and each U column's largest-magnitude entry is made
// non-negative (V adjusted to match). Wide inputs are handled by
// decomposing the transpose and swapping factors. Throws on non-convergence
// after the sweep cap (60), reporting the residual.
SvdResult svd(const DenseMatrix& a);

}  // namespace livkit::la
