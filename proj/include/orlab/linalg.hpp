#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace olab {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Blocks in this project are small (<= 64).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix adjoint() const;
  cplx trace() const;
  double frobenius() const;
  // Largest |a_ij| off the diagonal.
  double max_offdiag() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// Eigenpairs of a Hermitian matrix; values ascending, vectors as columns.
struct HermitianEigen {
  std::vector<double> values;
  CMatrix vectors;

  // V diag(f(lambda)) V*.
  CMatrix apply(const std::function<double(double)>& f) const;
};

// Cyclic Jacobi; stops once the off-diagonal Frobenius norm is below tol * ||a||_F.
HermitianEigen jacobi_eigen(const CMatrix& a, double tol = 1e-13);

// Singular values in descending order.
std::vector<double> singular_values(const CMatrix& a);

// a = U diag(sigma) V*, columns of U and V orthonormal where sigma > 0.
struct SvdFactors {
  CMatrix u;
  std::vector<double> sigma;
  CMatrix v;
};
SvdFactors svd(const CMatrix& a);

}  // namespace olab
