#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "orlab/linalg.hpp"

namespace olab {

struct Block {
  std::size_t dim;
  double weight;
};

// (+)_k M_{n_k} with trace tau(a) = sum_k w_k Tr(a_k).
class WeightedBlockAlgebra {
 public:
  explicit WeightedBlockAlgebra(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool commutative() const;
  // tau(1).
  double total_measure() const;
  bool operator==(const WeightedBlockAlgebra& o) const;

 private:
  std::vector<Block> blocks_;
};

using AlgebraPtr = std::shared_ptr<const WeightedBlockAlgebra>;

AlgebraPtr make_algebra(std::vector<Block> blocks);

class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr alg, std::vector<CMatrix> blocks);

  static AlgebraElement zero(AlgebraPtr alg);
  static AlgebraElement identity(AlgebraPtr alg);
  // Commutative algebras: one scalar per block.
  static AlgebraElement diagonal(AlgebraPtr alg, const std::vector<double>& entries);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(std::size_t k) const { return blocks_[k]; }

  AlgebraElement adjoint() const;
  cplx trace() const;
  double op_norm() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_diagonal(double tol = 0.0) const;

  // Functional calculus for Hermitian elements, blockwise.
  AlgebraElement apply(const std::function<double(double)>& f) const;
  // |a| = (a* a)^{1/2}.
  AlgebraElement abs() const;
  // Eigenvalues of a Hermitian element, per block, ascending.
  std::vector<std::vector<double>> eigenvalues() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, cplx s) { return a *= s; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  AlgebraPtr alg_;
  std::vector<CMatrix> blocks_;
};

// ||ab - ba||_max.
double commutator_norm(const AlgebraElement& a, const AlgebraElement& b);
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace olab
