#include "orlab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "orlab/extended.hpp"

namespace olab {

WeightedBlockAlgebra::WeightedBlockAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("algebra: at least one block required");
  for (const auto& b : blocks_) {
    if (b.dim < 1) throw DomainError("algebra: block dimension must be >= 1");
    if (!(b.weight > 0) || !std::isfinite(b.weight)) throw DomainError("algebra: block weights must be positive");
  }
}

bool WeightedBlockAlgebra::commutative() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.dim == 1; });
}

double WeightedBlockAlgebra::total_measure() const {
  double m = 0;
  for (const auto& b : blocks_) m += b.weight * double(b.dim);
  return m;
}

bool WeightedBlockAlgebra::operator==(const WeightedBlockAlgebra& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].dim != o.blocks_[k].dim || blocks_[k].weight != o.blocks_[k].weight) return false;
  return true;
}

AlgebraPtr make_algebra(std::vector<Block> blocks) {
  return std::make_shared<const WeightedBlockAlgebra>(std::move(blocks));
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, std::vector<CMatrix> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
  if (!alg_) throw DomainError("element: null algebra");
  if (blocks_.size() != alg_->size()) throw DomainError("element: block count does not match the algebra");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const std::size_t n = alg_->blocks()[k].dim;
    if (blocks_[k].rows() != n || blocks_[k].cols() != n)
      throw DomainError("element: block " + std::to_string(k) + " has the wrong shape");
  }
}

AlgebraElement AlgebraElement::zero(AlgebraPtr alg) {
  std::vector<CMatrix> b;
  for (const auto& bl : alg->blocks()) b.emplace_back(bl.dim, bl.dim);
  return {std::move(alg), std::move(b)};
}

AlgebraElement AlgebraElement::identity(AlgebraPtr alg) {
  std::vector<CMatrix> b;
  for (const auto& bl : alg->blocks()) b.push_back(CMatrix::identity(bl.dim));
  return {std::move(alg), std::move(b)};
}

AlgebraElement AlgebraElement::diagonal(AlgebraPtr alg, const std::vector<double>& entries) {
  if (!alg->commutative()) throw DomainError("diagonal: algebra must be commutative");
  if (entries.size() != alg->size()) throw DomainError("diagonal: one entry per block required");
  std::vector<CMatrix> b;
  for (double e : entries) {
    CMatrix m(1, 1);
    m(0, 0) = e;
    b.push_back(std::move(m));
  }
  return {std::move(alg), std::move(b)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return {alg_, std::move(b)};
}

cplx AlgebraElement::trace() const {
  cplx s = 0;
  for (std::size_t k = 0; k < blocks_.size(); ++k) s += alg_->blocks()[k].weight * blocks_[k].trace();
  return s;
}

double AlgebraElement::op_norm() const {
  double m = 0;
  for (const auto& b : blocks_) {
    const auto sv = singular_values(b);
    if (!sv.empty()) m = std::max(m, sv.front());
  }
  return m;
}

bool AlgebraElement::is_hermitian(double tol) const {
  for (const auto& b : blocks_)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = i; j < b.cols(); ++j)
        if (std::abs(b(i, j) - std::conj(b(j, i))) > tol) return false;
  return true;
}

bool AlgebraElement::is_diagonal(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const CMatrix& b) { return b.max_offdiag() <= tol; });
}

AlgebraElement AlgebraElement::apply(const std::function<double(double)>& f) const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) {
    if (m.max_offdiag() == 0.0) {
      CMatrix d(m.rows(), m.cols());
      for (std::size_t i = 0; i < m.rows(); ++i) d(i, i) = f(m(i, i).real());
      b.push_back(std::move(d));
    } else {
      b.push_back(jacobi_eigen(m).apply(f));
    }
  }
  return {alg_, std::move(b)};
}

AlgebraElement AlgebraElement::abs() const {
  std::vector<CMatrix> b;
  for (const auto& m : blocks_) {
    const auto f = svd(m);
    b.push_back(f.v * CMatrix::diagonal(f.sigma) * f.v.adjoint());
  }
  return {alg_, std::move(b)};
}

std::vector<std::vector<double>> AlgebraElement::eigenvalues() const {
  std::vector<std::vector<double>> out;
  for (const auto& m : blocks_) out.push_back(jacobi_eigen(m).values);
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!(*alg_ == *o.alg_)) throw DomainError("element: algebra mismatch");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!(*alg_ == *o.alg_)) throw DomainError("element: algebra mismatch");
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(*a.alg_ == *b.alg_)) throw DomainError("element: algebra mismatch");
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(a.blocks_[k] * b.blocks_[k]);
  return {a.alg_, std::move(out)};
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    const auto& x = a.block(k);
    const auto& y = b.block(k);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
  }
  return m;
}

double commutator_norm(const AlgebraElement& a, const AlgebraElement& b) { return max_abs_diff(a * b, b * a); }

}  // namespace olab
