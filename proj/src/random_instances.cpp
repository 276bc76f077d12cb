#include "orlab/random_instances.hpp"

#include <cmath>

namespace olab {

InstanceRng::InstanceRng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(trial), std::uint32_t(trial >> 32)};
  gen_.seed(seq);
}

double InstanceRng::uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }

double InstanceRng::log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

double InstanceRng::normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

int InstanceRng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

AlgebraPtr random_algebra(InstanceRng& rng, int max_blocks, int max_dim) {
  std::vector<Block> blocks;
  const int n = rng.integer(1, max_blocks);
  for (int k = 0; k < n; ++k) blocks.push_back({std::size_t(rng.integer(1, max_dim)), rng.uniform(0.1, 4.0)});
  return make_algebra(std::move(blocks));
}

AlgebraPtr random_commutative(InstanceRng& rng, int max_atoms) {
  std::vector<Block> blocks;
  const int n = rng.integer(1, max_atoms);
  for (int k = 0; k < n; ++k) blocks.push_back({1, rng.uniform(0.1, 4.0)});
  return make_algebra(std::move(blocks));
}

AlgebraElement random_element(InstanceRng& rng, const AlgebraPtr& alg, double scale) {
  std::vector<CMatrix> out;
  for (const auto& b : alg->blocks()) {
    CMatrix m(b.dim, b.dim);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) {
        const double re = rng.normal(), im = rng.normal();
        m(i, j) = scale * cplx(re, im);
      }
    out.push_back(std::move(m));
  }
  return {alg, std::move(out)};
}

AlgebraElement random_hermitian(InstanceRng& rng, const AlgebraPtr& alg, double scale) {
  const auto c = random_element(rng, alg, scale);
  return (c + c.adjoint()) * cplx(0.5);
}

AlgebraElement random_positive(InstanceRng& rng, const AlgebraPtr& alg, double scale) {
  const auto c = random_element(rng, alg, std::sqrt(scale));
  return c.adjoint() * c;
}

AlgebraElement random_diagonal(InstanceRng& rng, const AlgebraPtr& alg, double lo, double hi) {
  std::vector<CMatrix> out;
  for (const auto& b : alg->blocks()) {
    std::vector<double> d;
    for (std::size_t i = 0; i < b.dim; ++i) d.push_back(rng.log_uniform(lo, hi));
    out.push_back(CMatrix::diagonal(d));
  }
  return {alg, std::move(out)};
}

AlgebraElement random_density(InstanceRng& rng, const AlgebraPtr& alg) {
  const auto c = random_element(rng, alg);
  const auto eig = (c + c.adjoint()) * cplx(0.5);
  // exp of a Hermitian matrix: positive definite with a controlled spread.
  auto rho = eig.apply([](double x) { return std::exp(x); });
  rho *= cplx(1.0 / rho.trace().real());
  return rho;
}

AlgebraElement random_diagonal_density(InstanceRng& rng, const AlgebraPtr& alg) {
  auto rho = random_diagonal(rng, alg, 0.1, 10.0);
  rho *= cplx(1.0 / rho.trace().real());
  return rho;
}

}  // namespace olab
