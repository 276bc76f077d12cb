#pragma once

#include <cstdint>
#include <random>

#include "orlab/algebra.hpp"

namespace olab {

// Per-trial generator seeded from (seed, trial index) so trials are independent of evaluation order.
class InstanceRng {
 public:
  InstanceRng(std::uint64_t seed, std::uint64_t trial);

  double uniform(double a, double b);
  double log_uniform(double a, double b);
  double normal();
  int integer(int lo, int hi);  // inclusive
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Blocks of dimension 1..max_dim, weights in [0.1, 4].
AlgebraPtr random_algebra(InstanceRng& rng, int max_blocks = 3, int max_dim = 4);
// 1..max_atoms one-dimensional blocks, weights in [0.1, 4].
AlgebraPtr random_commutative(InstanceRng& rng, int max_atoms = 8);

// Complex Gaussian entries times `scale`.
AlgebraElement random_element(InstanceRng& rng, const AlgebraPtr& alg, double scale = 1.0);
AlgebraElement random_hermitian(InstanceRng& rng, const AlgebraPtr& alg, double scale = 1.0);
// c* c for a random c.
AlgebraElement random_positive(InstanceRng& rng, const AlgebraPtr& alg, double scale = 1.0);
// Real diagonal entries log-uniform in [lo, hi]; any algebra (diagonal within each block).
AlgebraElement random_diagonal(InstanceRng& rng, const AlgebraPtr& alg, double lo = 0.05, double hi = 5.0);
// Positive definite with tau(rho) = 1; eigenvalues spread over about two decades.
AlgebraElement random_density(InstanceRng& rng, const AlgebraPtr& alg);
// Diagonal positive definite with tau(rho) = 1.
AlgebraElement random_diagonal_density(InstanceRng& rng, const AlgebraPtr& alg);

}  // namespace olab
