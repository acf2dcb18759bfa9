#pragma once

#include <cstdint>
#include <random>

#include "entnf/tensor.hpp"

namespace entnf {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase-fixed R).
Matrix random_unitary(Eigen::Index n, Rng& rng);

/// Ginibre matrix divided by the principal n-th root of its determinant.
///
/// Draws whose condition number exceeds `max_condition` are rejected. The
/// principal branch of det^{1/n} is used; any other branch differs by an
/// n-th root of unity, which no modulus-based quantity can see.
Matrix random_special_linear(Eigen::Index n, Rng& rng, double max_condition = 20.0);

/// Local operator with largest singular value `scale` drawn in [lo, 1].
Matrix random_contraction(Eigen::Index n, Rng& rng, double lo = 0.2);

MultiTensor random_state(const Dims& dims, Rng& rng, bool normalize = true);

/// Full-rank density operator G G^dagger / tr, G square Ginibre.
DensityOperator random_density(const Dims& dims, Rng& rng);

LocalOperatorSet random_local_unitaries(const Dims& dims, Rng& rng);
LocalOperatorSet random_special_linear_set(const Dims& dims, Rng& rng,
                                           double max_condition = 20.0);

/// Fresh seed from std::random_device, for callers that did not supply one.
std::uint64_t generate_seed();

}  // namespace entnf
