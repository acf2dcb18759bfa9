#include "entnf/random.hpp"

#include <cmath>

namespace entnf {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0));
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

Matrix random_special_linear(Eigen::Index n, Rng& rng, double max_condition) {
  for (;;) {
    Matrix g = ginibre(n, n, rng);
    Eigen::JacobiSVD<Matrix> svd(g);
    const auto& s = svd.singularValues();
    if (s[n - 1] <= 0.0 || s[0] / s[n - 1] > max_condition) continue;
    const Complex root = std::pow(g.determinant(), 1.0 / static_cast<double>(n));
    return g / root;
  }
}

Matrix random_contraction(Eigen::Index n, Rng& rng, double lo) {
  std::uniform_real_distribution<double> u(lo, 1.0);
  Matrix g = ginibre(n, n, rng);
  Eigen::JacobiSVD<Matrix> svd(g);
  return g * (u(rng) / svd.singularValues()[0]);
}

MultiTensor random_state(const Dims& dims, Rng& rng, bool normalize) {
  Matrix g = ginibre(static_cast<Eigen::Index>(product(dims)), 1, rng);
  Vector v = g.col(0);
  if (normalize) v.normalize();
  return MultiTensor(dims, std::move(v));
}

DensityOperator random_density(const Dims& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  Matrix g = ginibre(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(dims, std::move(rho));
}

LocalOperatorSet random_local_unitaries(const Dims& dims, Rng& rng) {
  std::vector<Matrix> ops;
  for (auto n : dims) ops.push_back(random_unitary(static_cast<Eigen::Index>(n), rng));
  return LocalOperatorSet(std::move(ops), LocalOperatorSet::Kind::unitary);
}

LocalOperatorSet random_special_linear_set(const Dims& dims, Rng& rng,
                                           double max_condition) {
  std::vector<Matrix> ops;
  for (auto n : dims)
    ops.push_back(random_special_linear(static_cast<Eigen::Index>(n), rng, max_condition));
  return LocalOperatorSet(std::move(ops), LocalOperatorSet::Kind::special_linear);
}

std::uint64_t generate_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace entnf
