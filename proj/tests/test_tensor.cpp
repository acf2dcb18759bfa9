#include <doctest.h>

#include <cmath>

#include "entnf/levi_civita.hpp"
#include "entnf/random.hpp"
#include "entnf/states.hpp"
#include "entnf/tensor.hpp"
#include "oracles.hpp"

using namespace entnf;

namespace {

Dims random_dims(Rng& rng) {
  std::uniform_int_distribution<int> parties(1, 4), dim(1, 3);
  Dims d(static_cast<std::size_t>(parties(rng)));
  for (auto& x : d) x = static_cast<std::size_t>(dim(rng));
  return d;
}

std::vector<Matrix> random_ops(const Dims& dims, Rng& rng) {
  std::vector<Matrix> ops;
  for (auto d : dims) ops.push_back(ginibre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng));
  return ops;
}

}  // namespace

TEST_CASE("multi-index layout has party 1 slowest") {
  MultiTensor t(Dims{2, 3, 4});
  CHECK(t.offset({1, 2, 3}) == 23);
  CHECK(t.offset({0, 1, 0}) == 4);
  CHECK(t.multi_index(13) == std::vector<std::size_t>{1, 0, 1});
  for (std::size_t f = 0; f < t.size(); ++f) CHECK(t.offset(t.multi_index(f)) == f);
}

TEST_CASE("construction rejects bad shapes and entries") {
  CHECK_THROWS_AS(MultiTensor(Dims{2, 2}, Vector::Zero(3)), DimensionError);
  Vector v = Vector::Zero(4);
  v[2] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(MultiTensor(Dims{2, 2}, v), InvalidArgument);
  v[2] = Complex(0.0, INFINITY);
  CHECK_THROWS_AS(MultiTensor(Dims{2, 2}, v), InvalidArgument);
  CHECK_THROWS(MultiTensor(Dims{2, 0}));

  Matrix m = Matrix::Identity(4, 4);
  m(0, 1) = 0.5;
  CHECK_THROWS(DensityOperator::checked(Dims{2, 2}, m));
  CHECK_THROWS(DensityOperator::checked(Dims{2, 2}, -Matrix::Identity(4, 4)));
  CHECK_THROWS_AS(DensityOperator(Dims{2, 3}, Matrix::Identity(4, 4)), DimensionError);
  CHECK_NOTHROW(DensityOperator::checked(Dims{2, 2}, Matrix::Identity(4, 4) / 4.0));
}

TEST_CASE("local operator set flags") {
  Rng rng(1);
  CHECK_NOTHROW(LocalOperatorSet({random_unitary(3, rng)}, LocalOperatorSet::Kind::unitary));
  CHECK_THROWS(LocalOperatorSet({ginibre(3, 3, rng)}, LocalOperatorSet::Kind::unitary));
  CHECK_NOTHROW(LocalOperatorSet({random_special_linear(3, rng)}, LocalOperatorSet::Kind::special_linear));
  CHECK_THROWS(LocalOperatorSet({Matrix(2.0 * Matrix::Identity(2, 2))}, LocalOperatorSet::Kind::special_linear));
  CHECK_THROWS(LocalOperatorSet({ginibre(2, 3, rng)}, LocalOperatorSet::Kind::general));

  const auto s = random_special_linear_set({2, 3, 4}, rng);
  for (auto d : s.det_tags()) CHECK(std::abs(d - 1.0) < 1e-9);
  CHECK(LocalOperatorSet::identity({2, 3}).distance_from_identity() == 0.0);
}

TEST_CASE("apply_local matches the dense Kronecker product") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims dims = random_dims(rng);
    const auto psi = random_state(dims, rng);
    const auto ops = random_ops(dims, rng);
    const Vector expected = oracle::kron_all(ops) * psi.data();
    const auto out = apply_local(psi, LocalOperatorSet(ops));
    CHECK((out.data() - expected).norm() <= 1e-12 * expected.norm());

    const auto rho = random_density(dims, rng);
    const Matrix big = oracle::kron_all(ops);
    const Matrix expected_rho = big * rho.matrix() * big.adjoint();
    const auto out_rho = apply_local(rho, LocalOperatorSet(ops));
    CHECK((out_rho.matrix() - expected_rho).norm() <= 1e-12 * expected_rho.norm());
  }
}

TEST_CASE("apply_local leaves its input untouched and names the bad party") {
  const auto psi = states::ghz(3);
  const auto copy = psi;
  LocalOperatorSet ops({Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  CHECK((apply_local(psi, ops).data() - psi.data()).norm() == 0.0);
  CHECK(psi.data() == copy.data());

  LocalOperatorSet bad({Matrix::Identity(2, 2), Matrix::Identity(3, 3), Matrix::Identity(2, 2)});
  try {
    apply_local(psi, bad);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(e.party() == 1);
    CHECK(std::string(e.what()).find("party 2") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_local(psi, LocalOperatorSet::identity({2, 2})), DimensionError);
}

TEST_CASE("apply_local composes") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Dims dims = random_dims(rng);
    const auto psi = random_state(dims, rng);
    const LocalOperatorSet a(random_ops(dims, rng)), b(random_ops(dims, rng));
    const auto two_step = apply_local(apply_local(psi, a), b);
    const auto one_step = apply_local(psi, compose(b, a));
    CHECK((two_step.data() - one_step.data()).norm() <= 1e-12 * one_step.norm());

    const auto rho = random_density(dims, rng);
    const auto r2 = apply_local(apply_local(rho, a), b);
    const auto r1 = apply_local(rho, compose(b, a));
    CHECK((r2.matrix() - r1.matrix()).norm() <= 1e-12 * r1.matrix().norm());
  }
}

TEST_CASE("unitary local operators preserve the norm") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Dims dims = random_dims(rng);
    const auto psi = random_state(dims, rng, false);
    const auto out = apply_local(psi, random_local_unitaries(dims, rng));
    CHECK(std::abs(out.norm() - psi.norm()) <= 1e-12 * psi.norm());
  }
}

TEST_CASE("W filtered by diag(t, 1/t) on every party") {
  const auto w = states::make({states::Canonical::w, 3, 1.0, false});
  const double t = 0.1;
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = t;
  a(1, 1) = 1.0 / t;
  // Every term of |001>+|010>+|100> picks up t * t / t = t.
  const auto out = apply_local(w, LocalOperatorSet({a, a, a}));
  CHECK(out.norm_squared() == doctest::Approx(3e-2).epsilon(1e-14));
  Matrix b = a.inverse();
  const auto grow = apply_local(w, LocalOperatorSet({b, b, b}));
  CHECK(grow.norm_squared() == doctest::Approx(3.0 / (t * t)).epsilon(1e-14));
}

TEST_CASE("partial trace matches the index-loop oracle and keeps the trace") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Dims dims = random_dims(rng);
    const auto rho = random_density(dims, rng);
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const Matrix got = partial_trace(rho, k);
      const Matrix want = oracle::partial_trace(rho.matrix(), dims, k);
      CHECK((got - want).norm() <= 1e-13);
      CHECK(std::abs(got.trace().real() - rho.trace()) <= 1e-12 * rho.trace());
    }
  }
  CHECK_THROWS(partial_trace(random_density({2, 2}, rng), 2));
}

TEST_CASE("reduced operators of canonical states") {
  const auto ghz = pure_to_density(states::ghz(3));
  for (std::size_t k = 0; k < 3; ++k)
    CHECK((partial_trace(ghz, k) - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);

  const auto prod = pure_to_density(states::basis({2, 2}, {0, 0}));
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  CHECK((partial_trace(prod, 0) - proj).norm() == 0.0);

  const Matrix w1 = partial_trace(pure_to_density(states::w()), 0);
  CHECK(w1(0, 0).real() == doctest::Approx(2.0 / 3.0));
  CHECK(w1(1, 1).real() == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(w1(0, 1)) < 1e-15);
}

TEST_CASE("unfolding") {
  const Matrix g = unfold(states::ghz(3), 0);
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 4);
  Matrix want = Matrix::Zero(2, 4);
  want(0, 0) = want(1, 3) = 1.0 / std::sqrt(2.0);
  CHECK((g - want).norm() < 1e-15);

  Rng rng(9);
  const auto bip = random_state({2, 3}, rng);
  const Matrix m = unfold(bip, 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == bip({i, j}));

  for (int trial = 0; trial < 40; ++trial) {
    const Dims dims = random_dims(rng);
    const auto psi = random_state(dims, rng);
    const Matrix rho = oracle::outer(psi.data());
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const Matrix u = unfold(psi, k);
      CHECK((u * u.adjoint() - oracle::partial_trace(rho, dims, k)).norm() <= 1e-12);
      CHECK((fold(u, dims, k).data() - psi.data()).norm() == 0.0);
      CHECK((reduced_operator(psi, k) - u * u.adjoint()).norm() <= 1e-14);
    }
  }
}

TEST_CASE("pure_to_density") {
  const auto b = pure_to_density(states::bell());
  int halves = 0;
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c = 0; c < 4; ++c)
      if (std::abs(b.matrix()(r, c) - 0.5) < 1e-15) ++halves;
  CHECK(halves == 4);
  CHECK(pure_to_density(MultiTensor(Dims{2, 2})).matrix().norm() == 0.0);

  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random_state(random_dims(rng), rng, false);
    CHECK(std::abs(pure_to_density(psi).trace() - psi.norm_squared()) <= 1e-12 * psi.norm_squared());
  }
}

TEST_CASE("density factor reproduces the operator") {
  Rng rng(4);
  const auto rho = random_density({2, 3}, rng);
  const Matrix f = density_factor(rho);
  CHECK((f * f.adjoint() - rho.matrix()).norm() < 1e-12);
  const auto pure = pure_to_density(random_state({2, 2}, rng));
  CHECK(density_factor(pure, 1e-12).cols() == 1);
}

TEST_CASE("Levi-Civita symbol agrees with inversion counting") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto& eps = LeviCivita::of(n);
    std::size_t count = 1;
    for (std::size_t i = 2; i <= n; ++i) count *= i;
    CHECK(eps.entries().size() == count);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      CHECK(eps(idx) == oracle::sign_by_inversions(idx));
      std::size_t c = 0;
      while (c < n && ++idx[c] == n) idx[c++] = 0;
      if (c == n) break;
    }
  }
  const std::vector<std::size_t> out_of_range{0, 5};
  CHECK(LeviCivita::of(2)(out_of_range) == 0);
}

TEST_CASE("random special linear draws have unit determinant") {
  Rng rng(12);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = random_special_linear(n, rng);
      CHECK(std::abs(a.determinant() - 1.0) < 1e-10);
    }
  const Matrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).norm() < 1e-13);
  const Matrix c = random_contraction(3, rng);
  Eigen::JacobiSVD<Matrix> svd(c);
  CHECK(svd.singularValues()(0) <= 1.0 + 1e-14);
}
