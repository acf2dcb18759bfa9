#pragma once

// Reference computations used by the tests. Everything here is written
// independently of the library: dense Kronecker products instead of mode
// products, explicit index loops instead of unfoldings, and a naive
// epsilon-contraction over every index assignment.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "entnf/monotones.hpp"
#include "entnf/tensor.hpp"

namespace oracle {

using entnf::Complex;
using entnf::Dims;
using entnf::Matrix;
using entnf::MultiTensor;
using entnf::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix kron_all(const std::vector<Matrix>& ops) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

/// Index tuple of a flat offset, party 1 slowest.
inline std::vector<std::size_t> digits(std::size_t flat, const Dims& dims) {
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = flat % dims[k];
    flat /= dims[k];
  }
  return idx;
}

inline std::size_t total(const Dims& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

/// rho_k by summing rho over all index pairs that agree outside party k.
inline Matrix partial_trace(const Matrix& rho, const Dims& dims, std::size_t k) {
  const std::size_t n = total(dims);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dims[k]), static_cast<Eigen::Index>(dims[k]));
  for (std::size_t r = 0; r < n; ++r) {
    const auto ir = digits(r, dims);
    for (std::size_t c = 0; c < n; ++c) {
      const auto ic = digits(c, dims);
      bool same = true;
      for (std::size_t j = 0; j < dims.size(); ++j)
        if (j != k && ir[j] != ic[j]) same = false;
      if (same)
        out(static_cast<Eigen::Index>(ir[k]), static_cast<Eigen::Index>(ic[k])) +=
            rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

inline Matrix outer(const Vector& v) { return v * v.adjoint(); }

/// Sign of a permutation by counting inversions; 0 on repeated entries.
inline int sign_by_inversions(const std::vector<std::size_t>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

/// The raw contraction, summing over every assignment of every copy index.
inline Complex contraction(const entnf::monotones::MonotoneSpec& spec, const MultiTensor& psi) {
  const std::size_t d = spec.degree;
  const Dims& dims = psi.dims();
  const std::size_t p = dims.size();
  const std::size_t n = psi.size();
  // One flat psi index per copy; iterate over all n^d combinations.
  std::vector<std::size_t> copy(d, 0);
  Complex sum = 0.0;
  while (true) {
    Complex term = 1.0;
    for (std::size_t c = 0; c < d && term != 0.0; ++c) term *= psi[copy[c]];
    if (term != 0.0) {
      std::vector<std::vector<std::size_t>> idx(d);
      for (std::size_t c = 0; c < d; ++c) idx[c] = digits(copy[c], dims);
      int sign = 1;
      for (std::size_t k = 0; k < p && sign != 0; ++k)
        for (const auto& group : spec.wirings[k]) {
          std::vector<std::size_t> perm;
          for (auto slot : group) perm.push_back(idx[slot][k]);
          sign *= sign_by_inversions(perm);
          if (sign == 0) break;
        }
      sum += static_cast<double>(sign) * term;
    }
    std::size_t c = 0;
    while (c < d && ++copy[c] == n) copy[c++] = 0;
    if (c == d) break;
  }
  return sum;
}

inline double monotone(const entnf::monotones::MonotoneSpec& spec, const MultiTensor& psi) {
  const double pre = std::pow(spec.prefactor.base.value(), 1.0 / spec.prefactor.root);
  return pre * std::pow(std::abs(contraction(spec, psi)), spec.exponent.value());
}

/// 2 |psi00 psi11 - psi01 psi10|.
inline double concurrence(const MultiTensor& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

/// Cayley hyperdeterminant of a 2x2x2 tensor; the 3-tangle is 4 |Det|.
inline Complex hyperdeterminant(const MultiTensor& psi) {
  auto a = [&](int i, int j, int k) { return psi[static_cast<std::size_t>(4 * i + 2 * j + k)]; };
  Complex d = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
              a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
              a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
              a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  d -= 2.0 * (a(0, 0, 0) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 1) +
              a(0, 0, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 1) +
              a(0, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 1) +
              a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 0) +
              a(0, 0, 1) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 0) +
              a(0, 1, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 0, 1));
  d += 4.0 * (a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) +
              a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0) * a(1, 1, 1));
  return d;
}

inline double tangle3(const MultiTensor& psi) { return 4.0 * std::abs(hyperdeterminant(psi)); }

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline std::vector<double> eigenvalues_sorted(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

}  // namespace oracle
