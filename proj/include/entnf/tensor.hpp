#pragma once

#include <cstddef>
#include <vector>

#include "entnf/types.hpp"

namespace entnf {

/// Dense complex tensor psi_{i_1 ... i_p}.
///
/// Entries are stored row-major with the index of party 1 varying slowest, so
/// the flat offset of (i_1, ..., i_p) is ((i_1 N_2 + i_2) N_3 + i_3) ... . Every
/// routine in the library (unfolding, monotone contraction, JSON) relies on
/// this ordering.
class MultiTensor {
 public:
  MultiTensor() = default;
  /// Zero tensor of the given shape.
  explicit MultiTensor(Dims dims);
  /// Throws DimensionError if `entries.size() != product(dims)` and
  /// InvalidArgument on non-finite entries or a zero dimension.
  MultiTensor(Dims dims, Vector entries);

  const Dims& dims() const noexcept { return dims_; }
  std::size_t parties() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(data_.size()); }
  const Vector& data() const noexcept { return data_; }

  Complex operator()(const std::vector<std::size_t>& index) const;
  Complex& operator()(const std::vector<std::size_t>& index);
  Complex operator[](std::size_t flat) const { return data_[static_cast<Eigen::Index>(flat)]; }
  Complex& operator[](std::size_t flat) { return data_[static_cast<Eigen::Index>(flat)]; }

  std::size_t offset(const std::vector<std::size_t>& index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  double norm_squared() const { return data_.squaredNorm(); }
  double norm() const { return data_.norm(); }
  MultiTensor normalized() const;
  MultiTensor scaled(Complex c) const;

 private:
  Dims dims_;
  Vector data_;
};

/// Hermitian positive semidefinite operator on the tensor-product space.
///
/// Rows and columns use the MultiTensor multi-index ordering.
class DensityOperator {
 public:
  DensityOperator() = default;
  /// Structural checks only (square, size matches dims, finite).
  DensityOperator(Dims dims, Matrix matrix);

  /// Full validation: structure, hermiticity and positivity.
  static DensityOperator checked(Dims dims, Matrix matrix,
                                 const Tolerances& tol = {});

  const Dims& dims() const noexcept { return dims_; }
  std::size_t parties() const noexcept { return dims_.size(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  double trace() const { return matrix_.trace().real(); }

 private:
  Dims dims_;
  Matrix matrix_;
};

/// One operator per party.
///
/// Square kinds (`general`, `special_linear`, `unitary`) must match the party
/// dimension. `isometry` holds rectangular maps with orthonormal rows used to
/// shrink local supports.
class LocalOperatorSet {
 public:
  enum class Kind { general, special_linear, unitary, isometry };

  LocalOperatorSet() = default;
  /// Validates each operator against `kind`; tolerances come from `tol`.
  LocalOperatorSet(std::vector<Matrix> ops, Kind kind = Kind::general,
                   const Tolerances& tol = {});

  static LocalOperatorSet identity(const Dims& dims);

  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  const Matrix& operator[](std::size_t k) const { return ops_[k]; }
  std::size_t size() const noexcept { return ops_.size(); }
  Kind kind() const noexcept { return kind_; }
  /// Determinants of the square operators (NaN for rectangular ones).
  const std::vector<Complex>& det_tags() const noexcept { return dets_; }

  /// Largest ||A_k - I||_F over parties (square operators only).
  double distance_from_identity() const;

 private:
  std::vector<Matrix> ops_;
  std::vector<Complex> dets_;
  Kind kind_ = Kind::general;
};

const char* to_string(LocalOperatorSet::Kind kind);

/// {B_k A_k}: applying `first` and then `second`.
LocalOperatorSet compose(const LocalOperatorSet& second,
                         const LocalOperatorSet& first);

/// Applies `op` to the index of party `k` of a flat row-major tensor.
/// The party dimension becomes `op.rows()`.
Vector mode_product(const Vector& data, const Dims& dims, std::size_t k,
                    const Matrix& op);

/// (A_1 x ... x A_p) psi. Throws DimensionError naming the first bad party.
MultiTensor apply_local(const MultiTensor& psi, const LocalOperatorSet& ops);
/// (A_1 x ... x A_p) rho (A_1 x ... x A_p)^dagger.
DensityOperator apply_local(const DensityOperator& rho,
                            const LocalOperatorSet& ops);
/// Applies a single operator to party `k` only.
MultiTensor apply_to_party(const MultiTensor& psi, std::size_t k,
                           const Matrix& op);

/// Reduced operator of party `k` (zero-based): trace over all other parties.
Matrix partial_trace(const DensityOperator& rho, std::size_t k);
/// Reduced operator of a pure state, computed as unfold(psi,k) unfold(psi,k)^dagger.
Matrix reduced_operator(const MultiTensor& psi, std::size_t k);

/// N_k x (prod_{j != k} N_j) matrix. Columns follow the row-major order of
/// the remaining parties, in their original order.
Matrix unfold(const MultiTensor& psi, std::size_t k);
/// Inverse of `unfold`.
MultiTensor fold(const Matrix& m, const Dims& dims, std::size_t k);

/// |psi><psi|.
DensityOperator pure_to_density(const MultiTensor& psi);

/// Columns c_j with rho = sum_j c_j c_j^dagger, from an eigendecomposition.
/// Eigenvalues below `cutoff * trace` are dropped; at least one column is kept.
Matrix density_factor(const DensityOperator& rho, double cutoff = 0.0);

Complex inner(const MultiTensor& a, const MultiTensor& b);

}  // namespace entnf
