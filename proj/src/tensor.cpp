#include "entnf/tensor.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace entnf {

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

Tolerances Tolerances::profile(const std::string& name) {
  Tolerances t;
  if (name == "default") return t;
  if (name == "strict") {
    t.herm = t.psd = t.unit = t.det = 1e-11;
    t.rel = 1e-13;
    return t;
  }
  if (name == "loose") {
    t.herm = t.psd = t.unit = t.det = 1e-7;
    t.rel = 1e-10;
    return t;
  }
  throw InvalidArgument("unknown tolerance profile '" + name + "'");
}

namespace {

bool all_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  return all_finite(Vector(m.reshaped()));
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw InvalidArgument("a state needs at least one party");
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k] == 0) throw DimensionError(k, "dimension must be positive");
}

// left = prod of dims before k, right = prod of dims after k
std::pair<std::size_t, std::size_t> split(const Dims& dims, std::size_t k) {
  std::size_t left = 1, right = 1;
  for (std::size_t j = 0; j < k; ++j) left *= dims[j];
  for (std::size_t j = k + 1; j < dims.size(); ++j) right *= dims[j];
  return {left, right};
}

void check_party(const Dims& dims, std::size_t k) {
  if (k >= dims.size())
    throw InvalidArgument("party index " + std::to_string(k + 1) +
                          " out of range 1.." + std::to_string(dims.size()));
}

void check_ops(const Dims& dims, const LocalOperatorSet& ops) {
  if (ops.size() != dims.size())
    throw DimensionError("operator count " + std::to_string(ops.size()) +
                         " does not match party count " +
                         std::to_string(dims.size()));
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (static_cast<std::size_t>(ops[k].cols()) != dims[k])
      throw DimensionError(k, "operator has " + std::to_string(ops[k].cols()) +
                                  " columns, party dimension is " +
                                  std::to_string(dims[k]));
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiTensor

MultiTensor::MultiTensor(Dims dims) : dims_(std::move(dims)) {
  check_dims(dims_);
  data_ = Vector::Zero(static_cast<Eigen::Index>(product(dims_)));
}

MultiTensor::MultiTensor(Dims dims, Vector entries)
    : dims_(std::move(dims)), data_(std::move(entries)) {
  check_dims(dims_);
  if (static_cast<std::size_t>(data_.size()) != product(dims_))
    throw DimensionError("entry count " + std::to_string(data_.size()) +
                         " does not match product of dims " +
                         std::to_string(product(dims_)));
  if (!all_finite(data_)) throw InvalidArgument("tensor has non-finite entries");
}

std::size_t MultiTensor::offset(const std::vector<std::size_t>& index) const {
  if (index.size() != dims_.size())
    throw DimensionError("index has " + std::to_string(index.size()) +
                         " components for " + std::to_string(dims_.size()) +
                         " parties");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] >= dims_[k])
      throw DimensionError(k, "index " + std::to_string(index[k]) +
                                  " out of range");
    flat = flat * dims_[k] + index[k];
  }
  return flat;
}

std::vector<std::size_t> MultiTensor::multi_index(std::size_t flat) const {
  std::vector<std::size_t> index(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    index[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return index;
}

Complex MultiTensor::operator()(const std::vector<std::size_t>& index) const {
  return data_[static_cast<Eigen::Index>(offset(index))];
}

Complex& MultiTensor::operator()(const std::vector<std::size_t>& index) {
  return data_[static_cast<Eigen::Index>(offset(index))];
}

MultiTensor MultiTensor::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero tensor");
  return MultiTensor(dims_, data_ / n);
}

MultiTensor MultiTensor::scaled(Complex c) const {
  return MultiTensor(dims_, data_ * c);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(Dims dims, Matrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  check_dims(dims_);
  const auto n = static_cast<Eigen::Index>(product(dims_));
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw DimensionError("density matrix is " + std::to_string(matrix_.rows()) +
                         "x" + std::to_string(matrix_.cols()) +
                         ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
  if (!all_finite(matrix_))
    throw InvalidArgument("density matrix has non-finite entries");
}

DensityOperator DensityOperator::checked(Dims dims, Matrix matrix,
                                         const Tolerances& tol) {
  DensityOperator rho(std::move(dims), std::move(matrix));
  const Matrix& m = rho.matrix_;
  const double scale = std::max(m.cwiseAbs().maxCoeff(),
                                std::numeric_limits<double>::min());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol.herm * scale)
    throw Error("not_hermitian", "density matrix is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double tr = rho.trace();
  if (es.eigenvalues().minCoeff() < -tol.psd * std::max(tr, scale))
    throw Error("not_psd", "density matrix is not positive semidefinite");
  return rho;
}

// ---------------------------------------------------------------------------
// LocalOperatorSet

LocalOperatorSet::LocalOperatorSet(std::vector<Matrix> ops, Kind kind,
                                   const Tolerances& tol)
    : ops_(std::move(ops)), kind_(kind) {
  dets_.reserve(ops_.size());
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Matrix& a = ops_[k];
    if (!all_finite(a)) throw InvalidArgument("operator has non-finite entries");
    if (kind_ == Kind::isometry) {
      if (a.rows() > a.cols())
        throw DimensionError(k, "isometry must not have more rows than columns");
      const Matrix gram = a * a.adjoint();
      if ((gram - Matrix::Identity(a.rows(), a.rows())).norm() > tol.unit)
        throw InvalidArgument("party " + std::to_string(k + 1) +
                              ": rows are not orthonormal");
      dets_.push_back(a.rows() == a.cols()
                          ? a.determinant()
                          : Complex(std::numeric_limits<double>::quiet_NaN()));
      continue;
    }
    if (a.rows() != a.cols()) throw DimensionError(k, "operator is not square");
    dets_.push_back(a.determinant());
    if (kind_ == Kind::special_linear && std::abs(dets_.back() - 1.0) > tol.det)
      throw InvalidArgument("party " + std::to_string(k + 1) +
                            ": determinant is not 1");
    if (kind_ == Kind::unitary &&
        (a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())).norm() > tol.unit)
      throw InvalidArgument("party " + std::to_string(k + 1) +
                            ": operator is not unitary");
  }
}

LocalOperatorSet LocalOperatorSet::identity(const Dims& dims) {
  std::vector<Matrix> ops;
  for (auto n : dims) {
    const auto m = static_cast<Eigen::Index>(n);
    ops.push_back(Matrix::Identity(m, m));
  }
  return LocalOperatorSet(std::move(ops), Kind::unitary);
}

double LocalOperatorSet::distance_from_identity() const {
  double worst = 0.0;
  for (const auto& a : ops_) {
    if (a.rows() != a.cols()) continue;
    worst = std::max(worst, (a - Matrix::Identity(a.rows(), a.cols())).norm());
  }
  return worst;
}

const char* to_string(LocalOperatorSet::Kind kind) {
  switch (kind) {
    case LocalOperatorSet::Kind::general: return "general";
    case LocalOperatorSet::Kind::special_linear: return "special_linear";
    case LocalOperatorSet::Kind::unitary: return "unitary";
    case LocalOperatorSet::Kind::isometry: return "isometry";
  }
  return "general";
}

LocalOperatorSet compose(const LocalOperatorSet& second,
                         const LocalOperatorSet& first) {
  if (second.size() != first.size())
    throw DimensionError("operator sets have different party counts");
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < first.size(); ++k) {
    if (second[k].cols() != first[k].rows())
      throw DimensionError(k, "operators cannot be composed");
    ops.push_back(second[k] * first[k]);
  }
  auto kind = LocalOperatorSet::Kind::general;
  if (first.kind() == second.kind() &&
      first.kind() != LocalOperatorSet::Kind::isometry)
    kind = first.kind();
  // Composition can accumulate rounding; validate loosely.
  Tolerances loose;
  loose.det = loose.unit = 1e-6;
  return LocalOperatorSet(std::move(ops), kind, loose);
}

// ---------------------------------------------------------------------------
// Operations

Vector mode_product(const Vector& data, const Dims& dims, std::size_t k,
                    const Matrix& op) {
  check_party(dims, k);
  const auto [left, right] = split(dims, k);
  const auto n_in = static_cast<Eigen::Index>(dims[k]);
  const auto n_out = op.rows();
  if (op.cols() != n_in) throw DimensionError(k, "operator size mismatch");
  const auto r = static_cast<Eigen::Index>(right);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Vector out(static_cast<Eigen::Index>(left) * n_out * r);
  for (std::size_t l = 0; l < left; ++l) {
    const auto in_off = static_cast<Eigen::Index>(l) * n_in * r;
    const auto out_off = static_cast<Eigen::Index>(l) * n_out * r;
    Eigen::Map<const RowMajor> slab(data.data() + in_off, n_in, r);
    Eigen::Map<RowMajor> dst(out.data() + out_off, n_out, r);
    dst.noalias() = op * slab;
  }
  return out;
}

MultiTensor apply_local(const MultiTensor& psi, const LocalOperatorSet& ops) {
  check_ops(psi.dims(), ops);
  Dims dims = psi.dims();
  Vector data = psi.data();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    data = mode_product(data, dims, k, ops[k]);
    dims[k] = static_cast<std::size_t>(ops[k].rows());
  }
  return MultiTensor(std::move(dims), std::move(data));
}

MultiTensor apply_to_party(const MultiTensor& psi, std::size_t k,
                           const Matrix& op) {
  check_party(psi.dims(), k);
  if (static_cast<std::size_t>(op.cols()) != psi.dims()[k])
    throw DimensionError(k, "operator size mismatch");
  Dims dims = psi.dims();
  Vector data = mode_product(psi.data(), dims, k, op);
  dims[k] = static_cast<std::size_t>(op.rows());
  return MultiTensor(std::move(dims), std::move(data));
}

namespace {

// (A_1 x ... x A_p) applied to every column of m.
Matrix apply_columns(const Matrix& m, const Dims& dims,
                     const LocalOperatorSet& ops, Dims& out_dims) {
  out_dims = dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    out_dims[k] = static_cast<std::size_t>(ops[k].rows());
  Matrix out(static_cast<Eigen::Index>(product(out_dims)), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Dims d = dims;
    Vector v = m.col(c);
    for (std::size_t k = 0; k < dims.size(); ++k) {
      v = mode_product(v, d, k, ops[k]);
      d[k] = static_cast<std::size_t>(ops[k].rows());
    }
    out.col(c) = v;
  }
  return out;
}

}  // namespace

DensityOperator apply_local(const DensityOperator& rho,
                            const LocalOperatorSet& ops) {
  check_ops(rho.dims(), ops);
  Dims out_dims;
  const Matrix half = apply_columns(rho.matrix(), rho.dims(), ops, out_dims);
  Dims unused;
  const Matrix full = apply_columns(Matrix(half.adjoint()), rho.dims(), ops, unused);
  return DensityOperator(std::move(out_dims), full.adjoint());
}

Matrix partial_trace(const DensityOperator& rho, std::size_t k) {
  check_party(rho.dims(), k);
  const auto [left, right] = split(rho.dims(), k);
  const std::size_t n = rho.dims()[k];
  const Matrix& m = rho.matrix();
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix out = Matrix::Zero(ni, ni);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r) {
      const std::size_t base = l * n * right + r;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
              m(static_cast<Eigen::Index>(base + i * right),
                static_cast<Eigen::Index>(base + j * right));
    }
  return out;
}

Matrix unfold(const MultiTensor& psi, std::size_t k) {
  check_party(psi.dims(), k);
  const auto [left, right] = split(psi.dims(), k);
  const std::size_t n = psi.dims()[k];
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(left * right));
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < right; ++r)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l * right + r)) =
            psi[(l * n + i) * right + r];
  return m;
}

MultiTensor fold(const Matrix& m, const Dims& dims, std::size_t k) {
  check_party(dims, k);
  const auto [left, right] = split(dims, k);
  const std::size_t n = dims[k];
  if (static_cast<std::size_t>(m.rows()) != n ||
      static_cast<std::size_t>(m.cols()) != left * right)
    throw DimensionError(k, "unfolded matrix has the wrong shape");
  MultiTensor psi(dims);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < right; ++r)
        psi[(l * n + i) * right + r] =
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l * right + r));
  return psi;
}

Matrix reduced_operator(const MultiTensor& psi, std::size_t k) {
  const Matrix m = unfold(psi, k);
  return m * m.adjoint();
}

DensityOperator pure_to_density(const MultiTensor& psi) {
  return DensityOperator(psi.dims(), psi.data() * psi.data().adjoint());
}

Matrix density_factor(const DensityOperator& rho, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const RealVector& w = es.eigenvalues();
  const double floor = cutoff * std::max(rho.trace(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = w.size(); i-- > 0;)
    if (w[i] > floor && w[i] > 0.0) keep.push_back(i);
  if (keep.empty()) keep.push_back(w.size() - 1);
  Matrix f(rho.matrix().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    f.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(keep[c]) * std::sqrt(std::max(w[keep[c]], 0.0));
  return f;
}

Complex inner(const MultiTensor& a, const MultiTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("tensors have different dims");
  return a.data().dot(b.data());
}

}  // namespace entnf
