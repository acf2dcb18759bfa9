#include "entnf/slocc.hpp"

#include <cmath>

namespace entnf::slocc {

const char* to_string(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::diverged_to_zero: return "diverged_to_zero";
    case Status::iteration_cap: return "iteration_cap";
  }
  return "iteration_cap";
}

const char* to_string(Gauge g) { return g == Gauge::raw ? "raw" : "hermitian"; }

Gauge parse_gauge(const std::string& name) {
  if (name == "raw") return Gauge::raw;
  if (name == "hermitian") return Gauge::hermitian;
  throw InvalidArgument("unknown gauge '" + name + "' (expected raw or hermitian)");
}

void SloccConfig::validate() const {
  if (!(eps_id > 0.0)) throw InvalidArgument("eps_id must be positive");
  if (!(zero_threshold > 0.0)) throw InvalidArgument("zero_threshold must be positive");
  if (!(filter_norm_cap > 0.0)) throw InvalidArgument("filter_norm_cap must be positive");
  if (!(rank_tol > 0.0)) throw InvalidArgument("rank_tol must be positive");
  if (!(numerical_zero >= 0.0)) throw InvalidArgument("numerical_zero must be non-negative");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
}

namespace {

double largest_singular_value(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()[0];
}

// State held as a factor F with rho = F F^dagger. Column c of F is a tensor
// with the party dims; a pure state is a single column.
struct Factor {
  Dims dims;
  Matrix f;

  double trace() const { return f.squaredNorm(); }

  // [unfold(col_0, k), unfold(col_1, k), ...]; M M^dagger = rho_k.
  Matrix unfold(std::size_t k) const {
    const auto n = static_cast<Eigen::Index>(dims[k]);
    const auto per = static_cast<Eigen::Index>(product(dims) / dims[k]);
    Matrix m(n, per * f.cols());
    for (Eigen::Index c = 0; c < f.cols(); ++c)
      m.middleCols(c * per, per) = entnf::unfold(MultiTensor(dims, f.col(c)), k);
    return m;
  }

  void apply(std::size_t k, const Matrix& x) {
    for (Eigen::Index c = 0; c < f.cols(); ++c)
      f.col(c) = mode_product(f.col(c), dims, k, x);
  }

  Matrix reduced(std::size_t k) const {
    const Matrix m = unfold(k);
    return m * m.adjoint();
  }

  double defect() const {
    const double tr = trace();
    if (tr == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto n = static_cast<Eigen::Index>(dims[k]);
      const Matrix r = reduced(k);
      worst = std::max(worst, (r - (tr / static_cast<double>(n)) * Matrix::Identity(n, n)).norm());
    }
    return worst / tr;
  }
};

// Hermitian det-1 X with X M M^dagger X^dagger proportional to I, from the SVD of M.
Matrix scaling_from_unfolding(const Matrix& m, std::size_t k, double rank_tol) {
  const Eigen::Index n = m.rows();
  if (m.cols() < n) throw RankDeficient(k);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  if (!(s[0] > 0.0) || s[n - 1] * s[n - 1] <= rank_tol * s[0] * s[0])
    throw RankDeficient(k);
  const double geo = std::exp(s.array().log().mean());
  const Matrix& u = svd.matrixU();
  RealVector scale = (geo / s.array()).matrix();
  return u * scale.asDiagonal() * u.adjoint();
}

NormalFormResult run(Factor state, const SloccConfig& cfg, bool pure) {
  cfg.validate();
  const std::size_t p = state.dims.size();
  NormalFormResult out;
  out.input_trace = state.trace();
  if (!(out.input_trace > 0.0)) throw InvalidArgument("input trace must be positive");
  out.trace_history.push_back(out.input_trace);

  std::vector<Matrix> filters;
  for (auto n : state.dims) {
    const auto m = static_cast<Eigen::Index>(n);
    filters.push_back(Matrix::Identity(m, m));
  }

  bool diverged = false;
  out.status = Status::iteration_cap;
  for (std::size_t sweep = 0; sweep < cfg.max_iters && !diverged; ++sweep) {
    const double start = state.trace();
    for (std::size_t k = 0; k < p; ++k) {
      if (state.dims[k] < 2) continue;
      Matrix x;
      try {
        x = scaling_from_unfolding(state.unfold(k), k, cfg.rank_tol);
      } catch (const RankDeficient& e) {
        out.reason = "rank_deficient:" + std::to_string(e.party() + 1);
        diverged = true;
        break;
      }
      const Matrix next = x * filters[k];
      if (largest_singular_value(next) > cfg.filter_norm_cap) {
        out.reason = "filter_norm_cap";
        diverged = true;
        break;
      }
      filters[k] = next;
      state.apply(k, x);
      out.trace_history.push_back(state.trace());
      if (state.trace() < cfg.zero_threshold * out.input_trace) {
        out.reason = "trace_below_threshold";
        diverged = true;
        break;
      }
    }
    if (diverged) break;
    out.iterations = sweep + 1;
    const double end = state.trace();
    if (start - end <= cfg.eps_id * end && state.defect() <= cfg.eps_id) {
      if (end < cfg.numerical_zero * out.input_trace) {
        out.reason = "trace_at_rounding_floor";
        diverged = true;
        break;
      }
      out.status = Status::converged;
      out.reason = "converged";
      break;
    }
  }

  Tolerances loose = cfg.tol;
  loose.det = std::max(loose.det, 1e-6);
  out.filters = LocalOperatorSet(filters, LocalOperatorSet::Kind::special_linear, loose);

  if (diverged) {
    out.status = Status::diverged_to_zero;
    out.filters_finite = false;
    const auto n = static_cast<Eigen::Index>(product(state.dims));
    out.sigma = DensityOperator(state.dims, Matrix::Zero(n, n));
    if (pure) out.state = MultiTensor(state.dims);
    return out;
  }
  if (out.status == Status::iteration_cap) out.reason = "iteration_cap";

  out.sigma = DensityOperator(state.dims, state.f * state.f.adjoint());
  if (pure) out.state = MultiTensor(state.dims, state.f.col(0));
  if (out.status == Status::converged && cfg.gauge == Gauge::hermitian)
    return hermitian_gauge(out);
  return out;
}

}  // namespace

ScaleStep scale_party(const DensityOperator& rho, std::size_t k, double rank_tol) {
  const Matrix rk = partial_trace(rho, k);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rk);
  const RealVector& w = es.eigenvalues();
  const Eigen::Index n = w.size();
  if (!(w[n - 1] > 0.0) || w[0] <= rank_tol * w[n - 1]) throw RankDeficient(k);
  const double geo = std::exp(0.5 * w.array().log().mean());
  RealVector scale = (geo / w.array().sqrt()).matrix();
  const Matrix& v = es.eigenvectors();
  Matrix x = v * scale.asDiagonal() * v.adjoint();

  std::vector<Matrix> ops;
  for (std::size_t j = 0; j < rho.parties(); ++j) {
    const auto m = static_cast<Eigen::Index>(rho.dims()[j]);
    ops.push_back(j == k ? x : Matrix::Identity(m, m));
  }
  DensityOperator next = apply_local(rho, LocalOperatorSet(std::move(ops)));
  return {std::move(x), std::move(next)};
}

PureScaleStep scale_party(const MultiTensor& psi, std::size_t k, double rank_tol) {
  if (k >= psi.parties()) throw InvalidArgument("party index out of range");
  Matrix x = scaling_from_unfolding(unfold(psi, k), k, rank_tol);
  MultiTensor next = apply_to_party(psi, k, x);
  return {std::move(x), std::move(next)};
}

NormalFormResult normal_form(const MultiTensor& psi, const SloccConfig& cfg) {
  return run(Factor{psi.dims(), Matrix(psi.data())}, cfg, true);
}

NormalFormResult normal_form(const DensityOperator& rho, const SloccConfig& cfg) {
  const DensityOperator valid = DensityOperator::checked(rho.dims(), rho.matrix(), cfg.tol);
  return run(Factor{valid.dims(), density_factor(valid)}, cfg, false);
}

NormalFormResult hermitian_gauge(const NormalFormResult& result) {
  if (result.status != Status::converged)
    throw InvalidArgument("hermitian gauge requires a converged normal form");
  std::vector<Matrix> herm, rot;
  for (const auto& a : result.filters.ops()) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix& u = svd.matrixU();
    const Matrix& v = svd.matrixV();
    Matrix h = v * svd.singularValues().asDiagonal() * v.adjoint();
    herm.push_back(0.5 * (h + h.adjoint()));
    // A = (U V^dagger) H, so H rho H^dagger = (V U^dagger) sigma (V U^dagger)^dagger.
    rot.push_back(v * u.adjoint());
  }
  NormalFormResult out = result;
  const LocalOperatorSet rotation(rot, LocalOperatorSet::Kind::unitary);
  out.sigma = apply_local(result.sigma, rotation);
  if (result.state) out.state = apply_local(*result.state, rotation);
  Tolerances loose;
  loose.det = 1e-6;
  out.filters = LocalOperatorSet(std::move(herm), LocalOperatorSet::Kind::special_linear, loose);
  out.hermitian_gauged = true;
  return out;
}

double identity_defect(const DensityOperator& rho) {
  return Factor{rho.dims(), density_factor(rho)}.defect();
}

double identity_defect(const MultiTensor& psi) {
  return Factor{psi.dims(), Matrix(psi.data())}.defect();
}

SubdimensionReduction reduce_subdimensions(const MultiTensor& psi, double rank_tol) {
  MultiTensor cur = psi;
  std::vector<Matrix> iso;
  for (auto n : psi.dims()) {
    const auto m = static_cast<Eigen::Index>(n);
    iso.push_back(Matrix::Identity(m, m));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < cur.parties(); ++k) {
      const Matrix m = unfold(cur, k);
      Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
      const RealVector& s = svd.singularValues();
      Eigen::Index rank = 0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > 0.0 && s[i] * s[i] > rank_tol * s[0] * s[0]) ++rank;
      rank = std::max<Eigen::Index>(rank, 1);
      if (rank >= m.rows()) continue;
      const Matrix proj = svd.matrixU().leftCols(rank).adjoint();
      cur = apply_to_party(cur, k, proj);
      iso[k] = proj * iso[k];
      changed = true;
    }
  }
  Tolerances loose;
  loose.unit = 1e-8;
  return {cur, LocalOperatorSet(std::move(iso), LocalOperatorSet::Kind::isometry, loose)};
}

namespace {

OptimalFilterReport report_from(NormalFormResult nf) {
  OptimalFilterReport r;
  r.rescaling_convention =
      "each filter divided by its largest singular value so that A_k <= I";
  std::vector<Matrix> ops;
  double shrink = 1.0;
  for (const auto& a : nf.filters.ops()) {
    const double s = largest_singular_value(a);
    ops.push_back(a / s);
    shrink *= s * s;
  }
  r.rescaled_filters = LocalOperatorSet(std::move(ops));
  if (nf.status != Status::diverged_to_zero) {
    const double tr = nf.sigma.trace();
    r.success_probability = tr / (nf.input_trace * shrink);
    r.normalized_sigma = DensityOperator(nf.sigma.dims(), nf.sigma.matrix() / tr);
    if (nf.state) r.normalized_state = nf.state->normalized();
  }
  r.normal_form = std::move(nf);
  return r;
}

}  // namespace

OptimalFilterReport optimal_filter_report(const MultiTensor& psi, const SloccConfig& cfg) {
  return report_from(normal_form(psi, cfg));
}

OptimalFilterReport optimal_filter_report(const DensityOperator& rho, const SloccConfig& cfg) {
  return report_from(normal_form(rho, cfg));
}

}  // namespace entnf::slocc
