#include "entnf/lu_nf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entnf/monotones.hpp"
#include "entnf/random.hpp"

namespace entnf::lu {

const char* to_string(Status s) {
  return s == Status::converged ? "converged" : "iteration_cap";
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent_likely: return "equivalent_likely";
    case Equivalence::inequivalent: return "inequivalent";
    case Equivalence::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::size_t zero_count(std::size_t n, std::size_t m) { return m * n * (n - 1) / 2; }

namespace {

std::size_t common_dim(const Dims& dims) {
  return *std::min_element(dims.begin(), dims.end());
}

// Parties larger than the common dimension, in order.
std::vector<std::size_t> tail_parties(const Dims& dims) {
  const std::size_t l = common_dim(dims);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k] > l) out.push_back(k);
  return out;
}

Index diagonal(std::size_t parties, std::size_t j) { return Index(parties, j); }

// Column multi-indices of the tail triangularization of party `tail`: all
// indices of the other parties in row-major order, skipping the constant ones
// (j,...,j), j < L, which the levels have already cleared. Oversized parties
// after `tail` are restricted to their first L coordinates, so their own
// triangularization leaves these columns alone.
std::vector<Index> tail_columns(const Dims& dims, std::size_t tail) {
  const std::size_t l = common_dim(dims);
  Dims others;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (k != tail) others.push_back(k > tail ? std::min(dims[k], l) : dims[k]);
  std::vector<Index> cols;
  const std::size_t total = product(others);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Index idx(others.size());
    std::size_t rest = flat;
    for (std::size_t k = others.size(); k-- > 0;) {
      idx[k] = rest % others[k];
      rest /= others[k];
    }
    const bool constant = std::all_of(idx.begin(), idx.end(),
                                      [&](std::size_t v) { return v == idx.front(); });
    if (constant && idx.front() < l) continue;
    cols.push_back(std::move(idx));
  }
  return cols;
}

Index with_tail(const Index& col, std::size_t tail, std::size_t row) {
  Index idx;
  std::size_t c = 0;
  for (std::size_t k = 0; k < col.size() + 1; ++k) idx.push_back(k == tail ? row : col[c++]);
  return idx;
}

std::vector<Index> level_zeros(const Dims& dims, std::size_t j) {
  std::vector<Index> out;
  for (std::size_t k = 0; k < dims.size(); ++k)
    for (std::size_t i = j + 1; i < dims[k]; ++i) {
      Index idx = diagonal(dims.size(), j);
      idx[k] = i;
      out.push_back(std::move(idx));
    }
  return out;
}

std::vector<Index> tail_zeros(const Dims& dims) {
  std::vector<Index> out;
  for (const std::size_t tail : tail_parties(dims)) {
    const std::size_t n = dims[tail];
    std::size_t row = common_dim(dims);
    for (const auto& col : tail_columns(dims, tail)) {
      if (row + 1 >= n) break;
      for (std::size_t r = row + 1; r < n; ++r) out.push_back(with_tail(col, tail, r));
      ++row;
    }
  }
  return out;
}

// Unitary U on C^m with U x = ||x|| e_0 (Householder reflector plus a phase).
Matrix rotate_to_first(const Vector& x) {
  const Eigen::Index m = x.size();
  const double nx = x.norm();
  Matrix u = Matrix::Identity(m, m);
  if (nx == 0.0) return u;
  const double a0 = std::abs(x[0]);
  const Complex phase = a0 > 0.0 ? x[0] / a0 : Complex(1.0, 0.0);
  Vector w = x;
  w[0] += phase * nx;
  const double ww = w.squaredNorm();
  if (ww == 0.0) return u;
  u -= (2.0 / ww) * (w * w.adjoint());
  // u x = -phase ||x|| e_0
  u.row(0) *= -std::conj(phase);
  return u;
}

// Identity on the leading coordinates, `small` on the trailing ones.
Matrix embed(const Matrix& small, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix full = Matrix::Identity(nn, nn);
  full.bottomRightCorner(small.rows(), small.cols()) = small;
  return full;
}

struct Work {
  MultiTensor psi;
  std::vector<Matrix> acc;

  void apply(std::size_t k, const Matrix& u) {
    psi = apply_to_party(psi, k, u);
    acc[k] = u * acc[k];
  }

  Vector fiber(std::size_t k, const Index& base, std::size_t from) const {
    const std::size_t n = psi.dims()[k];
    Vector v(static_cast<Eigen::Index>(n - from));
    Index idx = base;
    for (std::size_t i = from; i < n; ++i) {
      idx[k] = i;
      v[static_cast<Eigen::Index>(i - from)] = psi(idx);
    }
    return v;
  }

  double residual_norm(const std::vector<Index>& positions) const {
    double sum = 0.0;
    for (const auto& idx : positions) sum += std::norm(psi(idx));
    return std::sqrt(sum);
  }

  double max_modulus(const std::vector<Index>& positions) const {
    double worst = 0.0;
    for (const auto& idx : positions) worst = std::max(worst, std::abs(psi(idx)));
    return worst;
  }
};

}  // namespace

std::vector<Index> zero_pattern(const Dims& dims) {
  std::vector<Index> out;
  const std::size_t l = common_dim(dims);
  for (std::size_t j = 0; j < l; ++j) {
    auto z = level_zeros(dims, j);
    out.insert(out.end(), z.begin(), z.end());
  }
  auto t = tail_zeros(dims);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

std::vector<Index> positive_pattern(const Dims& dims) {
  const std::size_t c = common_dim(dims) - 1;
  const auto zeros = zero_pattern(dims);
  std::vector<Index> out{diagonal(dims.size(), c)};
  for (std::size_t k = 0; k < dims.size(); ++k)
    for (std::size_t i = 0; i < c; ++i) {
      Index idx = diagonal(dims.size(), c);
      idx[k] = i;
      // With two parties these positions are enforced zeros.
      if (std::find(zeros.begin(), zeros.end(), idx) == zeros.end()) out.push_back(std::move(idx));
    }
  return out;
}

LuNormalFormResult lu_normal_form(const MultiTensor& psi, const LuConfig& cfg) {
  const Dims& dims = psi.dims();
  const std::size_t p = dims.size();
  const double norm = psi.norm();
  Work work{psi, {}};
  for (auto n : dims) {
    const auto m = static_cast<Eigen::Index>(n);
    work.acc.push_back(Matrix::Identity(m, m));
  }

  LuNormalFormResult out;
  const std::size_t l = common_dim(dims);
  std::vector<Index> done;
  for (std::size_t j = 0; j < l; ++j) {
    const Index pivot = diagonal(p, j);
    const std::vector<Index> zeros = level_zeros(dims, j);
    const double before = work.residual_norm(done);
    LevelTrace trace;
    trace.pivot = pivot;
    trace.pivot_history.push_back(std::abs(work.psi(pivot)));
    double last_res = std::numeric_limits<double>::infinity();
    for (std::size_t sweep = 0;; ++sweep) {
      const double res = work.max_modulus(zeros);
      if (res <= cfg.residual_tol * norm) {
        trace.converged = true;
        break;
      }
      // A stagnant pivot with a residual that no longer shrinks ends the level.
      const auto& h = trace.pivot_history;
      if (h.size() > 1 && h.back() - h[h.size() - 2] < cfg.stagnation &&
          res >= (1.0 - 1e-3) * last_res) {
        trace.converged = res <= cfg.eps_zero * norm;
        break;
      }
      last_res = res;
      if (sweep == cfg.level_cap) break;
      for (std::size_t k = 0; k < p; ++k) {
        if (dims[k] < j + 2) continue;
        const Matrix u = rotate_to_first(work.fiber(k, pivot, j));
        work.apply(k, embed(u, dims[k]));
      }
      trace.pivot_history.push_back(std::abs(work.psi(pivot)));
    }
    if (!trace.converged) out.status = Status::iteration_cap;
    out.levels.push_back(std::move(trace));
    // Rotations act on coordinates >= j only and mix earlier zeros among
    // themselves, so their norm cannot grow.
    if (work.residual_norm(done) > before + cfg.residual_tol * norm)
      throw Error("internal_invariant", "zeros of an earlier level were destroyed");
    done.insert(done.end(), zeros.begin(), zeros.end());
  }

  for (const std::size_t tail : tail_parties(dims)) {
    const std::size_t n = dims[tail];
    std::size_t row = l;
    for (const auto& col : tail_columns(dims, tail)) {
      if (row + 1 >= n) break;
      const Vector y = work.fiber(tail, with_tail(col, tail, 0), row);
      work.apply(tail, embed(rotate_to_first(y), n));
      ++row;
    }
  }

  if (cfg.fix_phases) {
    const double tiny = std::numeric_limits<double>::min();
    const std::size_t c = l - 1;
    std::vector<Vector> phases;
    for (auto n : dims) phases.push_back(Vector::Ones(static_cast<Eigen::Index>(n)));
    const Index corner = diagonal(p, c);
    const Complex v = work.psi(corner);
    if (std::abs(v) > tiny) phases[p - 1][static_cast<Eigen::Index>(c)] = std::abs(v) / v;
    for (std::size_t k = 0; k < p; ++k) {
      const Matrix d = phases[k].asDiagonal();
      work.apply(k, d);
      phases[k].setOnes();
    }
    for (const auto& idx : positive_pattern(dims)) {
      if (idx == corner) continue;
      const std::size_t k = static_cast<std::size_t>(
          std::find_if(idx.begin(), idx.end(), [&](std::size_t v) { return v != c; }) - idx.begin());
      const Complex e = work.psi(idx);
      if (std::abs(e) > tiny) phases[k][static_cast<Eigen::Index>(idx[k])] = std::abs(e) / e;
    }
    for (std::size_t k = 0; k < p; ++k) work.apply(k, phases[k].asDiagonal());
  }

  out.psi_nf = work.psi;
  Tolerances loose;
  loose.unit = 1e-8;
  out.unitaries = LocalOperatorSet(work.acc, LocalOperatorSet::Kind::unitary, loose);
  for (const auto& idx : zero_pattern(dims)) {
    out.zero_pattern_report.push_back({idx, work.psi(idx)});
    out.max_zero_residual = std::max(out.max_zero_residual, std::abs(work.psi(idx)));
  }
  if (cfg.fix_phases)
    for (const auto& idx : positive_pattern(dims)) out.positive_entries.push_back({idx, work.psi(idx)});
  const double cut = cfg.eps_zero * norm;
  for (std::size_t f = 0; f < work.psi.size(); ++f) {
    const Complex e = work.psi[f];
    if (std::abs(e) <= cut) continue;
    ++out.nonzero_entries;
    if (std::abs(e.imag()) <= cut) ++out.real_entries;
  }
  return out;
}

Fingerprint fingerprint(const MultiTensor& psi) {
  Fingerprint fp;
  for (std::size_t k = 0; k < psi.parties(); ++k) {
    Eigen::JacobiSVD<Matrix> svd(unfold(psi, k));
    fp.spectra.push_back(svd.singularValues());
  }
  for (const auto* spec : monotones::applicable(psi.dims()))
    fp.monotones.emplace_back(spec->id, monotones::evaluate(*spec, psi).value);
  return fp;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.spectra.size() != b.spectra.size() || a.monotones.size() != b.monotones.size())
    return inf;
  double d = 0.0;
  for (std::size_t k = 0; k < a.spectra.size(); ++k) {
    if (a.spectra[k].size() != b.spectra[k].size()) return inf;
    d = std::max(d, (a.spectra[k] - b.spectra[k]).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < a.monotones.size(); ++i) {
    if (a.monotones[i].first != b.monotones[i].first) return inf;
    d = std::max(d, std::abs(a.monotones[i].second - b.monotones[i].second));
  }
  return d;
}

double phase_aligned_distance(const MultiTensor& a, const MultiTensor& b) {
  if (a.dims() != b.dims()) throw DimensionError("tensors have different dims");
  const Dims& dims = a.dims();
  const std::size_t p = dims.size();
  std::vector<Vector> ph;
  for (auto n : dims) ph.push_back(Vector::Ones(static_cast<Eigen::Index>(n)));
  std::vector<Index> idx(a.size());
  for (std::size_t f = 0; f < a.size(); ++f) idx[f] = a.multi_index(f);

  auto phase_of = [&](std::size_t f, std::size_t skip) {
    Complex z(1.0, 0.0);
    for (std::size_t k = 0; k < p; ++k)
      if (k != skip) z *= ph[k][static_cast<Eigen::Index>(idx[f][k])];
    return z;
  };

  for (int round = 0; round < 2000; ++round) {
    double change = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      Vector z = Vector::Zero(static_cast<Eigen::Index>(dims[k]));
      for (std::size_t f = 0; f < a.size(); ++f)
        z[static_cast<Eigen::Index>(idx[f][k])] += std::conj(b[f]) * a[f] * phase_of(f, k);
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double m = std::abs(z[i]);
        if (m == 0.0) continue;
        const Complex next = std::conj(z[i]) / m;
        change = std::max(change, std::abs(next - ph[k][i]));
        ph[k][i] = next;
      }
    }
    if (change < 1e-14) break;
  }
  double worst = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f)
    worst = std::max(worst, std::abs(b[f] - a[f] * phase_of(f, p)));
  const double n = a.norm();
  return n > 0.0 ? worst / n : worst;
}

EquivalenceReport lu_equivalence_probe(const MultiTensor& psi1, const MultiTensor& psi2,
                                       std::size_t restarts, std::uint64_t seed,
                                       const LuConfig& cfg) {
  if (psi1.dims() != psi2.dims())
    throw DimensionError("states have different dims");
  constexpr double tol = 1e-6;
  EquivalenceReport r;
  r.seed = seed;
  r.fingerprint_distance = fingerprint_distance(fingerprint(psi1), fingerprint(psi2));
  if (r.fingerprint_distance > tol) {
    r.verdict = Equivalence::inequivalent;
    r.best_match = std::numeric_limits<double>::infinity();
    return r;
  }

  Rng rng(seed);
  std::vector<MultiTensor> forms1{lu_normal_form(psi1, cfg).psi_nf};
  std::vector<MultiTensor> forms2{lu_normal_form(psi2, cfg).psi_nf};
  r.best_match = phase_aligned_distance(forms1[0], forms2[0]);
  if (r.best_match <= tol) {
    r.verdict = Equivalence::equivalent_likely;
    return r;
  }
  for (std::size_t t = 0; t < restarts; ++t) {
    r.restarts_used = t + 1;
    const MultiTensor a = lu_normal_form(apply_local(psi1, random_local_unitaries(psi1.dims(), rng)), cfg).psi_nf;
    const MultiTensor b = lu_normal_form(apply_local(psi2, random_local_unitaries(psi2.dims(), rng)), cfg).psi_nf;
    for (const auto& f2 : forms2) r.best_match = std::min(r.best_match, phase_aligned_distance(a, f2));
    for (const auto& f1 : forms1) r.best_match = std::min(r.best_match, phase_aligned_distance(f1, b));
    r.best_match = std::min(r.best_match, phase_aligned_distance(a, b));
    forms1.push_back(a);
    forms2.push_back(b);
    if (r.best_match <= tol) {
      r.verdict = Equivalence::equivalent_likely;
      return r;
    }
  }
  r.verdict = Equivalence::inconclusive;
  return r;
}

}  // namespace entnf::lu
