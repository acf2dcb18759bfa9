#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entnf/tensor.hpp"

namespace entnf::slocc {

enum class Status { converged, diverged_to_zero, iteration_cap };
enum class Gauge { raw, hermitian };

const char* to_string(Status s);
const char* to_string(Gauge g);
Gauge parse_gauge(const std::string& name);

struct SloccConfig {
  /// Identity closeness and per-sweep trace stagnation, both relative to the trace.
  double eps_id = 1e-9;
  /// Maximum number of full sweeps over the parties.
  std::size_t max_iters = 10000;
  /// Trace below `zero_threshold * input trace` is declared divergence to zero.
  double zero_threshold = 1e-12;
  /// A run that settles with trace below `numerical_zero * input trace` is
  /// reported as diverged. Rounding of the input alone puts W-class states
  /// into a generic class whose normal form has trace ~ sqrt(machine eps).
  double numerical_zero = 1e-6;
  /// Largest singular value of an accumulated filter that flags divergence.
  double filter_norm_cap = 1e8;
  /// A reduced operator with lambda_min <= rank_tol * lambda_max is rank deficient.
  double rank_tol = 1e-12;
  Gauge gauge = Gauge::raw;
  Tolerances tol;

  /// Throws InvalidArgument on non-positive thresholds or max_iters == 0.
  void validate() const;
};

/// Raised when a reduced operator is not full rank. `party()` is zero-based.
class RankDeficient : public Error {
 public:
  explicit RankDeficient(std::size_t party)
      : Error("rank_deficient",
              "reduced operator of party " + std::to_string(party + 1) +
                  " is rank deficient"),
        party_(party) {}
  std::size_t party() const noexcept { return party_; }

 private:
  std::size_t party_;
};

struct NormalFormResult {
  /// Normal form; exactly zero when status is diverged_to_zero.
  DensityOperator sigma;
  /// Normal-form tensor, present when the input was a pure state.
  std::optional<MultiTensor> state;
  /// Accumulated determinant-1 filters with sigma = (x A_k) rho (x A_k)^dagger.
  /// For diverged runs this is the last finite iterate (see `filters_finite`).
  LocalOperatorSet filters;
  /// Input trace followed by the trace after every single-party update.
  std::vector<double> trace_history;
  Status status = Status::iteration_cap;
  /// Completed sweeps.
  std::size_t iterations = 0;
  double input_trace = 0.0;
  /// False when the filters were cut off on the way to an unbounded limit.
  bool filters_finite = true;
  bool hermitian_gauged = false;
  /// Why the run stopped, e.g. "trace_below_threshold" or "rank_deficient:2".
  std::string reason;
};

/// Output of one local scaling step on a density operator.
struct ScaleStep {
  Matrix x;             ///< hermitian positive, det 1
  DensityOperator rho;  ///< (X x I) rho (X x I)^dagger
};

/// Output of one local scaling step on a pure state.
struct PureScaleStep {
  Matrix x;
  MultiTensor psi;
};

/// Scales party `k` so that its reduced operator becomes det(rho_k)^{1/N_k} I.
///
/// X = det(rho_k)^{1/2N_k} rho_k^{-1/2}, formed from the eigendecomposition of
/// rho_k. Throws RankDeficient when rho_k is not full rank.
ScaleStep scale_party(const DensityOperator& rho, std::size_t k,
                      double rank_tol = 1e-12);

/// Pure-state variant. X is formed from the SVD psi_(k) = U S V^dagger of the
/// unfolding as (prod S)^{1/N_k} U S^{-1} U^dagger, which never squares the
/// singular values.
PureScaleStep scale_party(const MultiTensor& psi, std::size_t k,
                          double rank_tol = 1e-12);

NormalFormResult normal_form(const MultiTensor& psi, const SloccConfig& cfg = {});
NormalFormResult normal_form(const DensityOperator& rho, const SloccConfig& cfg = {});

/// Replaces each filter A_k = U_k H_k by its positive polar factor H_k and
/// rotates sigma by the discarded unitaries, so that (x H_k) rho (x H_k)^dagger
/// is the new sigma. Throws InvalidArgument unless the run converged.
NormalFormResult hermitian_gauge(const NormalFormResult& result);

/// max_k ||rho_k - (tr rho / N_k) I||_F / tr rho.
double identity_defect(const DensityOperator& rho);
double identity_defect(const MultiTensor& psi);

struct SubdimensionReduction {
  MultiTensor psi;
  /// Isometries P_k (rank_k x N_k) with psi_out = (x P_k) psi_in.
  LocalOperatorSet isometries;
};

/// Rotates each local support onto the leading coordinates and truncates the
/// rest, repeating until no party shrinks further.
SubdimensionReduction reduce_subdimensions(const MultiTensor& psi,
                                           double rank_tol = 1e-12);

struct OptimalFilterReport {
  NormalFormResult normal_form;
  /// Filters divided by their largest singular value, so every A_k <= I.
  LocalOperatorSet rescaled_filters;
  /// tr((x A_k) rho (x A_k)^dagger) / tr(rho) with the rescaled filters.
  double success_probability = 0.0;
  /// Unit-trace normal form; absent when the normal form is zero.
  std::optional<DensityOperator> normalized_sigma;
  std::optional<MultiTensor> normalized_state;
  std::string rescaling_convention;
};

OptimalFilterReport optimal_filter_report(const MultiTensor& psi,
                                          const SloccConfig& cfg = {});
OptimalFilterReport optimal_filter_report(const DensityOperator& rho,
                                          const SloccConfig& cfg = {});

}  // namespace entnf::slocc
