#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entnf/tensor.hpp"

namespace entnf::monotones {

struct Rational {
  long num = 1;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// (num/den)^{1/root}, kept exact for serialization.
struct Prefactor {
  Rational base;
  int root = 1;
  double value() const;
  bool operator==(const Prefactor&) const = default;
};

/// One epsilon-contraction invariant
///
///   prefactor * | sum psi^{(1)} ... psi^{(d)} prod eps |^{exponent}.
///
/// `wirings[k]` partitions the copy slots 0..d-1 of party k into groups; each
/// group is contracted with a Levi-Civita symbol whose order is the group size,
/// which must equal the party dimension. The exponent is always 2/d, which
/// makes the value scale as |c|^2 under psi -> c psi.
struct MonotoneSpec {
  std::string id;
  std::size_t degree = 2;
  std::vector<std::vector<std::vector<std::size_t>>> wirings;
  Prefactor prefactor;
  Rational exponent{1, 1};
  std::string source;

  /// Party dimensions implied by the epsilon orders.
  Dims dims() const;
  /// Throws InvalidArgument if the wiring is not a partition of the slots,
  /// mixes epsilon orders within a party, or the exponent is not 2/d.
  void validate() const;
};

struct MonotoneValue {
  double value = 0.0;
  std::string spec_id;
  bool normalized_input = false;
  /// The signed contraction before modulus and exponent.
  Complex contraction;
  /// Sum of |term| over all contributing index assignments.
  double magnitude = 0.0;
  /// Set when |contraction| is within the rounding bound of `magnitude`;
  /// the value is then reported as exactly zero.
  bool below_rounding_floor = false;
};

/// Direct summation over all non-vanishing epsilon assignments. Throws
/// DimensionError when the state shape does not match the spec.
MonotoneValue evaluate(const MonotoneSpec& spec, const MultiTensor& psi);

/// The seven monotones written out explicitly: concurrence, tangle3,
/// tangle2222a, tangle2222b, tangle224, tangle223, qutrit333.
const std::vector<MonotoneSpec>& catalog();
/// Throws Error("unknown_monotone") for ids not in the catalog.
const MonotoneSpec& find(const std::string& id);
/// Catalog entries whose shape equals `dims`.
std::vector<const MonotoneSpec*> applicable(const Dims& dims);

struct InvarianceReport {
  std::size_t trials = 0;
  bool unitary_only = false;
  double max_relative_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Relative change of the value under `trials` random determinant-1 (or, with
/// `unitary_only`, unitary) local transformations. Thresholds: 1e-8 for
/// SL, 1e-10 for unitaries.
InvarianceReport check_invariance(const MonotoneSpec& spec, const MultiTensor& psi,
                                  std::size_t trials, std::uint64_t seed,
                                  bool unitary_only = false);

struct MonotonicityReport {
  std::size_t trials = 0;
  /// max over trials of  p1 M(psi1) + p2 M(psi2) - M(psi).
  double max_excess = 0.0;
  double slack = 1e-9;
  bool passed = false;
};

/// Two-outcome local filter {A, sqrt(I - A^dagger A)} on one party.
struct FilterOutcome {
  double expected = 0.0;  ///< p1 M(psi1/|psi1|) + p2 M(psi2/|psi2|)
  double before = 0.0;    ///< M(psi)
};
FilterOutcome filter_average(const MonotoneSpec& spec, const MultiTensor& psi,
                             std::size_t party, const Matrix& a);

/// The state is normalized first. Each trial draws a random party and a
/// random contraction A with ||A|| <= 1.
MonotonicityReport check_monotonicity(const MonotoneSpec& spec, const MultiTensor& psi,
                                      std::size_t trials, std::uint64_t seed);

double relative_deviation(double a, double b);

}  // namespace entnf::monotones
