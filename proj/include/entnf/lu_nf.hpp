#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entnf/tensor.hpp"

namespace entnf::lu {

using Index = std::vector<std::size_t>;

struct LuConfig {
  /// A level is stagnant when the pivot modulus grows by less than this per sweep.
  double stagnation = 1e-12;
  /// A level is finished when every entry it zeroes is below residual_tol * ||psi||.
  double residual_tol = 1e-12;
  /// Sweep cap per level.
  std::size_t level_cap = 10000;
  /// Pattern entries above eps_zero * ||psi|| count as violations.
  double eps_zero = 1e-8;
  bool fix_phases = true;
};

enum class Status { converged, iteration_cap };
const char* to_string(Status s);

struct PatternEntry {
  Index index;
  Complex value;
};

struct LevelTrace {
  Index pivot;
  /// |pivot| before the first sweep and after every sweep.
  std::vector<double> pivot_history;
  bool converged = false;
};

struct LuNormalFormResult {
  MultiTensor psi_nf;
  /// psi_nf = (x U_k) psi.
  LocalOperatorSet unitaries;
  /// Every enforced zero position with its final entry.
  std::vector<PatternEntry> zero_pattern_report;
  /// Entries made real and non-negative by the phase pass.
  std::vector<PatternEntry> positive_entries;
  Status status = Status::converged;
  std::size_t restarts_used = 0;
  std::vector<LevelTrace> levels;
  double max_zero_residual = 0.0;
  std::size_t nonzero_entries = 0;
  /// Nonzero entries with vanishing imaginary part.
  std::size_t real_entries = 0;
};

/// Positions the algorithm sets to zero for this shape.
///
/// With L = min_k N_k, level j < L zeroes psi(j,...,i,...,j) for every party
/// and every i > j in that party's slot. When exactly one party is larger than
/// L, its remaining coordinates L.. are triangularized against the remaining
/// column multi-indices (row-major order), which for N x 2 x 2 gives the
/// familiar pattern with all rows beyond the fourth vanishing.
std::vector<Index> zero_pattern(const Dims& dims);

/// psi(c,...,c,i,c,...,c) for i <= c = L-1 in every slot.
std::vector<Index> positive_pattern(const Dims& dims);

/// m n (n-1) / 2: zeros produced for m parties of equal dimension n.
std::size_t zero_count(std::size_t n, std::size_t m);

LuNormalFormResult lu_normal_form(const MultiTensor& psi, const LuConfig& cfg = {});

/// LU-invariant data: sorted singular values of each single-party unfolding
/// and the values of every applicable catalog monotone.
struct Fingerprint {
  std::vector<RealVector> spectra;
  std::vector<std::pair<std::string, double>> monotones;
};

Fingerprint fingerprint(const MultiTensor& psi);
/// Largest absolute difference between matching fingerprint components.
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

/// min over diagonal local phase unitaries D of ||b - D a||_max / ||a||, found by
/// coordinate ascent from the identity.
double phase_aligned_distance(const MultiTensor& a, const MultiTensor& b);

enum class Equivalence { equivalent_likely, inequivalent, inconclusive };
const char* to_string(Equivalence e);

struct EquivalenceReport {
  Equivalence verdict = Equivalence::inconclusive;
  double fingerprint_distance = 0.0;
  /// Smallest phase-aligned distance among compared normal-form pairs.
  double best_match = 0.0;
  std::size_t restarts_used = 0;
  std::uint64_t seed = 0;
};

/// Throws DimensionError when the shapes differ.
EquivalenceReport lu_equivalence_probe(const MultiTensor& psi1, const MultiTensor& psi2,
                                       std::size_t restarts, std::uint64_t seed,
                                       const LuConfig& cfg = {});

}  // namespace entnf::lu
