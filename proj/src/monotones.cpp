#include "entnf/monotones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entnf/levi_civita.hpp"
#include "entnf/random.hpp"

namespace entnf::monotones {

double Prefactor::value() const {
  return std::pow(base.value(), 1.0 / static_cast<double>(root));
}

Dims MonotoneSpec::dims() const {
  Dims d;
  for (const auto& party : wirings) d.push_back(party.empty() ? 0 : party.front().size());
  return d;
}

void MonotoneSpec::validate() const {
  if (degree == 0 || degree % 2 != 0)
    throw InvalidArgument("monotone '" + id + "': degree must be even and positive");
  if (wirings.empty()) throw InvalidArgument("monotone '" + id + "': no parties");
  for (std::size_t k = 0; k < wirings.size(); ++k) {
    const auto& groups = wirings[k];
    const std::string where = "monotone '" + id + "', party " + std::to_string(k + 1);
    if (groups.empty()) throw InvalidArgument(where + ": empty wiring");
    std::vector<int> seen(degree, 0);
    const std::size_t order = groups.front().size();
    if (order < 2) throw InvalidArgument(where + ": epsilon order must be at least 2");
    for (const auto& g : groups) {
      if (g.size() != order)
        throw InvalidArgument(where + ": all epsilon symbols must have the party dimension");
      for (auto slot : g) {
        if (slot >= degree) throw InvalidArgument(where + ": slot out of range");
        ++seen[slot];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
      throw InvalidArgument(where + ": groups must partition the copy slots");
  }
  if (!(prefactor.base.num > 0 && prefactor.base.den > 0 && prefactor.root > 0))
    throw InvalidArgument("monotone '" + id + "': prefactor must be positive");
  if (exponent.num * static_cast<long>(degree) != 2 * exponent.den)
    throw InvalidArgument("monotone '" + id + "': exponent must equal 2/degree");
}

namespace {

// Non-vanishing epsilon assignments of one party: per copy slot, the flat
// offset contribution index * stride, and the product of signs.
struct Support {
  std::vector<std::vector<std::size_t>> offsets;
  std::vector<int> signs;
};

Support party_support(const std::vector<std::vector<std::size_t>>& groups,
                      std::size_t degree, std::size_t stride) {
  const LeviCivita& eps = LeviCivita::of(groups.front().size());
  const auto& entries = eps.entries();
  Support s;
  std::vector<std::size_t> pick(groups.size(), 0);
  for (;;) {
    std::vector<std::size_t> off(degree, 0);
    int sign = 1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& e = entries[pick[g]];
      sign *= e.sign;
      for (std::size_t pos = 0; pos < groups[g].size(); ++pos)
        off[groups[g][pos]] = e.perm[pos] * stride;
    }
    s.offsets.push_back(std::move(off));
    s.signs.push_back(sign);
    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == entries.size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }
  return s;
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct Contraction {
  const std::vector<Support>& supports;
  const Vector& data;
  std::size_t degree;
  CompensatedSum re, im, mag;

  void walk(std::size_t party, std::vector<std::size_t>& off, int sign) {
    if (party == supports.size()) {
      Complex term(static_cast<double>(sign), 0.0);
      for (std::size_t c = 0; c < degree; ++c)
        term *= data[static_cast<Eigen::Index>(off[c])];
      re.add(term.real());
      im.add(term.imag());
      mag.add(std::abs(term));
      return;
    }
    const Support& s = supports[party];
    std::vector<std::size_t> saved = off;
    for (std::size_t a = 0; a < s.signs.size(); ++a) {
      for (std::size_t c = 0; c < degree; ++c) off[c] = saved[c] + s.offsets[a][c];
      walk(party + 1, off, sign * s.signs[a]);
    }
    off = saved;
  }
};

}  // namespace

MonotoneValue evaluate(const MonotoneSpec& spec, const MultiTensor& psi) {
  spec.validate();
  const Dims want = spec.dims();
  if (psi.parties() != want.size())
    throw DimensionError("monotone '" + spec.id + "' expects " +
                         std::to_string(want.size()) + " parties, state has " +
                         std::to_string(psi.parties()));
  for (std::size_t k = 0; k < want.size(); ++k)
    if (psi.dims()[k] != want[k])
      throw DimensionError(k, "monotone '" + spec.id + "' needs dimension " +
                                  std::to_string(want[k]) + ", state has " +
                                  std::to_string(psi.dims()[k]));

  std::vector<Support> supports;
  std::size_t stride = psi.size();
  for (std::size_t k = 0; k < want.size(); ++k) {
    stride /= want[k];
    supports.push_back(party_support(spec.wirings[k], spec.degree, stride));
  }

  Contraction c{supports, psi.data(), spec.degree, {}, {}, {}};
  std::vector<std::size_t> off(spec.degree, 0);
  c.walk(0, off, 1);

  MonotoneValue v;
  v.spec_id = spec.id;
  v.normalized_input = std::abs(psi.norm() - 1.0) <= 1e-12;
  v.contraction = Complex(c.re.value(), c.im.value());
  v.magnitude = c.mag.value();
  // Each term carries a relative rounding error of at most ~sqrt(5)(d-1)u from
  // the complex products; the compensated sum adds O(u |S|).
  const double floor = 4.0 * static_cast<double>(spec.degree) *
                       std::numeric_limits<double>::epsilon() * v.magnitude;
  const double mod = std::abs(v.contraction);
  if (mod <= floor) {
    v.below_rounding_floor = true;
    v.value = 0.0;
  } else {
    v.value = spec.prefactor.value() * std::pow(mod, spec.exponent.value());
  }
  return v;
}

namespace {

using Wiring = std::vector<std::vector<std::size_t>>;

// Transcribes a 1-based wiring into 0-based slots.
Wiring w(std::initializer_list<std::initializer_list<std::size_t>> groups) {
  Wiring out;
  for (const auto& g : groups) {
    std::vector<std::size_t> v;
    for (auto s : g) v.push_back(s - 1);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MonotoneSpec> build_catalog() {
  std::vector<MonotoneSpec> c;
  // |psi_{i1 j1} psi_{i2 j2} eps_{i1 i2} eps_{j1 j2}|
  c.push_back({"concurrence", 2, {w({{1, 2}}), w({{1, 2}})}, {{1, 1}, 1}, {1, 1},
               "two-qubit concurrence"});
  // |psi psi psi psi eps_{i1i2} eps_{i3i4} eps_{j1j2} eps_{j3j4} eps_{k1k3} eps_{k2k4}|^{1/2}
  c.push_back({"tangle3", 4,
               {w({{1, 2}, {3, 4}}), w({{1, 2}, {3, 4}}), w({{1, 3}, {2, 4}})},
               {{1, 1}, 1}, {1, 2}, "three-qubit tangle (square-root form)"});
  // |psi psi eps_{i1i2} eps_{j1j2} eps_{k1k2} eps_{l1l2}|
  c.push_back({"tangle2222a", 2,
               {w({{1, 2}}), w({{1, 2}}), w({{1, 2}}), w({{1, 2}})},
               {{1, 1}, 1}, {1, 1}, "four-qubit degree-2 monotone"});
  // sqrt2 |psi^4 eps_{i1i2} eps_{i3i4} eps_{l1l2} eps_{l3l4} eps_{j1j3} eps_{j2j4} eps_{k1k3} eps_{k2k4}|^{1/2}
  c.push_back({"tangle2222b", 4,
               {w({{1, 2}, {3, 4}}), w({{1, 3}, {2, 4}}), w({{1, 3}, {2, 4}}),
                w({{1, 2}, {3, 4}})},
               {{2, 1}, 2}, {1, 2}, "four-qubit degree-4 monotone"});
  // sqrt(4/3) |psi^4 eps_{i1i2} eps_{i3i4} eps_{j1j3} eps_{j2j4} eps_{k1k2k3k4}|^{1/2}
  c.push_back({"tangle224", 4,
               {w({{1, 2}, {3, 4}}), w({{1, 3}, {2, 4}}), w({{1, 2, 3, 4}})},
               {{4, 3}, 2}, {1, 2}, "2x2x4 tangle"});
  // (27/4)^{1/3} |psi^6 eps_{i1i4} eps_{i2i5} eps_{i3i6} eps_{j1j4} eps_{j2j5} eps_{j3j6} eps_{k1k2k3} eps_{k4k5k6}|^{1/3}
  c.push_back({"tangle223", 6,
               {w({{1, 4}, {2, 5}, {3, 6}}), w({{1, 4}, {2, 5}, {3, 6}}),
                w({{1, 2, 3}, {4, 5, 6}})},
               {{27, 4}, 3}, {1, 3}, "2x2x3 tangle"});
  // sqrt2 |psi^6 eps_{i1i2i3} eps_{i4i5i6} eps_{j1j2j4} eps_{j3j5j6} eps_{k1k5k6} eps_{k2k3k4}|^{1/3}
  c.push_back({"qutrit333", 6,
               {w({{1, 2, 3}, {4, 5, 6}}), w({{1, 2, 4}, {3, 5, 6}}),
                w({{1, 5, 6}, {2, 3, 4}})},
               {{2, 1}, 2}, {1, 3}, "three-qutrit degree-6 monotone"});
  for (const auto& s : c) s.validate();
  return c;
}

}  // namespace

const std::vector<MonotoneSpec>& catalog() {
  static const std::vector<MonotoneSpec> c = build_catalog();
  return c;
}

const MonotoneSpec& find(const std::string& id) {
  for (const auto& s : catalog())
    if (s.id == id) return s;
  throw Error("unknown_monotone", "unknown monotone id '" + id + "'");
}

std::vector<const MonotoneSpec*> applicable(const Dims& dims) {
  std::vector<const MonotoneSpec*> out;
  for (const auto& s : catalog())
    if (s.dims() == dims) out.push_back(&s);
  return out;
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

InvarianceReport check_invariance(const MonotoneSpec& spec, const MultiTensor& psi,
                                  std::size_t trials, std::uint64_t seed,
                                  bool unitary_only) {
  Rng rng(seed);
  const double base = evaluate(spec, psi).value;
  InvarianceReport r;
  r.trials = trials;
  r.unitary_only = unitary_only;
  r.threshold = unitary_only ? 1e-10 : 1e-8;
  for (std::size_t t = 0; t < trials; ++t) {
    const LocalOperatorSet ops = unitary_only
                                     ? random_local_unitaries(psi.dims(), rng)
                                     : random_special_linear_set(psi.dims(), rng);
    const double moved = evaluate(spec, apply_local(psi, ops)).value;
    r.max_relative_deviation = std::max(r.max_relative_deviation, relative_deviation(base, moved));
  }
  r.passed = r.max_relative_deviation <= r.threshold;
  return r;
}

namespace {

Matrix complement(const Matrix& a) {
  const auto n = a.cols();
  const Matrix m = Matrix::Identity(n, n) - a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double outcome_term(const MonotoneSpec& spec, const MultiTensor& out, double norm2_in) {
  const double n2 = out.norm_squared();
  if (n2 == 0.0) return 0.0;
  return (n2 / norm2_in) * evaluate(spec, out.normalized()).value;
}

}  // namespace

FilterOutcome filter_average(const MonotoneSpec& spec, const MultiTensor& psi,
                             std::size_t party, const Matrix& a) {
  const double n2 = psi.norm_squared();
  FilterOutcome f;
  f.before = evaluate(spec, psi.normalized()).value;
  f.expected = outcome_term(spec, apply_to_party(psi, party, a), n2) +
               outcome_term(spec, apply_to_party(psi, party, complement(a)), n2);
  return f;
}

MonotonicityReport check_monotonicity(const MonotoneSpec& spec, const MultiTensor& psi,
                                      std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  const MultiTensor unit = psi.normalized();
  std::uniform_int_distribution<std::size_t> pick(0, unit.parties() - 1);
  MonotonicityReport r;
  r.trials = trials;
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t k = pick(rng);
    const Matrix a = random_contraction(static_cast<Eigen::Index>(unit.dims()[k]), rng);
    const FilterOutcome f = filter_average(spec, unit, k, a);
    r.max_excess = std::max(r.max_excess, f.expected - f.before);
  }
  if (trials == 0) r.max_excess = 0.0;
  r.passed = r.max_excess <= r.slack;
  return r;
}

}  // namespace entnf::monotones
