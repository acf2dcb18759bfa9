#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entnf/lu_nf.hpp"
#include "entnf/random.hpp"
#include "entnf/states.hpp"
#include "oracles.hpp"

using namespace entnf;
using lu::Index;

namespace {

void check_result(const MultiTensor& psi, const lu::LuNormalFormResult& r) {
  const double norm = psi.norm();
  CHECK(r.status == lu::Status::converged);
  CHECK(std::abs(r.psi_nf.norm() - norm) <= 1e-12 * norm);
  const auto replay = apply_local(psi, r.unitaries);
  CHECK((replay.data() - r.psi_nf.data()).norm() <= 1e-8 * norm);
  for (const auto& e : r.zero_pattern_report) CHECK(std::abs(r.psi_nf(e.index)) <= 1e-8 * norm);
  CHECK(r.max_zero_residual <= 1e-8 * norm);
  for (const auto& e : r.positive_entries) {
    CHECK(std::abs(e.value.imag()) <= 1e-8 * norm);
    CHECK(e.value.real() >= -1e-8 * norm);
  }
  for (const auto& level : r.levels)
    for (std::size_t i = 0; i + 1 < level.pivot_history.size(); ++i)
      CHECK(level.pivot_history[i + 1] >= level.pivot_history[i] - 1e-14);
}

}  // namespace

TEST_CASE("zero counts") {
  CHECK(lu::zero_count(2, 3) == 3);
  CHECK(lu::zero_count(3, 3) == 9);
  CHECK(lu::zero_count(1, 5) == 0);
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 2; m <= 4; ++m)
      CHECK(lu::zero_pattern(Dims(m, n)).size() == lu::zero_count(n, m));
}

TEST_CASE("zero patterns of small shapes") {
  CHECK(lu::zero_pattern({2, 2, 2}) == std::vector<Index>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto p333 = lu::zero_pattern({3, 3, 3});
  CHECK(p333.size() == 9);
  for (const Index& idx : std::vector<Index>{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 0, 1},
                                              {0, 0, 2}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}})
    CHECK(std::find(p333.begin(), p333.end(), idx) != p333.end());

  // N x 2 x 2: beyond the first four rows everything vanishes.
  const auto p622 = lu::zero_pattern({6, 2, 2});
  for (std::size_t i = 4; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(std::find(p622.begin(), p622.end(), Index{i, j, k}) != p622.end());
}

TEST_CASE("random 2x2x2, 3x3x3 and 6x2x2 states reach their patterns") {
  Rng rng(60);
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{3, 3, 3}, Dims{6, 2, 2}, Dims{4, 2, 2}, Dims{2, 2, 2, 2}, Dims{2, 3, 4},
                          Dims{2, 4, 3, 2}}) {
    for (int t = 0; t < 10; ++t) {
      const auto psi = random_state(dims, rng, t % 2 == 0);
      check_result(psi, lu::lu_normal_form(psi));
    }
  }
}

TEST_CASE("three-qubit normal form has four real of five nonzero entries") {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const auto r = lu::lu_normal_form(random_state({2, 2, 2}, rng));
    CHECK(r.nonzero_entries == 5);
    CHECK(r.real_entries >= 4);
  }
}

TEST_CASE("bipartite normal form is the SVD") {
  Rng rng(62);
  for (const Dims& dims : {Dims{2, 2}, Dims{3, 3}, Dims{2, 4}, Dims{4, 3}}) {
    for (int t = 0; t < 10; ++t) {
      const auto psi = random_state(dims, rng);
      const auto r = lu::lu_normal_form(psi);
      check_result(psi, r);
      Eigen::JacobiSVD<Matrix> svd(unfold(psi, 0));
      const auto s = svd.singularValues();
      std::vector<double> diag;
      for (std::size_t i = 0; i < std::min(dims[0], dims[1]); ++i) {
        const Complex e = r.psi_nf({i, i});
        CHECK(std::abs(e.imag()) <= 1e-10);
        diag.push_back(e.real());
      }
      std::vector<double> sorted = diag;
      std::sort(sorted.rbegin(), sorted.rend());
      for (std::size_t i = 0; i < sorted.size(); ++i)
        CHECK(std::abs(sorted[i] - s[static_cast<Eigen::Index>(i)]) <= 1e-10);
      CHECK(r.nonzero_entries == diag.size());
    }
  }
}

TEST_CASE("fingerprints survive the normal form") {
  Rng rng(63);
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{2, 2, 2, 2}, Dims{2, 2, 4}, Dims{3, 3, 3}}) {
    const auto psi = random_state(dims, rng);
    const auto r = lu::lu_normal_form(psi);
    CHECK(lu::fingerprint_distance(lu::fingerprint(psi), lu::fingerprint(r.psi_nf)) <= 1e-10);
  }
}

TEST_CASE("phase pass can be switched off") {
  Rng rng(64);
  lu::LuConfig cfg;
  cfg.fix_phases = false;
  const auto r = lu::lu_normal_form(random_state({2, 2, 2}, rng), cfg);
  CHECK(r.positive_entries.empty());
  CHECK(r.max_zero_residual <= 1e-8);
}

TEST_CASE("several oversized parties are all triangularized") {
  // 2x3x4: party 3 keeps a U(2) freedom on its last two coordinates unless its tail is fixed.
  const auto p = lu::zero_pattern({2, 3, 4});
  CHECK(std::find(p.begin(), p.end(), Index{0, 1, 3}) != p.end());
  Rng rng(68);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_state({2, 3, 4}, rng);
    const auto b = apply_local(a, random_local_unitaries(a.dims(), rng));
    CHECK(lu::phase_aligned_distance(lu::lu_normal_form(a).psi_nf, lu::lu_normal_form(b).psi_nf) <= 1e-8);
  }
}

TEST_CASE("phase-aligned distance") {
  Rng rng(65);
  const auto a = random_state({2, 3, 2}, rng);
  std::vector<Matrix> phases;
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (auto n : a.dims()) {
    Vector d(static_cast<Eigen::Index>(n));
    for (auto& x : d) x = std::polar(1.0, angle(rng));
    phases.push_back(d.asDiagonal());
  }
  const auto b = apply_local(a, LocalOperatorSet(phases));
  CHECK(lu::phase_aligned_distance(a, b) <= 1e-10);
  CHECK(lu::phase_aligned_distance(a, a) == 0.0);
  CHECK(lu::phase_aligned_distance(a, random_state({2, 3, 2}, rng)) > 1e-3);
  CHECK_THROWS_AS(lu::phase_aligned_distance(a, random_state({2, 2, 2}, rng)), DimensionError);
}

TEST_CASE("equivalence probe") {
  Rng rng(66);
  const auto psi = random_state({2, 2, 2}, rng);
  const auto same = lu::lu_equivalence_probe(psi, psi, 8, 1);
  CHECK(same.verdict == lu::Equivalence::equivalent_likely);
  CHECK(same.restarts_used == 0);

  for (int t = 0; t < 5; ++t) {
    const auto a = random_state({2, 2, 2}, rng);
    const auto b = apply_local(a, random_local_unitaries(a.dims(), rng));
    CHECK(lu::lu_equivalence_probe(a, b, 8, 100 + t).verdict == lu::Equivalence::equivalent_likely);
    const auto c = random_state({2, 2, 2}, rng);
    CHECK(lu::lu_equivalence_probe(a, c, 8, 200 + t).verdict == lu::Equivalence::inequivalent);
  }

  const auto gw = lu::lu_equivalence_probe(states::ghz(3), states::w(), 8, 3);
  CHECK(gw.verdict == lu::Equivalence::inequivalent);
  CHECK(gw.fingerprint_distance > 0.1);

  CHECK_THROWS_AS(lu::lu_equivalence_probe(psi, random_state({2, 2, 3}, rng), 4, 1), DimensionError);
}

TEST_CASE("equivalence probe is reproducible") {
  Rng rng(67);
  const auto a = random_state({3, 3, 3}, rng);
  const auto b = apply_local(a, random_local_unitaries(a.dims(), rng));
  const auto r1 = lu::lu_equivalence_probe(a, b, 6, 42);
  const auto r2 = lu::lu_equivalence_probe(a, b, 6, 42);
  CHECK(r1.verdict == r2.verdict);
  CHECK(r1.best_match == r2.best_match);
  CHECK(r1.restarts_used == r2.restarts_used);
}
