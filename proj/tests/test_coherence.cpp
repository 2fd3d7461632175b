#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "tricoh/coherence.hpp"
#include "tricoh/optics.hpp"

using namespace tricoh;
using tricoh::testing::cd;

namespace {

constexpr double kPi = std::numbers::pi;

CoherenceMatrix<double> diag_cm(double l1, double l2) {
  CMatrix2<double> m = CMatrix2<double>::Zero();
  m(0, 0) = l1;
  m(1, 1) = l2;
  return CoherenceMatrix<double>(m);
}

}  // namespace

TEST_CASE("coherence_matrix") {
  SUBCASE("product state") {
    CMatrix<double> a = CMatrix<double>::Zero(2, 2);
    a(0, 0) = 1.0;
    const auto cm = coherence_matrix(BipartitePureState<double>(a, Dof::Spin, Dof::Time));
    CMatrix2<double> expected;
    expected << 1.0, 0.0, 0.0, 0.0;
    CHECK((cm.entries() - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("maximally entangled") {
    const auto cm = coherence_matrix(BipartitePureState<double>(
        CMatrix<double>::Identity(2, 2) / std::sqrt(2.0), Dof::Spin, Dof::Time));
    CHECK((cm.entries() - CMatrix2<double>::Identity() / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("two-mode state matches the symbolic expansion") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const double theta = 2 * kPi * u(rng);
      const cd gamma = std::polar(u(rng), 2 * kPi * u(rng));
      const auto cm = coherence_matrix(prepare_state(theta, gamma));
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      CHECK(std::abs(cm.entries()(0, 0) - c * c) < 1e-12);
      CHECK(std::abs(cm.entries()(1, 1) - s * s) < 1e-12);
      CHECK(std::abs(cm.entries()(0, 1) - 0.5 * std::sin(theta) * std::conj(gamma)) < 1e-12);
      CHECK(std::abs(cm.entries()(1, 0) - 0.5 * std::sin(theta) * gamma) < 1e-12);
    }
  }
  SUBCASE("column side of size two is reduced over rows") {
    std::mt19937_64 rng(2);
    const BipartitePureState<double> s(testing::random_matrix(5, 2, rng), Dof::Time, Dof::Spin);
    const auto cm = coherence_matrix(s);
    const auto [l1, l2] = testing::brute_force_gram_eigenvalues(s.coeffs());
    const auto [e1, e2] = cm.eigenvalues();
    CHECK(std::abs(l1 - e1) < 1e-12);
    CHECK(std::abs(l2 - e2) < 1e-12);
  }
  SUBCASE("no two-dimensional side") {
    CHECK_THROWS_AS(coherence_matrix(BipartitePureState<double>(CMatrix<double>::Ones(3, 4),
                                                                Dof::Time, Dof::Space)),
                    DimensionError);
  }
  SUBCASE("validation") {
    CMatrix2<double> m;
    m << 1.0, 0.5, 0.0, 0.0;
    CHECK_THROWS_AS(CoherenceMatrix<double>{m}, DomainError);
    m << 0.5, 0.6, 0.6, 0.5;  // eigenvalues 1.1, -0.1
    CHECK_THROWS_AS(CoherenceMatrix<double>{m}.eigenvalues(), NumericalError);
    m << 0.5, 0.5 + 1e-13, 0.5 + 1e-13, 0.5;  // tiny negative drift is clamped
    CHECK(CoherenceMatrix<double>{m}.eigenvalues().second == 0.0);
  }
}

TEST_CASE("degree_of_polarization and concurrence") {
  CHECK(degree_of_polarization(diag_cm(1, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(degree_of_polarization(diag_cm(0.5, 0.5)) == doctest::Approx(0.0));
  CHECK(std::abs(degree_of_polarization(diag_cm(0.945, 0.055)) - 0.890) < 1e-12);
  CHECK(concurrence(diag_cm(1, 0)) == 0.0);
  CHECK(std::abs(concurrence(diag_cm(0.5, 0.5)) - 1.0) < 1e-15);
  // 2 sqrt(0.945 * 0.055)
  CHECK(std::abs(concurrence(diag_cm(0.945, 0.055)) - 0.4559605246071199) < 1e-12);
  CHECK(std::abs(concurrence(diag_cm(0.945, 0.055)) - 0.455) < 0.001);
}

TEST_CASE("constraint_residual") {
  CHECK(constraint_residual(1.0, 0.0) == 0.0);
  // Reported rows l and u: P^2 + C^2 = 0.996 and 0.985 at three decimals.
  CHECK(std::abs(constraint_residual(0.918, 0.392) - 0.004) < 5e-4);
  CHECK(std::abs(constraint_residual(0.050, 0.991) - 0.015) < 5e-4);
  CHECK_THROWS_AS(constraint_residual(-0.1, 0.5), DomainError);
}

TEST_CASE("analytic P and C") {
  CHECK(analytic_P(TrParams<double>(kPi, 0.3, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(analytic_P(TrParams<double>(kPi / 2, 0.0, 0.0))) < 1e-15);
  CHECK(std::abs(analytic_P(TrParams<double>(3 * kPi / 2, 0.916, 0.0)) - 0.916) < 1e-12);
  CHECK(std::abs(analytic_C(TrParams<double>(kPi, 0.3, 0.0))) < 1e-15);
  CHECK(std::abs(analytic_C(TrParams<double>(kPi / 2, 0.0, 0.0)) - 1.0) < 1e-15);
  const TrParams<double> row_c(kPi / 2, 0.890, -kPi / 2);
  CHECK(std::abs(analytic_C(row_c) - std::sqrt(1 - 0.890 * 0.890)) < 1e-15);
  CHECK(std::abs(analytic_C(row_c) - 0.455) < 0.0011);
  // Cross-check against the eigenvalue route.
  const auto report = analyze(prepare_state(row_c));
  CHECK(std::abs(report.C - analytic_C(row_c)) < 1e-12);
  CHECK_THROWS_AS(TrParams<double>(0, 1.2, 0), DomainError);
  CHECK_THROWS_AS(TrParams<double>(0, -0.1, 0), DomainError);
}

TEST_CASE("complementarity holds for random bipartite states") {
  std::mt19937_64 rng(2024);
  const Dof pairs[][2] = {{Dof::Spin, Dof::Time}, {Dof::Spin, Dof::Space}, {Dof::Time, Dof::Space}};
  for (int trial = 0; trial < 300; ++trial) {
    const Index other = 1 + trial % 9;
    const auto& p = pairs[trial % 3];
    const BipartitePureState<double> s(testing::random_matrix(2, other, rng), p[0], p[1]);
    const auto r = analyze(s);
    CHECK(r.residual <= 1e-10);
    CHECK(r.P >= 0.0);
    CHECK(r.P <= 1.0 + 1e-15);
    CHECK(r.C >= 0.0);
    CHECK(r.C <= 1.0 + 1e-15);
    CHECK(r.pair_label == s.pair_label());
  }
}

TEST_CASE("P and C are invariant under local unitaries and global phase") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 5;
    const CMatrix<double> a = testing::random_matrix(2, n, rng);
    const CMatrix<double> u = testing::random_matrix(2, 2, rng).householderQr().householderQ();
    const CMatrix<double> v = testing::random_matrix(n, n, rng).householderQr().householderQ();
    const cd phase = std::polar(1.0, 0.1 * trial);
    const auto base = analyze(BipartitePureState<double>(a, Dof::Spin, Dof::Time));
    const auto rotated = analyze(BipartitePureState<double>(u * a * v, Dof::Spin, Dof::Time));
    const auto phased = analyze(BipartitePureState<double>(phase * a, Dof::Spin, Dof::Time));
    CHECK(std::abs(base.P - rotated.P) < 1e-10);
    CHECK(std::abs(base.C - rotated.C) < 1e-10);
    CHECK(std::abs(base.P - phased.P) < 1e-12);
    CHECK(std::abs(base.C - phased.C) < 1e-12);
  }
}

TEST_CASE("field-level triad: st, sr and tr projections each satisfy the constraint") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = normalize(testing::random_field(6, 2, rng));
    const auto st = analyze(project_spatial(f, trial % 2));
    const auto sr = analyze(project_temporal(f, trial % 6));
    const auto tr = analyze(project_spin(f, CVector2<double>(1.0, 0.0)));
    CHECK(st.pair_label == "spin-time");
    CHECK(sr.pair_label == "spin-space");
    CHECK(tr.pair_label == "time-space");
    CHECK(st.residual <= 1e-10);
    CHECK(sr.residual <= 1e-10);
    CHECK(tr.residual <= 1e-10);
  }
}
