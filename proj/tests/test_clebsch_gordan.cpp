#include <gtest/gtest.h>

#include "lgt/clebsch_gordan.hpp"
#include "oracles.hpp"

using namespace lgt;

namespace {

// ⟨J M; 1/2 m | J±1/2, M+m⟩ from the standard closed form, m,M as values.
double su2_half(double J, double M, double m, bool up) {
  if (up) return std::sqrt((J + 2 * m * M + 1) / (2 * J + 1));
  return -2 * m * std::sqrt((J - 2 * m * M) / (2 * J + 1));
}

}  // namespace

TEST(ClebschGordan, D3ProductDecomposition) {
  const auto e = build_builtin("D3");
  const auto d = decompose(e, 2, 2);
  EXPECT_EQ(d.multiplicity_of(0), 1);
  EXPECT_EQ(d.multiplicity_of(1), 1);
  EXPECT_EQ(d.multiplicity_of(2), 1);
  const auto p2 = decompose(e, 1, 2);
  EXPECT_EQ(p2.multiplicity_of(2), 1);
  EXPECT_EQ(p2.multiplicity_of(0), 0);
}

TEST(ClebschGordan, D3MatchesPublishedTable) {
  const auto e = build_builtin("D3");
  const int I = e.irrep_index("I"), P = e.irrep_index("p"), T = e.irrep_index("2");
  const double r = 1.0 / std::sqrt(2.0);
  const double eps[2][2] = {{0, 1}, {-1, 0}};
  const double sz[2][2] = {{1, 0}, {0, -1}};
  const double sx[2][2] = {{0, 1}, {1, 0}};

  const auto c_i2 = cg(e, I, T, T);
  const auto c_p2 = cg(e, P, T, T);
  const auto c_22i = cg(e, T, T, I);
  const auto c_22p = cg(e, T, T, P);
  const auto c_222 = cg(e, T, T, T);
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < 2; ++m) {
      EXPECT_NEAR(std::abs(c_i2(0, m, n) - (m == n ? 1.0 : 0.0)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(c_p2(0, m, n) - eps[m][n]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(c_22i(n, m, 0) - (m == n ? r : 0.0)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(c_22p(n, m, 0) - eps[n][m] * r), 0.0, 1e-12);
      for (int l = 0; l < 2; ++l) {
        const double want = (l == 0 ? sz[n][m] : -sx[n][m]) * r;
        EXPECT_NEAR(std::abs(c_222(n, m, l) - want), 0.0, 1e-12) << n << m << l;
      }
    }
}

TEST(ClebschGordan, D3AllPairsIntertwineAndComplete) {
  const auto e = build_builtin("D3");
  for (int J = 0; J < 3; ++J)
    for (int j = 0; j < 3; ++j) {
      const auto d = decompose(e, J, j);
      const int dJ = e.irrep(J).dim, dj = e.irrep(j).dim;
      CMatrix sum = CMatrix::Zero(dJ * dj, dJ * dj);
      for (const auto& t : d.terms) {
        if (t.multiplicity == 0) continue;
        const auto c = cg(e, J, j, t.irrep);
        EXPECT_LT(verify_cg(e, c), 1e-12);
        EXPECT_LT(cg_orthonormality_residual(c), 1e-12);
        sum += c.matrix() * c.matrix().adjoint();
      }
      EXPECT_LT(oracle::max_abs(sum - CMatrix::Identity(dJ * dj, dJ * dj)), 1e-12);
    }
}

TEST(ClebschGordan, CyclicGroupsAreCharges) {
  const auto e = build_builtin("Z_N", {{"N", "5"}});
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      const auto d = decompose(e, a, b);
      ASSERT_EQ(d.terms.size(), 1u);
      EXPECT_EQ(d.terms[0].irrep, (a + b) % 5);
      EXPECT_NEAR(std::abs(cg(e, a, b, (a + b) % 5)(0, 0, 0) - 1.0), 0.0, 1e-14);
    }
}

TEST(ClebschGordan, Su2ClosedFormMatchesFormulaAndCommutant) {
  const auto e = build_from_reference("SU2_trunc:J_max=2");
  const int half = e.irrep_index("1/2");
  for (int tJ = 0; tJ <= 3; ++tJ) {
    const double J = tJ / 2.0;
    for (int up = 0; up < 2; ++up) {
      const int tK = up ? tJ + 1 : tJ - 1;
      if (tK < 0) continue;
      const auto c = cg(e, tJ, half, tK);
      const auto n = cg_lie_commutant(e, tJ, half, tK);
      for (int iM = 0; iM <= tJ; ++iM)
        for (int im = 0; im < 2; ++im)
          for (int iN = 0; iN <= tK; ++iN) {
            const double M = J - iM, m = 0.5 - im, N = tK / 2.0 - iN;
            const double want = std::abs(N - (M + m)) < 1e-9 ? su2_half(J, M, m, up) : 0.0;
            EXPECT_NEAR(std::abs(c(iM, im, iN) - want), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(n(iM, im, iN) - c(iM, im, iN)), 0.0, 1e-8);
          }
      EXPECT_LT(verify_cg(e, c), 1e-12);
    }
  }
}

TEST(ClebschGordan, Su2OutsideTruncationIsFlagged) {
  const auto e = build_from_reference("SU2_trunc:J_max=1/2");
  const auto d = decompose(e, 1, 1);
  bool saw_one = false;
  for (const auto& t : d.terms)
    if (t.label == "1") {
      saw_one = true;
      EXPECT_EQ(t.irrep, -1);
    }
  EXPECT_TRUE(saw_one);
}

TEST(ClebschGordan, SignFlipIsDetected) {
  const auto e = build_builtin("D3");
  auto c = cg(e, 2, 2, 2);
  c.at(0, 0, 0) = -c(0, 0, 0);
  EXPECT_GT(verify_cg(e, c), 1e-3);

  const auto s = build_from_reference("SU2_trunc:J_max=3/2");
  auto cs = cg(s, 2, 1, 3);
  cs.at(1, 0, 1) = -cs(1, 0, 1);
  EXPECT_GT(verify_cg(s, cs), 1e-3);
}

TEST(ClebschGordan, PhaseConventionFirstEntryPositive) {
  const auto e = build_builtin("D3");
  auto c = cg(e, 2, 2, 2);
  for (auto& x : c.coeffs) x *= cplx(0, 1);
  apply_phase_convention(c);
  const auto ref = cg(e, 2, 2, 2);
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) EXPECT_NEAR(std::abs(c.coeffs[i] - ref.coeffs[i]), 0.0, 1e-14);
}
