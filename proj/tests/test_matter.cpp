#include <gtest/gtest.h>

#include "lgt/matter.hpp"
#include "oracles.hpp"

using namespace lgt;

namespace {

CMatrix d3_closed_form(int g, int parity) {
  // Closed forms in the modes (↑, ↓).
  const CMatrix up = oracle::annihilator(2, 0), dn = oracle::annihilator(2, 1);
  const CMatrix nu = up.adjoint() * up, nd = dn.adjoint() * dn;
  const CMatrix one = CMatrix::Identity(4, 4);
  const double a = 2.0 * std::numbers::pi * (g % 3) / 3.0;
  const double c = std::cos(a), s = std::sin(a);
  if (g < 3) return one - (1 - c) * (nu + nd) + s * (up.adjoint() * dn - dn.adjoint() * up) + 2 * (1 - c) * nu * nd;
  const double sign = parity ? -1.0 : 1.0;
  return sign * (one + (c - 1) * nu - (c + 1) * nd + s * (up.adjoint() * dn + dn.adjoint() * up));
}

}  // namespace

TEST(Matter, FockOperatorsMatchJordanWigner) {
  for (int n : {1, 2, 3}) {
    VertexFock f(n, 0);
    for (int a = 0; a < n; ++a) {
      EXPECT_LT(oracle::max_abs(oracle::dense(f.psi(a)) - oracle::annihilator(n, a)), 1e-15);
      EXPECT_LT(oracle::max_abs(oracle::dense(f.psi_dagger(a)) - oracle::annihilator(n, a).adjoint()), 1e-15);
      for (int b = 0; b < n; ++b) {
        const CMatrix ca = oracle::dense(f.psi(a)), cb = oracle::dense(f.psi(b));
        const CMatrix anti = ca * cb.adjoint() + cb.adjoint() * ca;
        const CMatrix want = CMatrix::Identity(f.dim(), f.dim()) * (a == b ? 1.0 : 0.0);
        EXPECT_EQ(oracle::max_abs(anti - want), 0.0);
        EXPECT_EQ(oracle::max_abs(ca * cb + cb * ca), 0.0);
      }
    }
  }
}

TEST(Matter, D3GroupLaw) {
  const auto e = build_builtin("D3");
  for (int parity : {0, 1})
    for (int g = 0; g < 6; ++g)
      for (int h = 0; h < 6; ++h) {
        const CMatrix tg = oracle::dense(theta_q(e, GroupElement::finite(g), parity));
        const CMatrix th = oracle::dense(theta_q(e, GroupElement::finite(h), parity));
        const CMatrix tgh = oracle::dense(theta_q(e, GroupElement::finite(e.spec().multiply(g, h)), parity));
        EXPECT_LT(oracle::max_abs(tg * th - tgh), 1e-12);
        EXPECT_LT(oracle::max_abs(tg * tg.adjoint() - CMatrix::Identity(4, 4)), 1e-12);
      }
}

TEST(Matter, D3ClosedForms) {
  const auto e = build_builtin("D3");
  // The reflection closed form at angle α is the induced action of
  // [[c, s], [s, −c]], i.e. of ξ_{−α}σ; rotations match ξ_α directly.
  for (int parity : {0, 1})
    for (int g = 0; g < 6; ++g) {
      const int element = g < 3 ? g : 3 + (3 - g % 3) % 3;
      const CMatrix t = oracle::dense(theta_q(e, GroupElement::finite(element), parity));
      EXPECT_LT(oracle::max_abs(t - d3_closed_form(g, parity)), 1e-12) << g << " " << parity;
    }
  // Θ^Q_σ = (1 − 2 n_↓)(−1)^N exactly.
  const CMatrix dn = oracle::annihilator(2, 1);
  for (int parity : {0, 1}) {
    const CMatrix want = (CMatrix::Identity(4, 4) - 2.0 * dn.adjoint() * dn) * (parity ? -1.0 : 1.0);
    EXPECT_EQ(oracle::max_abs(oracle::dense(theta_q(e, GroupElement::finite(3), parity)) - want), 0.0);
  }
}

TEST(Matter, FullVertexEigenvalueIsDeterminant) {
  for (const char* ref : {"D3", "Z_3", "Z_5"}) {
    const auto e = build_from_reference(ref);
    const auto& fund = e.irrep(e.fundamental());
    const int full = (1 << fund.dim) - 1;
    for (int parity : {0, 1})
      for (int g = 0; g < e.spec().order; ++g) {
        const CMatrix t = oracle::dense(theta_q(e, GroupElement::finite(g), parity));
        const cplx det = fund.matrices[g].determinant();
        const cplx inv = fund.matrices[e.spec().inv[g]].determinant();
        const cplx want = det * (parity ? inv : cplx(1.0));
        CVector v = CVector::Zero(t.rows());
        v(full) = 1.0;
        EXPECT_LT((t * v - want * v).norm(), 1e-12) << ref << " g=" << g;
      }
  }
}

TEST(Matter, Su2ChargesVanishOnEmptyAndFull) {
  const auto e = build_from_reference("SU2_trunc:J_max=1/2");
  for (int parity : {0, 1}) {
    const auto q = lie_charges(e, parity);
    ASSERT_EQ(q.size(), 3u);
    for (const auto& qa : q) {
      const CMatrix d = oracle::dense(qa);
      EXPECT_EQ(d.col(0).cwiseAbs().maxCoeff(), 0.0);
      EXPECT_EQ(d.col(3).cwiseAbs().maxCoeff(), 0.0);
    }
    // Single-particle sector carries spin 1/2: Q² = 3/4.
    CMatrix c2 = CMatrix::Zero(4, 4);
    for (const auto& qa : q) c2 += oracle::dense(qa) * oracle::dense(qa);
    EXPECT_NEAR(c2(1, 1).real(), 0.75, 1e-14);
    EXPECT_NEAR(c2(2, 2).real(), 0.75, 1e-14);
  }
}

TEST(Matter, U1StaggeredCharge) {
  const CMatrix q0 = oracle::dense(charge_u1(0));
  const CMatrix q1 = oracle::dense(charge_u1(1));
  EXPECT_EQ(q0(0, 0), cplx(0.0));
  EXPECT_EQ(q0(1, 1), cplx(1.0));
  EXPECT_EQ(q1(0, 0), cplx(-1.0));
  EXPECT_EQ(q1(1, 1), cplx(0.0));
}

TEST(Matter, LieExponentialAgreesWithInducedAction) {
  const auto e = build_from_reference("SU2_trunc:J_max=1/2");
  const auto t = oracle::spin_half();
  for (int parity : {0, 1})
    for (const auto& alpha : std::vector<std::vector<double>>{{0.3, -0.7, 1.1}, {1.9, 0.2, -0.4}}) {
      const auto g = GroupElement::lie(alpha);
      const CMatrix a = oracle::dense(theta_q(e, g, parity));
      const CMatrix b = oracle::dense(theta_q_exponential(e, g, parity));
      EXPECT_LT(oracle::max_abs(a - b), 1e-12);
      // Independent route: exp(i α·Q) from the charges directly.
      const auto q = lie_charges(e, parity);
      CMatrix gen = CMatrix::Zero(4, 4);
      for (int k = 0; k < 3; ++k) gen += alpha[k] * oracle::dense(q[k]);
      EXPECT_LT(oracle::max_abs(oracle::matrix_exp(cplx(0, 1) * gen) - a), 1e-12);
    }
}

TEST(Matter, SingleParticleTransformsWithFundamental) {
  const auto e = build_builtin("D3");
  VertexFock f(2, 0);
  for (int g = 0; g < 6; ++g) {
    const CMatrix t = oracle::dense(theta_q(e, GroupElement::finite(g), 0));
    const CMatrix d = e.irrep(2).matrices[g];
    for (int a = 0; a < 2; ++a) {
      CMatrix want = CMatrix::Zero(4, 4);
      for (int b = 0; b < 2; ++b) want += oracle::dense(f.psi_dagger(b)) * d(b, a);
      EXPECT_LT(oracle::max_abs(t * oracle::dense(f.psi_dagger(a)) * t.adjoint() - want), 1e-12);
    }
  }
}
