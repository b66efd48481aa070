#include <gtest/gtest.h>

#include <memory>

#include "lgt/link_space.hpp"
#include "oracles.hpp"

using namespace lgt;

namespace {

CatalogPtr make(const std::string& ref) { return std::make_shared<const GroupCatalogEntry>(build_from_reference(ref)); }

CMatrix D(const GroupCatalogEntry& e, int j, int g) { return e.represent(j, GroupElement::finite(g)); }

}  // namespace

TEST(LinkSpace, Z2ThetaIsSignInRepBasis) {
  LinkSpace ls(make("Z_2"));
  ASSERT_EQ(ls.dim(), 2);
  const CMatrix t = oracle::dense(ls.theta_left(GroupElement::finite(1)).matrix);
  CMatrix want(2, 2);
  want << 1, 0, 0, -1;
  EXPECT_LT(oracle::max_abs(t - want), 1e-15);
  const CMatrix tg = oracle::dense(ls.theta(GroupElement::finite(1), Side::Left, LinkBasis::Group).matrix);
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_LT(oracle::max_abs(tg - swap), 1e-15);
}

TEST(LinkSpace, D3GroupLawAndCommutation) {
  auto cat = make("D3");
  LinkSpace ls(cat);
  const auto& s = cat->spec();
  const CMatrix I = CMatrix::Identity(6, 6);
  for (int g = 0; g < 6; ++g) {
    const CMatrix lg = oracle::dense(ls.theta_left(GroupElement::finite(g)).matrix);
    const CMatrix rg = oracle::dense(ls.theta_right(GroupElement::finite(g)).matrix);
    EXPECT_LT(oracle::max_abs(lg * lg.adjoint() - I), 1e-12);
    EXPECT_LT(oracle::max_abs(rg * rg.adjoint() - I), 1e-12);
    for (int h = 0; h < 6; ++h) {
      const CMatrix lh = oracle::dense(ls.theta_left(GroupElement::finite(h)).matrix);
      const CMatrix rh = oracle::dense(ls.theta_right(GroupElement::finite(h)).matrix);
      const int gh = s.multiply(g, h);
      EXPECT_LT(oracle::max_abs(lg * lh - oracle::dense(ls.theta_left(GroupElement::finite(gh)).matrix)), 1e-12);
      EXPECT_LT(oracle::max_abs(rg * rh - oracle::dense(ls.theta_right(GroupElement::finite(gh)).matrix)), 1e-12);
      EXPECT_LT(oracle::max_abs(lg * rh - rh * lg), 1e-12);
    }
  }
}

TEST(LinkSpace, D3FourierMapsThetaToTranslations) {
  auto cat = make("D3");
  LinkSpace ls(cat);
  const auto t = oracle::table_from(oracle::d3_two());
  auto inv = [&](int g) {
    for (int h = 0; h < 6; ++h)
      if (t[g][h] == 0) return h;
    return -1;
  };
  for (int g = 0; g < 6; ++g) {
    const CMatrix left = oracle::permutation(6, [&](int h) { return t[g][h]; });
    const CMatrix right = oracle::permutation(6, [&](int h) { return t[h][inv(g)]; });
    const CMatrix fl = oracle::dense(ls.to_group_basis(ls.theta_left(GroupElement::finite(g))).matrix);
    const CMatrix fr = oracle::dense(ls.to_group_basis(ls.theta_right(GroupElement::finite(g))).matrix);
    EXPECT_LT(oracle::max_abs(fl - left), 1e-12);
    EXPECT_LT(oracle::max_abs(fr - right), 1e-12);
    EXPECT_LT(oracle::max_abs(oracle::dense(ls.theta_group_basis(g, Side::Left).matrix) - left), 1e-15);
    EXPECT_LT(oracle::max_abs(oracle::dense(ls.theta_group_basis(g, Side::Right).matrix) - right), 1e-15);
  }
}

TEST(LinkSpace, D3UMatrixIsDiagonalInGroupBasis) {
  auto cat = make("D3");
  LinkSpace ls(cat);
  const int two = cat->irrep_index("2");
  const auto u = ls.u_matrix(two, LinkBasis::Rep);
  EXPECT_TRUE(u.dropped.empty());
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      const CMatrix conj = oracle::dense(ls.to_group_basis(u(m, n)).matrix);
      CMatrix want = CMatrix::Zero(6, 6);
      for (int g = 0; g < 6; ++g) want(g, g) = D(*cat, two, g)(m, n);
      EXPECT_LT(oracle::max_abs(conj - want), 1e-12) << m << n;
    }
}

TEST(LinkSpace, UCovarianceUnderLeftAndRight) {
  auto cat = make("D3");
  LinkSpace ls(cat);
  const int two = cat->irrep_index("2");
  const auto u = ls.u_matrix(two, LinkBasis::Rep);
  for (int g = 0; g < 6; ++g) {
    const CMatrix lg = oracle::dense(ls.theta_left(GroupElement::finite(g)).matrix);
    const CMatrix rg = oracle::dense(ls.theta_right(GroupElement::finite(g)).matrix);
    const CMatrix d = D(*cat, two, g);
    const CMatrix dinv = D(*cat, two, cat->spec().inv[g]);
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        CMatrix wl = CMatrix::Zero(6, 6), wr = CMatrix::Zero(6, 6);
        for (int k = 0; k < 2; ++k) {
          wl += dinv(m, k) * oracle::dense(u(k, n).matrix);
          wr += oracle::dense(u(m, k).matrix) * d(k, n);
        }
        EXPECT_LT(oracle::max_abs(lg * oracle::dense(u(m, n).matrix) * lg.adjoint() - wl), 1e-12);
        EXPECT_LT(oracle::max_abs(rg * oracle::dense(u(m, n).matrix) * rg.adjoint() - wr), 1e-12);
      }
  }
}

TEST(LinkSpace, Su2HalfMatchesReferenceOperatorMatrix) {
  auto cat = make("SU2_trunc:J_max=1/2");
  LinkSpace ls(cat);
  ASSERT_EQ(ls.dim(), 5);
  const int half = cat->irrep_index("1/2");
  // Basis: |000⟩, then |1/2 m n⟩ with (m,n) = (↑↑), (↑↓), (↓↑), (↓↓).
  const int vac = 0, uu = 1, ud = 2, du = 3, dd = 4;
  const double r = 1.0 / std::sqrt(2.0);
  auto op = [](std::initializer_list<std::tuple<int, int, double>> es) {
    CMatrix m = CMatrix::Zero(5, 5);
    for (auto [a, b, v] : es) m(a, b) = v;
    return m;
  };
  const CMatrix want[2][2] = {
      {op({{uu, vac, r}, {vac, dd, r}}), op({{ud, vac, r}, {vac, du, -r}})},
      {op({{du, vac, r}, {vac, ud, -r}}), op({{vac, uu, r}, {dd, vac, r}})}};
  const auto u = ls.u_matrix(half);
  ASSERT_EQ(u.dim, 2);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) EXPECT_LT(oracle::max_abs(oracle::dense(u(m, n).matrix) - want[m][n]), 1e-14);
  EXPECT_FALSE(u.dropped.empty());
}

TEST(LinkSpace, TruncationTraceDiagnostic) {
  for (int tj : {1, 2}) {
    auto cat = make(tj == 1 ? "SU2_trunc:J_max=1/2" : "SU2_trunc:J_max=1");
    LinkSpace ls(cat);
    const auto u = ls.u_matrix(cat->irrep_index("1/2"));
    const CMatrix tr = oracle::dense(ls.trace_diagnostic(u).matrix);
    const double jmax = tj / 2.0;
    const double f = (2 * jmax + 2) / (2 * jmax + 1);
    const CMatrix top = oracle::dense(ls.projector_rep(cat->irrep_index(half_integer_label(tj))).matrix);
    const CMatrix want = 2.0 * CMatrix::Identity(ls.dim(), ls.dim()) - f * top;
    EXPECT_LT(oracle::max_abs(tr - want), 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(tr);
    const auto ev = es.eigenvalues();
    const int top_dim = (tj + 1) * (tj + 1);
    for (int i = 0; i < ls.dim(); ++i) EXPECT_NEAR(ev(i), i < top_dim ? 2.0 - f : 2.0, 1e-12);
  }
}

TEST(LinkSpace, LieGeneratorsAlgebra) {
  for (const char* ref : {"SU2_trunc:J_max=1/2", "SU2_trunc:J_max=1"}) {
    auto cat = make(ref);
    LinkSpace ls(cat);
    const auto gens = ls.generators();
    const cplx i(0, 1);
    auto d = [](const LinkOperator& o) { return oracle::dense(o.matrix); };
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      EXPECT_LT(oracle::max_abs(d(gens.L[a]) * d(gens.L[b]) - d(gens.L[b]) * d(gens.L[a]) - i * d(gens.L[c])), 1e-12);
      EXPECT_LT(oracle::max_abs(d(gens.R[a]) * d(gens.R[b]) - d(gens.R[b]) * d(gens.R[a]) - i * d(gens.R[c])), 1e-12);
      for (int k = 0; k < 3; ++k)
        EXPECT_LT(oracle::max_abs(d(gens.L[a]) * d(gens.R[k]) - d(gens.R[k]) * d(gens.L[a])), 1e-12);
    }
    CMatrix l2 = CMatrix::Zero(ls.dim(), ls.dim()), r2 = l2;
    for (int a = 0; a < 3; ++a) {
      l2 += d(gens.L[a]) * d(gens.L[a]);
      r2 += d(gens.R[a]) * d(gens.R[a]);
    }
    EXPECT_LT(oracle::max_abs(l2 - r2), 1e-12);

    // [L_i, U_mn] = −T_mk U_kn, [R_i, U_mn] = U_mk T_kn survive truncation
    // because the truncation projector commutes with L and R.
    const auto u = ls.u_matrix(cat->irrep_index("1/2"));
    const auto t = oracle::spin_half();
    for (int a = 0; a < 3; ++a)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          CMatrix wl = CMatrix::Zero(ls.dim(), ls.dim()), wr = wl;
          for (int k = 0; k < 2; ++k) {
            wl -= t[a](m, k) * d(u(k, n));
            wr += d(u(m, k)) * t[a](k, n);
          }
          const CMatrix cl = d(gens.L[a]) * d(u(m, n)) - d(u(m, n)) * d(gens.L[a]);
          const CMatrix cr = d(gens.R[a]) * d(u(m, n)) - d(u(m, n)) * d(gens.R[a]);
          EXPECT_LT(oracle::max_abs(cl - wl), 1e-12);
          EXPECT_LT(oracle::max_abs(cr - wr), 1e-12);
        }
  }
}

TEST(LinkSpace, ProjectorRanks) {
  auto cat = make("D3");
  LinkSpace ls(cat);
  for (int j = 0; j < 3; ++j) {
    const CMatrix p = oracle::dense(ls.projector_rep(j, LinkBasis::Group).matrix);
    EXPECT_LT(oracle::max_abs(p * p - p), 1e-12);
    EXPECT_NEAR(p.trace().real(), cat->irrep(j).dim * cat->irrep(j).dim, 1e-12);
  }
  const int sizes[3] = {1, 2, 3};
  for (int c = 0; c < 3; ++c)
    EXPECT_NEAR(oracle::dense(ls.projector_class(c).matrix).trace().real(), sizes[c], 1e-15);
}

TEST(LinkSpace, MixedBasisArithmeticThrows) {
  LinkSpace ls(make("D3"));
  EXPECT_THROW(ls.identity(LinkBasis::Rep) + ls.identity(LinkBasis::Group), Error);
  LinkSpace lie(make("SU2_trunc:J_max=1/2"));
  EXPECT_THROW(lie.fourier(), Error);
}
