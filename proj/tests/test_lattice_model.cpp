#include <gtest/gtest.h>

#include <algorithm>
#include <memory>

#include "lgt/model.hpp"
#include "lgt/spectra.hpp"
#include "oracles.hpp"

using namespace lgt;

namespace {

CatalogPtr make(const std::string& ref) { return std::make_shared<const GroupCatalogEntry>(build_from_reference(ref)); }

std::vector<double> full_spectrum(const SparseMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(oracle::dense(h), Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ModelParams only(const std::string& term) {
  ModelParams p;
  p.mass_term = term == "mass";
  p.tunneling_term = term == "tunneling";
  p.electric_term = term == "electric";
  p.magnetic_term = term == "magnetic";
  return p;
}

}  // namespace

TEST(Lattice, CountsAndOrdering) {
  LatticeSpec open(2, 2, false, false, true);
  EXPECT_EQ(open.num_vertices(), 4);
  EXPECT_EQ(open.num_links(), 4);
  ASSERT_EQ(open.plaquettes().size(), 1u);
  const auto& p = open.plaquettes()[0];
  EXPECT_EQ(open.link(p.links[0]).start, 0);
  EXPECT_EQ(open.link(p.links[0]).dir, Direction::X);
  EXPECT_EQ(open.link(p.links[1]).start, 1);
  EXPECT_EQ(open.link(p.links[1]).dir, Direction::Y);
  EXPECT_EQ(open.link(p.links[2]).start, 2);
  EXPECT_EQ(open.link(p.links[2]).dir, Direction::X);
  EXPECT_EQ(open.link(p.links[3]).start, 0);
  EXPECT_EQ(open.link(p.links[3]).dir, Direction::Y);
  EXPECT_EQ(open.vertex(1).parity, 1);
  EXPECT_EQ(open.vertex(3).parity, 0);

  LatticeSpec torus(2, 2, true, true, false);
  EXPECT_EQ(torus.num_links(), 8);
  EXPECT_EQ(torus.plaquettes().size(), 4u);
  for (int v = 0; v < 4; ++v) {
    EXPECT_EQ(torus.outgoing(v).size(), 2u);
    EXPECT_EQ(torus.incoming(v).size(), 2u);
  }
  LatticeSpec chain(3, 1, false, false, true);
  EXPECT_EQ(chain.num_links(), 2);
  EXPECT_TRUE(chain.plaquettes().empty());

  EXPECT_THROW(LatticeSpec(3, 2, true, false, true), Error);
  EXPECT_THROW(LatticeSpec(1, 2, true, false, false), Error);
  EXPECT_NO_THROW(LatticeSpec(3, 2, true, false, false, false));
}

TEST(Model, DimensionAndFactors) {
  auto p = only("mass");
  Model m(LatticeSpec(2, 2, false, false, true), p, make("D3"), LinkBasis::Group);
  EXPECT_EQ(m.dim(), 4 * 4 * 4 * 4 * 6 * 6 * 6 * 6);
  EXPECT_EQ(m.vertex_factor(0), 0);
  EXPECT_EQ(m.link_factor(0), 4);
}

TEST(Model, GlobalFermionsAnticommute) {
  Model m(LatticeSpec(2, 1, false, false, true), only("mass"), make("D3"));
  std::vector<CMatrix> c;
  for (int v = 0; v < 2; ++v)
    for (int a = 0; a < 2; ++a) c.push_back(oracle::dense(m.fermion(v, a, false)));
  const int d = m.dim();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      const CMatrix want = CMatrix::Identity(d, d) * (i == j ? 1.0 : 0.0);
      EXPECT_EQ(oracle::max_abs(c[i] * c[j].adjoint() + c[j].adjoint() * c[i] - want), 0.0);
      EXPECT_EQ(oracle::max_abs(c[i] * c[j] + c[j] * c[i]), 0.0);
    }
  // Bilinear assembled factor by factor equals the product of global operators.
  const CMatrix direct = oracle::dense(m.fermion(0, 1, true)) * oracle::dense(m.fermion(1, 0, false));
  EXPECT_LT(oracle::max_abs(oracle::dense(m.fermion_bilinear(0, 1, 1, 0)) - direct), 1e-15);
}

TEST(Model, StaggeredMassSpectrum) {
  auto p = only("mass");
  p.mass = 0.7;
  Model m(LatticeSpec(2, 1, false, false, true), p, make("Z_2"));
  // Oracle: Σ_v (−1)^v M n_v over the 4 occupations, times the 2 link states.
  std::vector<double> want;
  for (int n0 = 0; n0 < 2; ++n0)
    for (int n1 = 0; n1 < 2; ++n1)
      for (int l = 0; l < 2; ++l) want.push_back(0.7 * (n0 - n1));
  std::sort(want.begin(), want.end());
  const auto got = full_spectrum(m.hamiltonian());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Model, ElectricOnlySpectrumEnumerates) {
  auto p = only("electric");
  p.coupling = 1.3;
  p.electric_weights = {{"I", 0.0}, {"p", 1.0}, {"2", 0.75}};
  Model m(LatticeSpec(3, 1, false, false, false), p, make("D3"));
  std::vector<double> want;
  const double w[3] = {0.0, 1.0, 0.75};
  const int dims[3] = {1, 1, 2};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < dims[a] * dims[a] * dims[b] * dims[b]; ++k)
        want.push_back(1.3 * 1.3 / 2.0 * (w[a] + w[b]));
  std::sort(want.begin(), want.end());
  const auto got = full_spectrum(m.hamiltonian());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(Model, CyclicPlaquetteCosineSpectrum) {
  for (int n : {2, 3, 4, 5}) {
    auto p = only("magnetic");
    p.coupling = 0.8;
    const auto cat = make("Z_" + std::to_string(n));
    // Oracle: −(1/g²) cos(φ1 + φ2 − φ3 − φ4) over all link phases.
    std::vector<double> want;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            want.push_back(-std::cos(2.0 * std::numbers::pi * (a + b - c - d) / n) / (0.8 * 0.8));
    std::sort(want.begin(), want.end());
    for (auto basis : {LinkBasis::Group, LinkBasis::Rep}) {
      Model m(LatticeSpec(2, 2, false, false, false), p, cat, basis);
      const auto got = full_spectrum(m.hamiltonian());
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12) << "N=" << n;
    }
  }
}

TEST(Model, RepAndGroupBasesAgree) {
  ModelParams p;
  p.coupling = 1.1;
  p.electric_weights = {{"I", 0.0}, {"p", 1.0}, {"2", 0.75}};
  const auto cat = make("D3");
  Model rep(LatticeSpec(2, 2, false, false, false), p, cat, LinkBasis::Rep);
  Model grp(LatticeSpec(2, 2, false, false, false), p, cat, LinkBasis::Group);
  const auto a = full_spectrum(rep.hamiltonian());
  const auto b = full_spectrum(grp.hamiltonian());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
  EXPECT_LT(max_abs_diff(grp.magnetic_term(), grp.magnetic_class_form()), 1e-12);
}

TEST(Model, AbelianRightIsMinusLeft) {
  LinkSpace ls(make("U1_trunc:P=2"));
  const auto g = ls.generators();
  ASSERT_EQ(g.L.size(), 1u);
  EXPECT_LT(oracle::max_abs(oracle::dense(g.R[0].matrix) + oracle::dense(g.L[0].matrix)), 1e-15);
}

TEST(Model, GaussOperatorIsProductOfLocalActions) {
  const auto cat = make("Z_3");
  Model m(LatticeSpec(2, 1, false, false, true), {}, cat, LinkBasis::Group);
  // Vertex 0 has one outgoing link (0); vertex 1 has one incoming link.
  const auto& ls = m.link_space();
  for (int g = 0; g < 3; ++g) {
    const auto el = GroupElement::finite(g);
    const CMatrix want0 = oracle::dense(m.embed_vertex(theta_q(*cat, el, 0), 0)) *
                          oracle::dense(m.embed_link(ls.theta(el, Side::Left, LinkBasis::Group), 0));
    const CMatrix want1 = oracle::dense(m.embed_vertex(theta_q(*cat, el, 1), 1)) *
                          oracle::dense(m.embed_link(ls.theta(el, Side::Right, LinkBasis::Group), 0));
    EXPECT_LT(oracle::max_abs(oracle::dense(m.gauss_operator(0, el)) - want0), 1e-15);
    EXPECT_LT(oracle::max_abs(oracle::dense(m.gauss_operator(1, el)) - want1), 1e-15);
  }
}

TEST(Model, HamiltonianTermsAreGaugeInvariant) {
  ModelParams p;
  p.mass = 0.9;
  p.epsilon = cplx(0.4, 0.3);
  p.electric_weights = {{"I", 0.0}, {"p", 1.0}, {"2", 0.75}};
  const auto cat = make("D3");
  Model m(LatticeSpec(2, 1, false, false, true), p, cat);
  for (const auto& t : m.terms()) {
    const CMatrix h = oracle::dense(t.matrix);
    EXPECT_LT(oracle::max_abs(h - h.adjoint()), 1e-14) << t.name;
    for (int v = 0; v < 2; ++v)
      for (int g = 0; g < 6; ++g) {
        const CMatrix th = oracle::dense(m.gauss_operator(v, GroupElement::finite(g)));
        EXPECT_LT(oracle::max_abs(th * h - h * th), 1e-12) << t.name;
      }
  }
}

TEST(Model, OmittedConjugateBreaksHermiticity) {
  ModelParams p;
  p.omit_hermitian_conjugate = true;
  Model m(LatticeSpec(2, 1, false, false, true), p, make("SU2_trunc:J_max=1/2"));
  EXPECT_GT(hermiticity_residual(m.tunneling_term()), 0.1);
}

TEST(Model, VacuumIsInvariantAndElectricFree) {
  ModelParams p;
  p.electric_weights = {{"I", 0.0}, {"p", 1.0}, {"2", 0.75}};
  for (auto basis : {LinkBasis::Rep, LinkBasis::Group}) {
    Model m(LatticeSpec(2, 1, false, false, true), p, make("D3"), basis);
    const CVector vac = m.vacuum();
    EXPECT_NEAR(vac.norm(), 1.0, 1e-14);
    for (int v = 0; v < 2; ++v)
      for (int g = 0; g < 6; ++g)
        EXPECT_LT((oracle::dense(m.gauss_operator(v, GroupElement::finite(g))) * vac - vac).norm(), 1e-12);
    EXPECT_NEAR(expectation(m.electric_term(), vac).real(), 0.0, 1e-14);
  }
}

TEST(Model, PhysicalProjectorRankMatchesClosedLoops) {
  auto p = only("magnetic");
  Model m(LatticeSpec(2, 2, true, true, false), p, make("Z_2"), LinkBasis::Rep);
  const CMatrix proj = oracle::dense(m.physical_projector());
  EXPECT_LT(oracle::max_abs(proj * proj - proj), 1e-10);
  // Oracle: Z_2 flux assignments with even flux through every vertex.
  const auto& lat = m.lattice();
  int loops = 0;
  for (int mask = 0; mask < (1 << lat.num_links()); ++mask) {
    bool ok = true;
    for (int v = 0; v < lat.num_vertices() && ok; ++v) {
      int flux = 0;
      for (int l : lat.outgoing(v)) flux += (mask >> l) & 1;
      for (int l : lat.incoming(v)) flux += (mask >> l) & 1;
      ok = flux % 2 == 0;
    }
    loops += ok;
  }
  EXPECT_EQ(loops, 32);
  EXPECT_NEAR(proj.trace().real(), loops, 1e-9);
}

TEST(Model, DefaultElectricWeights) {
  EXPECT_EQ(default_electric_weights(build_from_reference("Z_4")), (std::vector<double>{0, 1, 4, 1}));
  const auto su2 = default_electric_weights(build_from_reference("SU2_trunc:J_max=1"));
  EXPECT_NEAR(su2[1], 0.75, 1e-15);
  EXPECT_NEAR(su2[2], 2.0, 1e-15);
  EXPECT_THROW(default_electric_weights(build_from_reference("D3")), Error);
}
