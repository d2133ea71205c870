#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <cuspidal/cuspidal.hpp>

#include "generators.hpp"

using namespace cuspidal;
using Q = Rational;

namespace {

const int N = 12;

Jet2<Q> M(int i, int j, Q c, int n = N) { return Jet2<Q>::monomial(i, j, c, n); }
Jet2<Q> U(int n = N) { return Jet2<Q>::u_var(n); }
Jet2<Q> V(int n = N) { return Jet2<Q>::v_var(n); }

SurfaceGerm<Q> cuspidal_edge(int n = N) { return {{U(n), M(0, 2, 1, n), M(0, 3, 1, n)}}; }

double at0(const OmegaJet<Q>& w) { return w.at_zero().to_double(); }

// alternative adapted pair: xi = mu d_u + v c d_v, eta = lam (v^{m-1} a d_u + d_v)
std::pair<VectorField<Q>, VectorField<Q>> random_fields(std::mt19937_64& rng, int m) {
  Jet2<Q> a(N), lam = Jet2<Q>::constant(gen::nonzero(rng, 1, 4), N), mu = Jet2<Q>::constant(gen::nonzero(rng, 1, 4), N);
  a(0, 0) = gen::nonzero(rng);
  a(1, 0) = gen::nonzero(rng);
  a(0, 1) = gen::nonzero(rng);
  lam(1, 0) = gen::nonzero(rng);
  lam(0, 1) = gen::nonzero(rng);
  mu(1, 0) = gen::nonzero(rng);
  mu(0, 1) = gen::nonzero(rng);
  return {VectorField<Q>{mu, V() * Q(gen::nonzero(rng))}, VectorField<Q>{a.mul_v(m - 1).truncated(N) * lam, lam}};
}

}  // namespace

TEST(Omega, CuspidalEdge) {
  auto w = omega(cuspidal_edge(), 2, 1);
  EXPECT_EQ(w.det_minor[0], 12);
  EXPECT_EQ(w.cross_norm2[0], 4);
  EXPECT_NEAR(at0(w), 3.0 / std::sqrt(2.0), 1e-14);
  EXPECT_FALSE(w.at_zero().exact());
}

TEST(Omega, NormalFormReadsOffVDerivative) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    int m = 2 + trial % 4;
    auto e = gen::normal_form_edge(rng, m);
    auto w = omega(e.germ(N), m, 1).at_zero();
    ASSERT_TRUE(w.exact());
    EXPECT_EQ(*w.exact(), Q(m + 1) * e.bm(0, 1));
  }
}

TEST(Omega, SecondCuspidalCurvatureIsB4) {
  SurfaceGerm<Q> f{{U(), M(0, 2, Q(1, 2)), M(0, 4, Q(1, 24))}};
  EXPECT_TRUE(omega(f, 2, 1).det_minor.is_zero());
  EXPECT_EQ(*omega(f, 2, 2).at_zero().exact(), 1);
  auto rep = invariant_report(classify(f));
  ASSERT_TRUE(rep.beta_2m);
  EXPECT_EQ(*rep.beta_2m->exact(), 1);
}

TEST(Omega, Refusals) {
  EXPECT_THROW(omega(cuspidal_edge(), 2, 3), PreconditionViolated);
  EXPECT_THROW(omega(cuspidal_edge(), 2, 2), PreconditionViolated);
  EXPECT_THROW(omega(cuspidal_edge(), 2, 0), PreconditionViolated);
}

TEST(Front, Examples) {
  EXPECT_TRUE(is_front(cuspidal_edge(), 2));
  EXPECT_FALSE(is_front(SurfaceGerm<Q>{{U(), M(0, 2, 1), M(0, 5, 1)}}, 2));
  std::mt19937_64 rng(32);
  auto e = gen::normal_form_edge(rng, 3);
  e.bm(0, 1) = 0;
  EXPECT_FALSE(is_front(e.germ(N), 3));
  e.bm(0, 1) = 2;
  EXPECT_TRUE(is_front(e.germ(N), 3));
}

TEST(Curvatures, NormalFormValues) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    int m = 2 + trial % 4;
    auto e = gen::normal_form_edge(rng, m);
    auto k = edge_curvatures(e.germ(N), m);
    EXPECT_EQ(k.kappa_s0.value(), e.a[0]);
    EXPECT_EQ(k.kappa_nu0.value(), e.b0[0]);
    EXPECT_EQ(k.kappa_t[0], e.bm(1, 0));
    EXPECT_NEAR(k.kappa_s[0], Scalar<Q>::to_double(e.a[0]), 1e-12);
    EXPECT_NEAR(k.kappa_nu[0], Scalar<Q>::to_double(e.b0[0]), 1e-12);
  }
}

TEST(Curvatures, Examples) {
  auto k = edge_curvatures(SurfaceGerm<Q>{{U(), U() * U() + M(0, 3, Q(1, 6)), M(0, 4, Q(1, 24))}}, 3);
  EXPECT_EQ(k.kappa_s0.value(), 2);
  auto t = edge_curvatures(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), M(1, 2, Q(1, 2))}}, 2);
  EXPECT_EQ(t.kappa_t[0], 1);
  EXPECT_TRUE(t.kappa_s0.is_zero());
  EXPECT_TRUE(t.kappa_nu0.is_zero());
}

TEST(FundamentalForms, Planar) {
  auto ff = fundamental_forms(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), Jet2<Q>(N)}}, 2);
  EXPECT_TRUE((ff.E - Jet2<Q>::constant(1, N)).is_zero());
  EXPECT_TRUE(ff.F.is_zero());
  EXPECT_TRUE((ff.G - Jet2<Q>::constant(1, N)).is_zero());
  EXPECT_TRUE(ff.L.is_zero());
  EXPECT_TRUE(ff.M.is_zero());
  EXPECT_TRUE(ff.N.is_zero());
}

TEST(FundamentalForms, NormalCurvatureIdentity) {
  EXPECT_NE(fundamental_forms(cuspidal_edge(), 2).N(0, 0), 0);
  EXPECT_TRUE(normal_curvature_identity_residual(cuspidal_edge(), 2).is_zero());
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    int m = 2 + trial % 4;
    EXPECT_TRUE(normal_curvature_identity_residual(gen::normal_form_edge(rng, m).germ(N), m).is_zero());
  }
}

TEST(FundamentalForms, NVanishesToOrderRMinusMMinusOne) {
  auto ff = fundamental_forms(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), M(0, 5, Q(1, 120))}}, 2);
  for (int d = 0; d <= ff.N.trunc(); ++d)
    for (int j = 0; j < std::min(2, d + 1); ++j) EXPECT_EQ(ff.N(d - j, j), 0);
  EXPECT_NE(ff.N(0, 2), 0);
}

TEST(FundamentalForms, UnitNormalDerivatives) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 6; ++trial) {
    int m = 2 + trial % 3;
    auto r = check_nu_derivatives(gen::normal_form_edge(rng, m).germ(8), m);
    EXPECT_LT(r.derivative_residual, 1e-10);
    EXPECT_LT(r.orthogonality, 1e-10);
  }
}

TEST(GaussMean, Examples) {
  auto g = gauss_mean_orders(cuspidal_edge(), 2, 3, false);
  EXPECT_TRUE(g.ordH.is(-1));
  EXPECT_TRUE(g.H_agrees);
  SurfaceGerm<Q> tilted{{U(), M(2, 0, Q(1, 2)) + M(0, 2, Q(1, 2)), M(0, 3, 1)}};
  EXPECT_TRUE(edge_curvatures(tilted, 2).kappa_nu0.is_zero());
  EXPECT_EQ(edge_curvatures(tilted, 2).kappa_s0.value(), 1);
  SurfaceGerm<Q> bent{{U(), M(0, 2, Q(1, 2)), M(2, 0, Q(1, 2)) + M(0, 3, 1)}};
  EXPECT_EQ(edge_curvatures(bent, 2).kappa_nu0.value(), 1);
  auto k = gauss_mean_orders(bent, 2, 3, true);
  EXPECT_TRUE(k.ordK.is(-1));
  EXPECT_TRUE(k.ordH.is(-1));
  EXPECT_TRUE(k.K_agrees);
  auto b = gauss_mean_orders(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), M(0, 4, Q(1, 24)) + M(0, 5, Q(1, 120))}}, 2, 4);
  EXPECT_TRUE(b.ordH.is(0));
  EXPECT_EQ(boundedness(b.ordH), Boundedness::Bounded);
  auto c = gauss_mean_orders(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), M(0, 5, Q(1, 120))}}, 2, 5);
  EXPECT_TRUE(c.ordH.is(1));
  EXPECT_EQ(boundedness(c.ordH), Boundedness::Continuous);
}

TEST(GaussMean, ReportThroughClassification) {
  auto rep = invariant_report(classify(cuspidal_edge()));
  ASSERT_TRUE(rep.orders);
  EXPECT_TRUE(rep.orders->ordH.is(-1));
  EXPECT_TRUE(rep.is_front);
}

TEST(Slice, MatchesCuspidalCurvature) {
  auto nf = classify(cuspidal_edge()).normal_form;
  auto s = slice_curve(nf);
  auto [m, n] = mn_type(s);
  EXPECT_EQ(m, 2);
  EXPECT_EQ(n, 3);
  EXPECT_NEAR(r_closed_form_general(s).to_double(), 3.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(cuspidal_curvature(s).r.to_double(), 3.0 / std::sqrt(2.0), 1e-12);
}

TEST(Slice, NormalFormSectionAndPlanarEdge) {
  std::mt19937_64 rng(36);
  for (int m = 2; m <= 4; ++m) {
    auto e = gen::normal_form_edge(rng, m);
    auto cl = classify(e.germ(N));
    auto s = slice_curve(cl.normal_form);
    EXPECT_NEAR(s.x[m], 1.0 / factorial<double>(m), 1e-14);
    for (int j = 0; j <= m; ++j) EXPECT_NEAR(s.y[j], 0.0, 1e-14);
    EXPECT_NEAR(s.y[m + 1], Scalar<Q>::to_double(e.bm(0, 1)) / factorial<double>(m), 1e-10);
    EXPECT_NEAR(cuspidal_curvature(s).r.to_double(), omega(e.germ(N), m, 1).at_zero().to_double(), 1e-9);
  }
  auto planar = classify(SurfaceGerm<Q>{{U(), M(0, 2, Q(1, 2)), Jet2<Q>(N)}});
  auto s = slice_curve(planar.normal_form);
  EXPECT_FALSE(mn_type(s).second);
}

TEST(Properties, OmegaIndependentOfAdaptedPair) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    int m = 2 + trial % 3;
    auto f = gen::normal_form_edge(rng, m).germ(N);
    auto [xi, eta] = random_fields(rng, m);
    double base = at0(omega(f, m, 1));
    EXPECT_NEAR(at0(omega(f, xi, eta, m, 1)), base, 1e-10 * std::max(1.0, std::fabs(base)));
    EXPECT_EQ(cuspidal_torsion(f, xi, eta, m)[0], edge_curvatures(f, m).kappa_t[0]);
  }
}

TEST(Properties, HigherOmegaIndependentBelowM) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = gen::normal_form_edge(rng, 3);
    for (int i = 0; i < e.bm.trunc(); ++i) e.bm(i, 1) = 0;
    e.bm(0, 2) = gen::nonzero(rng);
    auto f = e.germ(N);
    auto [xi, eta] = random_fields(rng, 3);
    double base = at0(omega(f, 3, 2));
    EXPECT_NEAR(base, 4.0 * 5.0 * Scalar<Q>::to_double(e.bm(0, 2)), 1e-10 * std::fabs(base));
    EXPECT_NEAR(at0(omega(f, xi, eta, 3, 2)), base, 1e-10 * std::fabs(base));
  }
}

TEST(Properties, IsometryInvariance) {
  std::mt19937_64 rng(39);
  Q c(5, 13), s(12, 13);
  for (int trial = 0; trial < 6; ++trial) {
    int m = 2 + trial % 3;
    auto e = gen::normal_form_edge(rng, m);
    e.b0[0] = gen::nonzero(rng);
    auto f = e.germ(N);
    SurfaceGerm<Q> g{{f[0] * c - f[2] * s, f[1], f[0] * s + f[2] * c}};
    auto kf = edge_curvatures(f, m), kg = edge_curvatures(g, m);
    EXPECT_EQ(kf.kappa_s0.value(), kg.kappa_s0.value());
    EXPECT_EQ(kf.kappa_nu0.value(), kg.kappa_nu0.value());
    EXPECT_TRUE((kf.kappa_t - kg.kappa_t).is_zero());
    EXPECT_EQ(*omega(f, m, 1).at_zero().exact(), *omega(g, m, 1).at_zero().exact());
    auto of = gauss_mean_orders(f, m), og = gauss_mean_orders(g, m);
    EXPECT_EQ(of.ordK, og.ordK);
    EXPECT_EQ(of.ordH, og.ordH);
  }
}

TEST(Properties, SignFlipForEvenM) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 8; ++trial) {
    int m = 2 + 2 * (trial % 2);
    auto f = gen::normal_form_edge(rng, m).germ(N);
    auto h = flip_v(f);
    auto kf = edge_curvatures(f, m), kh = edge_curvatures(h, m);
    EXPECT_EQ(*omega(h, m, 1).at_zero().exact(), -*omega(f, m, 1).at_zero().exact());
    EXPECT_EQ(kf.kappa_s0.value(), kh.kappa_s0.value());
    EXPECT_EQ(kf.kappa_t[0], kh.kappa_t[0]);
  }
}

TEST(Properties, GaussAndMeanOrdersCoincide) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    int m = 2 + trial % 3;
    auto e = gen::normal_form_edge(rng, m);
    e.b0[0] = gen::nonzero(rng);
    if (trial % 2) {
      for (int i = 0; i < e.bm.trunc(); ++i) e.bm(i, 1) = 0;
      e.bm(0, 2) = gen::nonzero(rng);
      e.bm(0, 3) = gen::nonzero(rng);
    }
    auto cl = classify(e.germ(N));
    ASSERT_TRUE(cl.r);
    if (*cl.r > 2 * m) continue;
    auto g = gauss_mean_orders(cl.adapted.f, m, cl.r, true);
    EXPECT_EQ(g.ordK, g.ordH);
    EXPECT_TRUE(g.ordK.is(*cl.r - 2 * m));
    EXPECT_TRUE(g.K_agrees && g.H_agrees);
  }
}
