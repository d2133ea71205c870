#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edge_model.hpp"

namespace cuspidal {

template <class T>
Jet1<double> pow_jet(const Jet1<T>& f, Exponent e) {
  return pow_unit(to_double(f), e);
}

// omega_{m,m+i} = |xi f|^{(m+i)/m} det(xi f, eta^m f, eta^{m+i} f) / |xi f x eta^m f|^{(2m+i)/m} along v = 0
template <class T>
struct OmegaJet {
  int m = 0, i = 0;
  Jet1<T> det_minor, fu_norm2, cross_norm2;

  Exponent fu_power() const { return Exponent(m + i, 2 * m); }
  Exponent cross_power() const { return Exponent(-(2 * m + i), 2 * m); }

  Radical<T> at_zero() const {
    return Radical<T>(det_minor[0], {{fu_norm2[0], fu_power()}, {cross_norm2[0], cross_power()}});
  }

  Jet1<double> float_jet() const {
    return to_double(det_minor) * pow_jet(fu_norm2, fu_power()) * pow_jet(cross_norm2, cross_power());
  }
};

template <class T>
OmegaJet<T> omega(const SurfaceGerm<T>& f, const VectorField<T>& xi, const VectorField<T>& eta, int m, int i) {
  if (i < 1 || i > m) throw PreconditionViolated("omega_{m,m+i} is defined for 1 <= i <= m only");
  if (m + i > trunc_of(f)) throw PreconditionViolated("truncation too small for omega_{m,m+i}");
  std::vector<CurveJet3<T>> powers;
  MapJet3<T> cur = f;
  for (int k = 0; k <= m + i; ++k) {
    powers.push_back(restrict_v0(cur));
    if (k < m + i) cur = apply(eta, cur);
  }
  CurveJet3<T> xf = restrict_v0(apply(xi, f));
  const auto& em = powers[static_cast<std::size_t>(m)];
  for (int j = 1; j < i; ++j)
    if (!det(xf, em, powers[static_cast<std::size_t>(m + j)]).is_zero())
      throw PreconditionViolated("omega_{m,m+" + std::to_string(j) + "} does not vanish along S(f)");
  OmegaJet<T> w;
  w.m = m;
  w.i = i;
  w.det_minor = det(xf, em, powers[static_cast<std::size_t>(m + i)]);
  w.fu_norm2 = norm2(xf);
  w.cross_norm2 = norm2(cross(xf, em));
  return w;
}

template <class T>
OmegaJet<T> omega(const SurfaceGerm<T>& f, int m, int i) {
  int N = trunc_of(f);
  return omega(f, VectorField<T>::d_u(N), VectorField<T>::d_v(N), m, i);
}

template <class T>
bool is_front(const SurfaceGerm<T>& f, int m) {
  auto w = omega(f, m, 1);
  return !Scalar<T>::is_zero(w.det_minor[0], w.det_minor.scale());
}

template <class T>
struct EdgeCurvatures {
  Jet1<double> kappa_s, kappa_nu;
  Jet1<T> kappa_t;
  Radical<T> kappa_s0, kappa_nu0;
};

// cuspidal torsion with general adapted fields
template <class T>
Jet1<T> cuspidal_torsion(const SurfaceGerm<T>& f, const VectorField<T>& xi, const VectorField<T>& eta, int m) {
  MapJet3<T> xf = apply(xi, f), em = apply(eta, f, m);
  CurveJet3<T> a = restrict_v0(xf), b = restrict_v0(em), c = restrict_v0(apply(xi, em)),
               d = restrict_v0(apply(xi, xf));
  Jet1<T> cr = norm2(cross(a, b));
  Jet1<T> inv_cr = invert_unit(cr);
  return det(a, b, c) * inv_cr - det(a, b, d) * dot(a, b) * invert_unit(norm2(a)) * inv_cr;
}

// singular, normal curvature and cuspidal torsion along mu(t) = (t, 0); delta is the orientation sign of (mu', eta)
template <class T>
EdgeCurvatures<T> edge_curvatures(const SurfaceGerm<T>& f, int m, int delta = 1) {
  EdgeCurvatures<T> k;
  CurveJet3<T> d1 = restrict_v0(du(f)), d2 = restrict_v0(du(f, 2)), vm = restrict_v0(dv(f, m));
  CurveJet3<T> nh = cross(d1, vm);
  Jet1<T> n1 = norm2(d1), nn = norm2(nh);
  Jet1<T> ds = det(d1, d2, nh), dn = dot(d2, nh);
  k.kappa_s = to_double(ds) * pow_jet(n1, Exponent(-3, 2)) * pow_jet(nn, Exponent(-1, 2)) * static_cast<double>(delta);
  k.kappa_nu = to_double(dn) * pow_jet(n1, Exponent(-1)) * pow_jet(nn, Exponent(-1, 2));
  k.kappa_s0 = Radical<T>(ds[0] * Scalar<T>::from_int(delta), {{n1[0], Exponent(-3, 2)}, {nn[0], Exponent(-1, 2)}});
  k.kappa_nu0 = Radical<T>(dn[0], {{n1[0], Exponent(-1)}, {nn[0], Exponent(-1, 2)}});
  int N = trunc_of(f);
  k.kappa_t = cuspidal_torsion(f, VectorField<T>::d_u(N), VectorField<T>::d_v(N), m);
  return k;
}

template <class T>
struct FundamentalForms {
  int m = 0;
  Jet2<T> E, F, G, L, M, N;
  MapJet3<T> psi, nu_hat;
  Jet2<T> w;  // v^{m-1}/(m-1)!, so that f_v = w psi

  Jet2<T> discriminant() const { return E * G - F * F; }
};

template <class T>
FundamentalForms<T> fundamental_forms(const SurfaceGerm<T>& f, int m) {
  FundamentalForms<T> ff;
  ff.m = m;
  ff.psi = psi_factor(f, m);
  auto fu = du(f);
  ff.nu_hat = cross(fu, ff.psi);
  auto nu_u = du(ff.nu_hat), nu_v = dv(ff.nu_hat);
  ff.E = dot(fu, fu);
  ff.F = dot(fu, ff.psi);
  ff.G = dot(ff.psi, ff.psi);
  ff.L = -dot(fu, nu_u);
  ff.M = -dot(ff.psi, nu_u);
  ff.N = -dot(ff.psi, nu_v);
  ff.w = Jet2<T>::monomial(0, m - 1, T(1) / factorial<T>(m - 1), trunc_of(f));
  if (Scalar<T>::sign(ff.E(0, 0)) <= 0) throw PreconditionViolated("E vanishes at 0");
  if (Scalar<T>::is_zero(ff.discriminant()(0, 0), ff.discriminant().scale()))
    throw PreconditionViolated("EG - F^2 vanishes at 0");
  return ff;
}

struct NuCheck {
  double derivative_residual = 0;  // lemma expressions against direct differentiation
  double orthogonality = 0;        // |<nu_u, nu>| + |<nu_v, nu>|
};

template <class T>
NuCheck check_nu_derivatives(const SurfaceGerm<T>& f, int m) {
  auto ff = fundamental_forms(f, m);
  auto D = [](const Jet2<T>& a) { return to_double(a); };
  MapJet3<double> fu = {{D(du(f)[0]), D(du(f)[1]), D(du(f)[2])}};
  MapJet3<double> psi = {{D(ff.psi[0]), D(ff.psi[1]), D(ff.psi[2])}};
  MapJet3<double> nh = {{D(ff.nu_hat[0]), D(ff.nu_hat[1]), D(ff.nu_hat[2])}};
  Jet2<double> inv_len = pow_unit(norm2(nh), Exponent(-1, 2));
  MapJet3<double> nu = nh * inv_len;
  MapJet3<double> nu_u = du(nu), nu_v = dv(nu);
  Jet2<double> E = D(ff.E), F = D(ff.F), G = D(ff.G), L = D(ff.L), M = D(ff.M), N = D(ff.N), w = D(ff.w);
  Jet2<double> c = invert_unit(E * G - F * F) * inv_len;
  MapJet3<double> lu = -(fu * ((G * L - F * M) * c) + psi * ((E * M - F * L) * c));
  MapJet3<double> lv = -(fu * ((w * G * M - F * N) * c) + psi * ((E * N - w * F * M) * c));
  auto maxabs = [](const MapJet3<double>& a) {
    double r = 0;
    for (int k = 0; k < 3; ++k)
      for (int d = 0; d <= a[k].trunc(); ++d)
        for (int j = 0; j <= d; ++j) r = std::max(r, std::fabs(a[k](d - j, j)));
    return r;
  };
  auto scalar_max = [](const Jet2<double>& a) {
    double r = 0;
    for (int d = 0; d <= a.trunc(); ++d)
      for (int j = 0; j <= d; ++j) r = std::max(r, std::fabs(a(d - j, j)));
    return r;
  };
  NuCheck r;
  r.derivative_residual = std::max(maxabs(lu - nu_u), maxabs(lv - nu_v));
  r.orthogonality = scalar_max(dot(nu_u, nu)) + scalar_max(dot(nu_v, nu));
  return r;
}

// det(f_u, f_{v^m}, f_{v^{m+1}}) - m N along v = 0
template <class T>
Jet1<T> normal_curvature_identity_residual(const SurfaceGerm<T>& f, int m) {
  auto ff = fundamental_forms(f, m);
  CurveJet3<T> a = restrict_v0(du(f)), b = restrict_v0(dv(f, m)), c = restrict_v0(dv(f, m + 1));
  return det(a, b, c) - ff.N.restrict_v0() * Scalar<T>::from_int(m);
}

struct GaussMeanOrders {
  OrderValue ordK, ordH;
  std::optional<Exponent> predicted_K, predicted_H;
  std::vector<double> K_leading, H_leading;  // lowest homogeneous part of the numerators, coefficient of u^{d-j} v^j at j
  bool K_agrees = true, H_agrees = true;
};

template <class T>
std::vector<double> lowest_part(const Jet2<T>& a, double factor) {
  int d = a.leading_degree();
  std::vector<double> r;
  if (d > a.trunc()) return r;
  for (int j = 0; j <= d; ++j) r.push_back(Scalar<T>::to_double(a(d - j, j)) * factor);
  return r;
}

// K = (LN - w M^2) / (w |nu|^2 (EG - F^2)), H = (EN - 2wFM + wGL) / (2 w |nu| (EG - F^2))
template <class T>
GaussMeanOrders gauss_mean_orders(const SurfaceGerm<T>& f, int m, std::optional<int> r = std::nullopt,
                                  std::optional<bool> kappa_nu_nonzero = std::nullopt) {
  auto ff = fundamental_forms(f, m);
  Jet2<T> nn = norm2(ff.nu_hat), disc = ff.discriminant();
  Jet2<T> Knum = ff.L * ff.N - ff.w * ff.M * ff.M;
  Jet2<T> Hnum = ff.E * ff.N - ff.w * ff.F * ff.M * T(2) + ff.w * ff.G * ff.L;
  OrderFactor w{OrderValue{Exponent(m - 1), true}, Exponent(1)};
  OrderFactor nu2{order(nn), Exponent(1)}, nu1{order(nn), Exponent(1, 2)}, dd{order(disc), Exponent(1)};
  GaussMeanOrders g;
  g.ordK = rational_order(order(Knum), {w, nu2, dd});
  g.ordH = rational_order(order(Hnum), {w, nu1, dd});
  double n0 = Scalar<T>::to_double(nn(0, 0)), d0 = Scalar<T>::to_double(disc(0, 0));
  double wf = factorial<double>(m - 1);
  g.K_leading = lowest_part(Knum, wf / (n0 * d0));
  g.H_leading = lowest_part(Hnum, wf / (2.0 * std::sqrt(n0) * d0));
  if (r) {
    g.predicted_H = Exponent(*r - 2 * m);
    g.H_agrees = g.ordH.exact ? g.ordH.value == *g.predicted_H : g.ordH.value <= *g.predicted_H;
    if (kappa_nu_nonzero.value_or(false)) {
      g.predicted_K = Exponent(*r - 2 * m);
      g.K_agrees = g.ordK.exact ? g.ordK.value == *g.predicted_K : g.ordK.value <= *g.predicted_K;
    }
  }
  return g;
}

// the section of the normal form by the plane x = 0, as a plane curve (y, z) in v
template <class T>
PlaneCurve<double> slice_curve(const SurfaceNormalForm<T>& nf) {
  int N = nf.valid();
  PlaneCurve<double> c{Jet1<double>::monomial(nf.m, 1.0 / factorial<double>(nf.m), N), Jet1<double>(N)};
  for (int j = 0; j <= N; ++j) c.y[j] = nf.z_coeff(0, j).to_double();
  return c;
}

template <class T>
struct InvariantReport {
  int m = 0;
  std::map<int, OmegaJet<T>> omega;
  std::optional<Radical<T>> beta_2m;
  EdgeCurvatures<T> curvatures;
  std::optional<GaussMeanOrders> orders;
  bool is_front = false;
};

template <class T>
InvariantReport<T> invariant_report(const EdgeClassification<T>& c) {
  InvariantReport<T> rep;
  const auto& f = c.adapted.f;
  rep.m = c.m;
  for (int i = 1; i <= c.m && c.m + i <= trunc_of(f); ++i) {
    auto w = omega(f, c.m, i);
    rep.omega.emplace(i, w);
    if (!w.det_minor.is_zero()) break;
  }
  if (auto it = rep.omega.find(c.m); it != rep.omega.end()) rep.beta_2m = it->second.at_zero();
  rep.curvatures = edge_curvatures(f, c.m);
  rep.is_front = c.is_front;
  if (c.r) rep.orders = gauss_mean_orders(f, c.m, c.r, !rep.curvatures.kappa_nu0.is_zero());
  return rep;
}

}  // namespace cuspidal
