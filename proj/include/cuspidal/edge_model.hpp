#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "order_tools.hpp"
#include "plane_curves.hpp"
#include "radical.hpp"
#include "vec3.hpp"

namespace cuspidal {

template <class T>
using SurfaceGerm = MapJet3<T>;

// a d/du + b d/dv
template <class T>
struct VectorField {
  Jet2<T> a, b;

  static VectorField d_u(int trunc) { return {Jet2<T>::constant(T(1), trunc), Jet2<T>(trunc)}; }
  static VectorField d_v(int trunc) { return {Jet2<T>(trunc), Jet2<T>::constant(T(1), trunc)}; }
};

template <class T>
Jet2<T> apply(const VectorField<T>& X, const Jet2<T>& F) {
  return X.a * F.du() + X.b * F.dv();
}

template <class T>
MapJet3<T> apply(const VectorField<T>& X, const MapJet3<T>& f) {
  return {{apply(X, f[0]), apply(X, f[1]), apply(X, f[2])}};
}

template <class T>
MapJet3<T> apply(const VectorField<T>& X, const MapJet3<T>& f, int times) {
  MapJet3<T> r = f;
  for (int i = 0; i < times; ++i) r = apply(X, r);
  return r;
}

template <class T>
Jet2<T> integral_v(const Jet2<T>& F) {
  Jet2<T> r(F.trunc() + 1);
  for (int d = 0; d <= F.trunc(); ++d)
    for (int j = 0; j <= d; ++j) r(d - j, j + 1) = F(d - j, j) / Scalar<T>::from_int(j + 1);
  return r;
}

// same coefficients with a larger nominal truncation (internal use in Newton steps)
template <class T>
Jet2<T> padded(const Jet2<T>& F, int trunc) {
  Jet2<T> r(trunc);
  for (int d = 0; d <= std::min(trunc, F.trunc()); ++d)
    for (int j = 0; j <= d; ++j) r(d - j, j) = F(d - j, j);
  return r;
}

template <class T>
Jet2<T> from_u_series(const Jet1<T>& a, int trunc) {
  Jet2<T> r(trunc);
  for (int i = 0; i <= std::min(trunc, a.trunc()); ++i) r(i, 0) = a[i];
  return r;
}

template <class T>
int trunc_of(const MapJet3<T>& f) {
  return std::min({f[0].trunc(), f[1].trunc(), f[2].trunc()});
}

template <class T>
bool is_zero(const CurveJet3<T>& g) {
  return g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
}

template <class T>
bool is_zero(const Vec3<T>& v) {
  double s = std::max({1.0, Scalar<T>::magnitude(v[0]), Scalar<T>::magnitude(v[1]), Scalar<T>::magnitude(v[2])});
  return Scalar<T>::is_zero(v[0], s) && Scalar<T>::is_zero(v[1], s) && Scalar<T>::is_zero(v[2], s);
}

// Adapted germ together with the source change that produced it: the original
// germ composed with (u_of, v_of) equals f.
template <class T>
struct AdaptedGerm {
  SurfaceGerm<T> f;
  Jet2<T> u_of, v_of;
  bool straightened = false;
};

namespace detail {

template <class T>
int first_nonzero_v_derivative(const SurfaceGerm<T>& f) {
  int N = trunc_of(f);
  for (int j = 1; j <= N; ++j) {
    Vec3<T> w = value_at_origin(dv(f, j));
    if (!is_zero(w)) return j;
  }
  throw Inconclusive("all v-derivatives vanish at 0 to truncation");
}

// solve g(u, a(u)) = 0 for a with a(0) = 0, assuming g_v(0,0) != 0
template <class T>
Jet1<T> solve_graph(const Jet2<T>& g) {
  int N = g.trunc();
  Jet2<T> gv = padded(g.dv(), N);
  if (Scalar<T>::is_zero(gv(0, 0))) throw DomainError("singular set is not a graph over u");
  Jet1<T> u = Jet1<T>::variable(N), a(N);
  for (int prec = 1; prec <= 2 * N + 2; prec *= 2) {
    Jet1<T> res = compose_curve(g, u, a), slope = compose_curve(gv, u, a);
    a = a - res * invert_unit(slope);
  }
  return a;
}

template <class T>
bool null_along_graph(const SurfaceGerm<T>& f, const Jet1<T>& a) {
  int N = trunc_of(f);
  auto fv = dv(f);
  Jet1<T> u = Jet1<T>::variable(N);
  for (int k = 0; k < 3; ++k)
    if (!compose_curve(fv[k], u, a.truncated(N)).is_zero()) return false;
  return true;
}

// compose an accumulated source change (u_of, v_of) with (p, q)
template <class T>
void chain(AdaptedGerm<T>& g, const Jet2<T>& p, const Jet2<T>& q) {
  g.f = substitute(g.f, p, q);
  g.u_of = substitute(g.u_of, p, q);
  g.v_of = substitute(g.v_of, p, q);
}

template <class T>
bool try_shift(AdaptedGerm<T>& g) {
  int j = first_nonzero_v_derivative(g.f);
  if (j < 2) return false;
  Vec3<T> w = value_at_origin(dv(g.f, j));
  auto d = dv(g.f, j - 1);
  Jet2<T> gfun = d[0] * w[0] + d[1] * w[1] + d[2] * w[2];
  Jet1<T> a = solve_graph(gfun);
  if (!null_along_graph(g.f, a)) return false;
  int N = trunc_of(g.f);
  Jet2<T> U = Jet2<T>::u_var(N), V = Jet2<T>::v_var(N);
  chain(g, U, V + from_u_series(a, N));
  return true;
}

}  // namespace detail

template <class T>
AdaptedGerm<T> adapt(const SurfaceGerm<T>& raw) {
  int N = trunc_of(raw);
  for (int k = 0; k < 3; ++k)
    if (!Scalar<T>::is_zero(raw[k](0, 0), raw[k].scale())) throw DomainError("germ does not map 0 to 0");
  AdaptedGerm<T> g{raw, Jet2<T>::u_var(N), Jet2<T>::v_var(N)};
  Vec3<T> fu = value_at_origin(du(raw)), fv = value_at_origin(dv(raw));
  bool fu0 = is_zero(fu), fv0 = is_zero(fv);
  if (fu0 && fv0) throw DomainError("rank df_0 = 0");
  if (!fu0 && !fv0 && !is_zero(cross(fu, fv))) throw DomainError("rank df_0 = 2: not a singular point");
  Jet2<T> U = Jet2<T>::u_var(N), V = Jet2<T>::v_var(N);
  if (fu0) {
    detail::chain(g, -V, U);  // kernel along d/du: rotate the source by a quarter turn
  } else if (!fv0) {
    T c = dot(fv, fu) / dot(fu, fu);
    detail::chain(g, U - V * c, V);
  }
  if (detail::try_shift(g)) return g;

  // null field d/dv - <f_u,f_v>/|f_u|^2 d/du, straightened by integrating its flow
  auto fu_j = du(g.f);
  auto fv_j = dv(g.f);
  Jet2<T> h = -(dot(fu_j, fv_j) * invert_unit(norm2(fu_j)));
  Jet2<T> phi = U;
  for (int it = 0; it <= N; ++it) phi = U + integral_v(substitute(h, phi, V)).truncated(N);
  detail::chain(g, phi, V);
  g.straightened = true;
  if (!detail::try_shift(g)) throw DomainError("could not adapt: singular set not a graph or null field not integrable");
  return g;
}

template <class T>
struct Criteria {
  bool adapted = false;
  bool c1 = false, c2 = false;
  std::optional<bool> c3, c4;  // criteria route only when n < 2m
  CurveJet3<T> cross_minor;    // (xi f x eta^m f) along v = 0
  std::vector<Jet1<T>> det_minors;  // det(xi f, eta^m f, eta^i f) along v = 0, i = m+1..n
};

template <class T>
Criteria<T> check_criteria(const SurfaceGerm<T>& f, const VectorField<T>& xi, const VectorField<T>& eta, int m,
                           std::optional<int> n = std::nullopt) {
  if (m < 2) throw PreconditionViolated("m must be at least 2");
  int top = n ? *n : m;
  if (top > trunc_of(f)) throw PreconditionViolated("order exceeds truncation");
  Criteria<T> c;
  std::vector<CurveJet3<T>> powers;  // eta^i f along v = 0
  MapJet3<T> cur = f;
  for (int i = 0; i <= top; ++i) {
    powers.push_back(restrict_v0(cur));
    if (i < top) cur = apply(eta, cur);
  }
  CurveJet3<T> xf = restrict_v0(apply(xi, f));
  c.adapted = is_zero(powers[1]);
  c.c1 = true;
  for (int i = 2; i <= m - 1; ++i)
    if (!is_zero(powers[static_cast<std::size_t>(i)])) c.c1 = false;
  c.cross_minor = cross(xf, powers[static_cast<std::size_t>(m)]);
  c.c2 = !is_zero(value_at_zero(c.cross_minor));
  if (n && *n < 2 * m) {
    c.c3 = true;
    for (int i = m + 1; i <= *n; ++i) {
      Jet1<T> d = det(xf, powers[static_cast<std::size_t>(m)], powers[static_cast<std::size_t>(i)]);
      c.det_minors.push_back(d);
      if (i < *n && !d.is_zero()) c.c3 = false;
      if (i == *n) c.c4 = !Scalar<T>::is_zero(d[0], d.scale());
    }
  }
  return c;
}

template <class T>
Criteria<T> check_criteria(const SurfaceGerm<T>& f, int m, std::optional<int> n = std::nullopt) {
  int N = trunc_of(f);
  return check_criteria(f, VectorField<T>::d_u(N), VectorField<T>::d_v(N), m, n);
}

template <class T>
MapJet3<T> psi_factor(const SurfaceGerm<T>& f, int m) {
  auto fv = dv(f);
  T c = factorial<T>(m - 1);
  return {{fv[0].div_v(m - 1) * c, fv[1].div_v(m - 1) * c, fv[2].div_v(m - 1) * c}};
}

struct SurfaceNormalizeOptions {
  bool flip_v = false;  // use (u, -v) instead of the positively oriented system
};

// Normal form (U, U^2 a(U)/2 + V^m/m!, U^2 b0(U)/2 + V^m bm(U,V)/m!) stored through exact scaled data:
// U = U'/sqrt(N1), V = kappa V' with kappa = K^{1/m} N2^{-1/(2m)}, y = y'/sqrt(N2), z = z'/sqrt(N1 N2),
// where y'(U',V') = alpha(U') + Q0 V'^m and z' = zeta(U',V').
template <class T>
struct SurfaceNormalForm {
  int m = 0;
  T N1{1}, N2{1}, K{1}, Q0{1};
  Jet1<T> alpha;
  Jet2<T> zeta;
  MapJet3<T> scaled;     // (U', y', z') as jets in (U', V')
  Jet2<T> u_of, v_of;    // adapted coordinates in terms of (U', V')
  std::array<std::array<double, 3>, 3> rotation{};
  int orientation = 1;

  int valid() const { return zeta.trunc(); }

  Radical<T> a_coeff(int j) const {
    return Radical<T>(T(2) * alpha.coeff(j + 2), {{N1, Exponent(j + 2, 2)}, {N2, Exponent(-1, 2)}});
  }

  // coefficient of U^i V^j in the true third component
  Radical<T> z_coeff(int i, int j) const {
    return Radical<T>(zeta.coeff(i, j), {{N1, Exponent(i - 1, 2)},
                                         {N2, Exponent(j, 2 * m) - Exponent(1, 2)},
                                         {K, Exponent(-j, m)}});
  }
  Radical<T> b0_coeff(int j) const { return z_coeff(j + 2, 0) * T(2); }
  Radical<T> bm_coeff(int i, int j) const { return z_coeff(i, j + m) * factorial<T>(m); }

  bool column_zero(int j) const { return zeta.column(j).is_zero(); }
  bool column_zero_at_origin(int j) const { return Scalar<T>::is_zero(zeta.coeff(0, j), zeta.scale()); }

  Jet1<double> a_float() const {
    Jet1<double> r(std::max(alpha.trunc() - 2, 0));
    for (int j = 0; j <= r.trunc(); ++j) r[j] = a_coeff(j).to_double();
    return r;
  }
  Jet1<double> b0_float() const {
    Jet1<double> r(std::max(zeta.trunc() - 2, 0));
    for (int j = 0; j <= r.trunc(); ++j) r[j] = b0_coeff(j).to_double();
    return r;
  }
  Jet2<double> bm_float() const {
    Jet2<double> r(std::max(zeta.trunc() - m, 0));
    for (int d = 0; d <= r.trunc(); ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = bm_coeff(d - j, j).to_double();
    return r;
  }

  // the normal form germ itself, in float
  SurfaceGerm<double> germ_float() const {
    int N = zeta.trunc();
    SurfaceGerm<double> g{{Jet2<double>::u_var(N), Jet2<double>(N), Jet2<double>(N)}};
    for (int i = 2; i <= std::min(N, alpha.trunc()); ++i) g[1](i, 0) = a_coeff(i - 2).to_double() / 2.0;
    g[1](0, m) = 1.0 / factorial<double>(m);
    for (int d = 0; d <= N; ++d)
      for (int j = 0; j <= d; ++j) g[2](d - j, j) = z_coeff(d - j, j).to_double();
    return g;
  }
};

template <class T>
SurfaceNormalForm<T> surface_normal_form(const SurfaceGerm<T>& f, int m, SurfaceNormalizeOptions opt = {}) {
  int N = trunc_of(f);
  SurfaceNormalForm<T> nf;
  nf.m = m;
  Vec3<T> e1 = value_at_origin(du(f)), w = value_at_origin(dv(f, m));
  Vec3<T> e2 = w * dot(e1, e1) - e1 * dot(w, e1);
  Vec3<T> e3 = cross(e1, e2);
  nf.N1 = dot(e1, e1);
  nf.N2 = dot(e2, e2);
  if (Scalar<T>::is_zero(nf.N2, Scalar<T>::magnitude(nf.N1) * Scalar<T>::magnitude(nf.N1) * Scalar<T>::magnitude(dot(w, w))))
    throw PreconditionViolated("f_u and f_{v^m} are parallel at 0");
  std::array<const Vec3<T>*, 3> rows{&e1, &e2, &e3};
  for (int r = 0; r < 3; ++r) {
    double len = std::sqrt(Scalar<T>::to_double(dot(*rows[r], *rows[r])));
    for (int k = 0; k < 3; ++k) nf.rotation[r][k] = Scalar<T>::to_double((*rows[r])[k]) / len;
  }
  auto comb = [&](const Vec3<T>& e) { return f[0] * e[0] + f[1] * e[1] + f[2] * e[2]; };
  Jet2<T> xs = comb(e1), ys = comb(e2), zs = comb(e3);

  Jet2<T> U = Jet2<T>::u_var(N), V = Jet2<T>::v_var(N);
  // u = Phi(U', w) with x'(Phi, w) = U'
  Jet2<T> xu = padded(xs.du(), N);
  Jet2<T> Phi = U * (T(1) / xu(0, 0));
  for (int prec = 1; prec <= 2 * N + 2; prec *= 2)
    Phi = Phi - (substitute(xs, Phi, V) - U) * invert_unit(substitute(xu, Phi, V));
  Jet2<T> yt = substitute(ys, Phi, V), zt = substitute(zs, Phi, V);

  nf.alpha = yt.column(0);
  Jet2<T> rest = yt - from_u_series(nf.alpha, N);
  Jet2<T> Q = rest.div_v(m);
  nf.Q0 = Q(0, 0);
  if (Scalar<T>::sign(nf.Q0) <= 0) throw PreconditionViolated("degenerate v^m coefficient");
  nf.K = factorial<T>(m) * nf.Q0;
  Jet2<T> Vfun = pow_unit(Q * (T(1) / nf.Q0), Exponent(1, m)).mul_v(1);
  int M = Vfun.trunc();
  Jet2<T> Um = Jet2<T>::u_var(M), Vm = Jet2<T>::v_var(M);
  Jet2<T> Vw = padded(Vfun.dv(), M);
  Jet2<T> Psi = Vm;
  for (int prec = 1; prec <= 2 * M + 2; prec *= 2)
    Psi = Psi - (substitute(Vfun, Um, Psi) - Vm) * invert_unit(substitute(Vw, Um, Psi));
  if (opt.flip_v) {
    Psi = substitute(Psi, Um, -Vm);
    nf.orientation = -1;
  }
  nf.zeta = substitute(zt, Um, Psi);
  nf.scaled = {{Um, substitute(yt, Um, Psi), nf.zeta}};
  nf.v_of = Psi;
  nf.u_of = substitute(Phi, Um, Psi);
  return nf;
}

template <class T>
struct EdgeClassification {
  int m = 0;
  std::optional<int> n;
  bool n_undetermined = false;  // no admissible column within truncation
  bool is_frontal = true;
  bool is_front = false;
  std::optional<int> r;
  AdaptedGerm<T> adapted;
  SurfaceNormalForm<T> normal_form;
  Criteria<T> criteria;
  std::optional<bool> criteria_route_agrees;  // [2.3]/[2.4] cross-check when n < 2m

  std::string summary() const {
    std::string s = "m=" + std::to_string(m);
    if (n)
      s += " n=" + std::to_string(*n);
    else
      s += n_undetermined ? " n>=" + std::to_string(normal_form.valid() + 1) : " n=none";
    if (r) s += " r=" + std::to_string(*r);
    s += std::string(" front=") + (is_front ? "true" : "false");
    return s;
  }
};

template <class T>
EdgeClassification<T> classify_adapted(const AdaptedGerm<T>& g) {
  EdgeClassification<T> c;
  c.adapted = g;
  const auto& f = g.f;
  int N = trunc_of(f);
  int m = 0;
  for (int k = 2; k <= N; ++k) {
    auto cr = check_criteria(f, k);
    if (!cr.adapted || !cr.c1) throw DomainError("not an m-type edge: [2.1] fails at m=" + std::to_string(k));
    if (cr.c2) {
      m = k;
      c.criteria = cr;
      break;
    }
  }
  if (m == 0) throw Inconclusive("not m-type to degree " + std::to_string(N));
  c.m = m;
  c.normal_form = surface_normal_form(f, m);
  const auto& nf = c.normal_form;
  int top = nf.valid();
  for (int j = m + 1; j <= top; ++j) {
    if (j % m == 0 || nf.column_zero(j)) continue;
    if (!nf.column_zero_at_origin(j)) c.n = j;
    break;
  }
  if (!c.n) {
    c.n_undetermined = true;
    for (int j = m + 1; j <= top; ++j)
      if (j % m != 0 && !nf.column_zero(j)) c.n_undetermined = false;
  }
  c.is_front = m + 1 <= top && !nf.column_zero_at_origin(m + 1);
  if (c.n) {
    int r = *c.n;
    for (int i = 2; i * m < *c.n; ++i)
      if (!nf.column_zero_at_origin(i * m)) {
        r = i * m;
        break;
      }
    c.r = r;
    if (*c.n < 2 * m) {
      auto cr = check_criteria(f, m, c.n);
      c.criteria_route_agrees = cr.c1 && cr.c2 && cr.c3.value_or(false) && cr.c4.value_or(false);
    }
  }
  return c;
}

template <class T>
EdgeClassification<T> classify(const SurfaceGerm<T>& f) {
  return classify_adapted(adapt(f));
}

// post-compose with a polynomial target map given by its coefficients on monomials x^i y^j z^k
template <class T>
struct TargetPolynomial {
  struct Term {
    int i, j, k;
    Vec3<T> c;
  };
  std::vector<Term> terms;
};

template <class T>
SurfaceGerm<T> apply_target(const TargetPolynomial<T>& P, const SurfaceGerm<T>& f) {
  int N = trunc_of(f);
  auto pw = [&](const Jet2<T>& g, int e) {
    Jet2<T> r = Jet2<T>::constant(T(1), N);
    for (int i = 0; i < e; ++i) r = r * g;
    return r;
  };
  SurfaceGerm<T> out{{Jet2<T>(N), Jet2<T>(N), Jet2<T>(N)}};
  for (const auto& t : P.terms) {
    Jet2<T> mono = pw(f[0], t.i) * pw(f[1], t.j) * pw(f[2], t.k);
    for (int a = 0; a < 3; ++a) out[a] += mono * t.c[a];
  }
  return out;
}

}  // namespace cuspidal
