#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "edge_invariants.hpp"

namespace cuspidal {

// (u, u^2 a(u)/2 + v^m/m!, u^2 b0(u)/2 + v^m bm(u,v)/m!) with bm(0,0) = 0
template <class T>
struct NormalFormEdge {
  int m = 2;
  Jet1<T> a, b0;
  Jet2<T> bm;

  SurfaceGerm<T> germ(int N) const {
    Jet2<T> U = Jet2<T>::u_var(N);
    Jet2<T> u2 = U * U * (T(1) / T(2));
    Jet2<T> vm = Jet2<T>::monomial(0, m, T(1) / factorial<T>(m), N);
    Jet2<T> bmN(N);
    for (int d = 0; d <= std::min(N, bm.trunc()); ++d)
      for (int j = 0; j <= d; ++j) bmN(d - j, j) = bm(d - j, j);
    return {{U, u2 * from_u_series(a, N) + vm, u2 * from_u_series(b0, N) + vm * bmN}};
  }
};

template <class T>
SurfaceGerm<T> flip_v(const SurfaceGerm<T>& f) {
  int N = trunc_of(f);
  return substitute(f, Jet2<T>::u_var(N), -Jet2<T>::v_var(N));
}

template <class T>
struct EdgeDataAtOrigin {
  T kappa_s{0}, kappa_nu{0}, kappa_t{0}, omega{0};
};

template <class T>
EdgeDataAtOrigin<T> edge_data_at_origin(const SurfaceGerm<T>& f, int m) {
  int N = std::min(trunc_of(f), m + 3);
  SurfaceGerm<T> g{{f[0].truncated(N), f[1].truncated(N), f[2].truncated(N)}};
  auto k = edge_curvatures(g, m);
  EdgeDataAtOrigin<T> d;
  d.kappa_s = k.kappa_s0.value();
  d.kappa_nu = k.kappa_nu0.value();
  d.kappa_t = k.kappa_t[0];
  d.omega = omega(g, m, 1).at_zero().value();
  return d;
}

// source curve rewritten as (t^l c(t), t) in normal-form coordinates
template <class T>
struct CurveThroughEdge {
  int m = 0, l = 0;
  SurfaceGerm<T> f;
  Jet1<T> x, y, c;
  T K2{0}, K1{0};  // derivatives of order l-2 and l-1 of the source curvature at 0
  bool reversed = false;
};

template <class T>
CurveThroughEdge<T> contact_data(const SurfaceGerm<T>& f, int m, const Jet1<T>& gx, const Jet1<T>& gy) {
  Vec3<T> w = value_at_origin(dv(f, m));
  if (!Scalar<T>::is_zero(w[0], 1.0) || !Scalar<T>::is_zero(w[2], 1.0))
    throw PreconditionViolated("surface is not in normal form");
  if (!Scalar<T>::is_zero(gx[0], gx.scale()) || !Scalar<T>::is_zero(gy[0], gy.scale()))
    throw DomainError("curve does not pass through the origin");
  bool dx = !Scalar<T>::is_zero(gx.coeff(1), gx.scale()), dy = !Scalar<T>::is_zero(gy.coeff(1), gy.scale());
  if (!dx && !dy) throw PreconditionViolated("curve is not regular at 0");
  if (dx) throw PreconditionViolated("curve is not tangent to the null direction");
  CurveThroughEdge<T> r;
  r.m = m;
  r.f = f;
  Jet1<T> x = gx, y = gy;
  if (Scalar<T>::sign(gy[1]) < 0) {
    Jet1<T> minus_t = Jet1<T>::monomial(1, T(-1), gy.trunc());
    x = compose(gx, minus_t.truncated(gx.trunc()));
    y = compose(gy, minus_t);
    r.reversed = true;
  }
  Jet1<T> tinv = reversion(y);
  r.x = compose(x, tinv.truncated(x.trunc()));
  r.y = Jet1<T>::variable(r.x.trunc());
  r.l = r.x.leading_index();
  if (r.l > r.x.trunc()) throw Inconclusive("order of contact l >= " + std::to_string(r.x.trunc() + 1));
  r.c = r.x.shift_down(r.l);
  r.K2 = -factorial<T>(r.l) * r.c[0];
  r.K1 = -factorial<T>(r.l + 1) * r.c.coeff(1);
  return r;
}

template <class T>
struct SpaceCurveJets {
  int k = 0;
  CurveJet3<T> gamma_hat, d1, d2, nu2, dnu2;
};

template <class T>
SpaceCurveJets<T> space_curve(const CurveThroughEdge<T>& c) {
  SpaceCurveJets<T> s;
  s.gamma_hat = compose_curve(c.f, c.x, c.y);
  s.d1 = derivative(s.gamma_hat);
  s.d2 = derivative(s.d1);
  MapJet3<T> fu = du(c.f), psi = psi_factor(c.f, c.m);
  int n = std::min(psi[0].trunc(), c.x.trunc());
  Jet1<T> x = c.x.truncated(n), y = c.y.truncated(n);
  s.nu2 = cross(compose_curve(fu, x, y), compose_curve(psi, x, y));
  s.dnu2 = derivative(s.nu2);
  int k = std::min({s.d1[0].leading_index(), s.d1[1].leading_index(), s.d1[2].leading_index()});
  if (k > s.d1[0].trunc()) throw Inconclusive("multiplicity of the space curve exceeds truncation");
  s.k = k + 1;
  return s;
}

struct LaurentInvariant {
  OrderValue ord;
  double leading_right = 0, leading_left = 0;
  Jet1<double> smooth;  // the invariant times t^{-ord} for t > 0
};

struct CurveOrders {
  int k = 0;
  LaurentInvariant kappa_g, kappa_n, tau_g;
};

namespace detail {

template <class T>
LaurentInvariant laurent(const Jet1<T>& num, const Jet1<T>& speed2, Exponent speed_power, const Jet1<T>& nu2,
                         Exponent nu_power, int k, bool abs_speed) {
  LaurentInvariant r;
  OrderValue on = order(num), os = order(speed2);
  r.ord = rational_order(on, {{os, speed_power}, {order(nu2), nu_power}});
  int p = num.leading_index();
  if (p > num.trunc()) {
    r.smooth = Jet1<double>(0);
    return r;
  }
  Jet1<double> rho2 = to_double(speed2).shift_down(2 * (k - 1));
  int n = std::min({num.trunc() - p, rho2.trunc(), nu2.trunc()});
  r.smooth = (to_double(num).shift_down(p).truncated(n) * pow_unit(rho2.truncated(n), -speed_power) *
              pow_unit(to_double(nu2).truncated(n), -nu_power));
  r.leading_right = r.smooth[0];
  long o = r.ord.value.numerator();
  double sign = (o % 2 == 0) ? 1.0 : -1.0;
  if (abs_speed && (k - 1) % 2 == 1) sign = -sign;
  r.leading_left = sign * r.smooth[0];
  return r;
}

}  // namespace detail

template <class T>
CurveOrders kg_kn_tg(const SpaceCurveJets<T>& s) {
  CurveOrders o;
  o.k = s.k;
  Jet1<T> sp = norm2(s.d1), nn = norm2(s.nu2);
  o.kappa_g = detail::laurent(det(s.d1, s.d2, s.nu2), sp, Exponent(3, 2), nn, Exponent(1, 2), s.k, true);
  o.kappa_n = detail::laurent(dot(s.d2, s.nu2), sp, Exponent(1), nn, Exponent(1, 2), s.k, false);
  o.tau_g = detail::laurent(det(s.d1, s.nu2, s.dnu2), sp, Exponent(1), nn, Exponent(1), s.k, false);
  return o;
}

template <class T>
struct OrderPrediction {
  std::string invariant;
  Exponent bound{0};
  bool exact = false;             // order equals bound with no condition
  std::optional<T> condition;     // otherwise: order == bound iff condition != 0
  std::string condition_text;
  bool open_question = false;     // claim made without a stated genericity condition

  std::string str() const { return (exact ? "" : ">=") + exponent_str(bound); }
};

template <class T>
std::array<OrderPrediction<T>, 3> predict_orders(int m, int l, const EdgeDataAtOrigin<T>& e, const T& K2, const T& K1) {
  OrderPrediction<T> g{"kappa_g"}, n{"kappa_n"}, t{"tau_g"};
  auto F = [](int x) { return factorial<T>(x); };
  if (l >= m) {
    if (l > m && l <= 2 * m) {
      g.bound = Exponent(l - 2 * m);
      g.exact = true;
    } else if (l > 2 * m) {
      g.bound = Exponent(1);
      if (l == 2 * m + 1) {
        g.condition = F(l - 1) * e.kappa_t * e.omega - F(m) * F(m + 1) * K2;
        g.condition_text = "(l-1)! kt w - m!(m+1)! K2";
      } else {
        g.condition = e.kappa_t * e.omega;
        g.condition_text = "kt w";
      }
    } else {
      g.bound = Exponent(1 - m);
      g.condition = K1;
      g.condition_text = "K1";
    }
    n.bound = Exponent(1 - m);
    n.condition = e.omega;
    n.condition_text = "w";
    if (l < 2 * m) {
      t.bound = Exponent(l - 2 * m + 1);
      if (l < 2 * m - 1) {
        t.condition = e.omega;
        t.condition_text = "w";
      } else {
        T f2 = F(m - 1) * F(m - 1);
        t.condition = Scalar<T>::from_int(m) * F(l - 1) * e.kappa_t + f2 * K2 * e.omega;
        t.condition_text = "m (l-1)! kt + (m-1)!^2 K2 w";
      }
    } else {
      t.bound = Exponent(0);
      t.condition = e.kappa_t;
      t.condition_text = "kt";
    }
  } else if (2 * l > m) {
    g.bound = Exponent(m - 2 * l);
    g.exact = true;
    g.open_question = true;
    n.bound = Exponent(m - 2 * l + 1);
    if (2 * l > m + 1) {
      n.condition = e.omega;
      n.condition_text = "w";
    } else {
      n.condition = F(m + 1) * Scalar<T>::from_int(m - l + 1) * e.kappa_nu * K2 * K2 + T(2) * F(l) * F(l) * e.omega;
      n.condition_text = "(m+1)!(m-l+1) kn K2^2 + 2 l!^2 w";
    }
    t.bound = Exponent(1 - l);
    t.condition = e.omega;
    t.condition_text = "w";
  } else {
    g.bound = Exponent(0);
    if (2 * l < m) {
      g.condition = e.kappa_s;
      g.condition_text = "ks";
    } else {
      g.condition = F(m) * e.kappa_s * K2 * K2 + T(2) * F(l) * F(l);
      g.condition_text = "m! ks K2^2 + 2 l!^2";
    }
    n.bound = Exponent(0);
    n.condition = e.kappa_nu;
    n.condition_text = "kn";
    t.bound = Exponent(1 - l);
    t.condition = e.omega;
    t.condition_text = "w";
  }
  return {g, n, t};
}

enum class Verdict { Agree, Disagree, Inconclusive, Open };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "true";
    case Verdict::Disagree: return "false";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Open: return "open";
  }
  return "";
}

template <class T>
Verdict judge(const OrderPrediction<T>& p, const OrderValue& computed) {
  bool generic = p.exact || !Scalar<T>::is_zero(*p.condition, 1.0);
  Verdict v;
  if (generic) {
    if (!computed.exact) return Verdict::Inconclusive;
    v = computed.value == p.bound ? Verdict::Agree : Verdict::Disagree;
  } else {
    if (computed.value > p.bound) return Verdict::Agree;
    v = computed.exact ? Verdict::Disagree : Verdict::Inconclusive;
  }
  if (v == Verdict::Disagree && p.open_question) return Verdict::Open;
  return v;
}

struct VerifyRow {
  std::string invariant, predicted, condition_value, computed;
  Verdict verdict = Verdict::Agree;
};

struct VerifyReport {
  int m = 0, l = 0, k = 0;
  std::vector<VerifyRow> rows;
  std::vector<VerifyRow> flipped_rows;  // the (u,-v) reading when m is even

  Verdict overall() const {
    Verdict r = Verdict::Agree;
    for (const auto* rs : {&rows, &flipped_rows})
      for (const auto& row : *rs) {
        if (row.verdict == Verdict::Disagree) return Verdict::Disagree;
        if (row.verdict == Verdict::Inconclusive) r = Verdict::Inconclusive;
      }
    return r;
  }
};

template <class T>
struct OrderCheck {
  CurveThroughEdge<T> curve;
  EdgeDataAtOrigin<T> data;
  CurveOrders computed;
  std::array<OrderPrediction<T>, 3> predicted;
  std::array<Verdict, 3> verdicts;
};

template <class T>
OrderCheck<T> check_orders(const SurfaceGerm<T>& f, int m, const Jet1<T>& gx, const Jet1<T>& gy) {
  OrderCheck<T> r;
  r.curve = contact_data(f, m, gx, gy);
  r.data = edge_data_at_origin(f, m);
  r.computed = kg_kn_tg(space_curve(r.curve));
  r.predicted = predict_orders(m, r.curve.l, r.data, r.curve.K2, r.curve.K1);
  const LaurentInvariant* c[3] = {&r.computed.kappa_g, &r.computed.kappa_n, &r.computed.tau_g};
  for (int i = 0; i < 3; ++i) r.verdicts[static_cast<std::size_t>(i)] = judge(r.predicted[static_cast<std::size_t>(i)], c[i]->ord);
  return r;
}

template <class T>
std::vector<VerifyRow> rows_of(const OrderCheck<T>& oc) {
  std::vector<VerifyRow> rows;
  const LaurentInvariant* c[3] = {&oc.computed.kappa_g, &oc.computed.kappa_n, &oc.computed.tau_g};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& p = oc.predicted[i];
    rows.push_back({p.invariant, p.str(), p.condition ? Scalar<T>::str(*p.condition) : "", c[i]->ord.str(), oc.verdicts[i]});
  }
  return rows;
}

template <class T>
VerifyReport verify_orders(const SurfaceGerm<T>& f, int m, const Jet1<T>& gx, const Jet1<T>& gy) {
  VerifyReport rep;
  auto oc = check_orders(f, m, gx, gy);
  rep.m = m;
  rep.l = oc.curve.l;
  rep.k = oc.computed.k;
  rep.rows = rows_of(oc);
  if (m % 2 == 0) {
    auto alt = check_orders(flip_v(f), m, gx, -gy);
    rep.flipped_rows = rows_of(alt);
    for (std::size_t i = 0; i < 3; ++i)
      if (!(alt.computed.kappa_g.ord == oc.computed.kappa_g.ord) || !(alt.computed.kappa_n.ord == oc.computed.kappa_n.ord) ||
          !(alt.computed.tau_g.ord == oc.computed.tau_g.ord))
        rep.flipped_rows[i].verdict = Verdict::Disagree;
  }
  return rep;
}

template <class T>
T eval_exact(const Jet1<T>& f, const T& t) {
  T r(0);
  for (int i = f.trunc(); i >= 0; --i) r = r * t + f[i];
  return r;
}

template <class T>
Vec3<T> eval_exact(const CurveJet3<T>& g, const T& t) {
  return {{eval_exact(g[0], t), eval_exact(g[1], t), eval_exact(g[2], t)}};
}

struct PointValues {
  double kappa_g = 0, kappa_n = 0, tau_g = 0;
};

// the three invariants at a regular parameter t != 0; numerators are formed in T before rounding
template <class T>
PointValues evaluate_at(const SpaceCurveJets<T>& s, const T& t) {
  Vec3<T> d1 = eval_exact(s.d1, t), d2 = eval_exact(s.d2, t), n = eval_exact(s.nu2, t), dn = eval_exact(s.dnu2, t);
  double sp2 = Scalar<T>::to_double(norm2(d1)), nn2 = Scalar<T>::to_double(norm2(n));
  PointValues p;
  p.kappa_g = Scalar<T>::to_double(det(d1, d2, n)) / (std::pow(sp2, 1.5) * std::sqrt(nn2));
  p.kappa_n = Scalar<T>::to_double(dot(d2, n)) / (sp2 * std::sqrt(nn2));
  p.tau_g = Scalar<T>::to_double(det(d1, n, dn)) / (sp2 * nn2);
  return p;
}

// 1/k-arc-length data and normalized invariants, float
struct NormalizedCurve {
  int k = 0;
  Jet1<double> s_tilde, t_of_s;
  CurveJet3<double> rho, nu;  // in the s-tilde parameter: gamma_hat' = s^{k-1} rho
  Jet1<double> kappa_g, kappa_n, tau_g;
  double speed_residual = 0;  // max | |rho(s)| - k | / k over s = +-0.005 i, i = 1..10
  PointValues lemma_at_zero;  // closed forms at t = 0
};

template <class T>
NormalizedCurve normalized_kg_kn_tg(const SpaceCurveJets<T>& s) {
  NormalizedCurve r;
  int k = r.k = s.k;
  CurveJet3<double> d1{{to_double(s.d1[0]), to_double(s.d1[1]), to_double(s.d1[2])}};
  CurveJet3<double> g{{to_double(s.gamma_hat[0]), to_double(s.gamma_hat[1]), to_double(s.gamma_hat[2])}};
  CurveJet3<double> nu2{{to_double(s.nu2[0]), to_double(s.nu2[1]), to_double(s.nu2[2])}};
  CurveJet3<double> rb{{d1[0].shift_down(k - 1), d1[1].shift_down(k - 1), d1[2].shift_down(k - 1)}};
  Jet1<double> len = pow_unit(norm2(rb), Exponent(1, 2));
  Jet1<double> P(len.trunc());
  for (int j = 0; j <= len.trunc(); ++j) P[j] = len[j] / (k + j);
  r.s_tilde = pow_unit(P, Exponent(1, k)).shift_up(1);
  r.t_of_s = reversion(r.s_tilde);
  CurveJet3<double> G = compose(g, r.t_of_s.truncated(g[0].trunc()));
  CurveJet3<double> dG = derivative(G);
  r.rho = {{dG[0].shift_down(k - 1), dG[1].shift_down(k - 1), dG[2].shift_down(k - 1)}};
  CurveJet3<double> n2 = compose(nu2, r.t_of_s.truncated(nu2[0].trunc()));
  r.nu = n2 * pow_unit(norm2(n2), Exponent(-1, 2));
  Jet1<double> rr = norm2(r.rho);
  for (int i = -10; i <= 10; ++i)
    if (i != 0) r.speed_residual = std::max(r.speed_residual, std::fabs(std::sqrt(rr.eval(0.005 * i)) - k) / k);
  CurveJet3<double> drho = derivative(r.rho), dnu = derivative(r.nu);
  r.kappa_g = det(r.rho, drho, r.nu) * pow_unit(rr, Exponent(-3, 2));
  r.kappa_n = dot(drho, r.nu) * pow_unit(rr, Exponent(-1));
  r.tau_g = det(r.rho, r.nu, dnu) * pow_unit(rr, Exponent(-1));

  // closed forms from the k-th and (k+1)-th derivatives at 0
  auto deriv_at0 = [&](int order) {
    Vec3<double> v;
    for (int i = 0; i < 3; ++i) v[i] = g[i].coeff(order) * factorial<double>(order);
    return v;
  };
  Vec3<double> gk = deriv_at0(k), gk1 = deriv_at0(k + 1);
  Jet1<double> inv = pow_unit(norm2(nu2), Exponent(-1, 2));
  CurveJet3<double> nu_t = nu2 * inv;
  CurveJet3<double> dnu_t = derivative(nu_t);
  Vec3<double> n0 = value_at_zero(nu_t), dn0 = value_at_zero(dnu_t);
  double ng = std::sqrt(dot(gk, gk)), c = std::pow(factorial<double>(k), 1.0 / k);
  r.lemma_at_zero.kappa_g = c / (k * k) * det(gk, gk1, n0) / std::pow(ng, 2.0 + 1.0 / k);
  r.lemma_at_zero.kappa_n = c / (k * k) * dot(gk1, n0) / std::pow(ng, 1.0 + 1.0 / k);
  r.lemma_at_zero.tau_g = c / k * det(gk, n0, dn0) / std::pow(ng, 1.0 + 1.0 / k);
  return r;
}

// frame scalars of {e, b, nu} in the s-tilde parameter, at parameter s
inline PointValues frame_curvatures(const NormalizedCurve& n, double s) {
  auto ev = [&](const CurveJet3<double>& v) { return Vec3<double>{{v[0].eval(s), v[1].eval(s), v[2].eval(s)}}; };
  Jet1<double> inv = pow_unit(norm2(n.rho), Exponent(-1, 2));
  CurveJet3<double> e = n.rho * inv;
  Vec3<double> ev_e = ev(e), de = ev(derivative(e)), nu = ev(n.nu), dnu = ev(derivative(n.nu));
  Vec3<double> b = -cross(ev_e, nu);
  return {dot(de, b), dot(de, nu), -dot(dnu, b)};
}

// |s~|^{k-1} times the invariants, from direct evaluation at t
template <class T>
PointValues normalized_at(const SpaceCurveJets<T>& s, const NormalizedCurve& n, const T& t) {
  PointValues p = evaluate_at(s, t);
  double st = n.s_tilde.eval(Scalar<T>::to_double(t));
  double w = std::pow(std::fabs(st), n.k - 1), ws = std::pow(st, n.k - 1);
  return {w * p.kappa_g, ws * p.kappa_n, ws * p.tau_g};
}

// rows (t, kappa_g, kappa_n, tau_g) for t = +-range*i/count, i = 1..count
template <class T>
std::vector<std::array<double, 4>> sample_graphs(const SpaceCurveJets<T>& s, double range, int count) {
  std::vector<std::array<double, 4>> rows;
  for (int i = -count; i <= count; ++i) {
    if (i == 0) continue;
    T t = Scalar<T>::from_frac(i, count) * Scalar<T>::from_double(range);
    auto p = evaluate_at(s, t);
    rows.push_back({Scalar<T>::to_double(t), p.kappa_g, p.kappa_n, p.tau_g});
  }
  return rows;
}

}  // namespace cuspidal
