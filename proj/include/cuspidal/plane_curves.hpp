#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "order_tools.hpp"
#include "radical.hpp"

namespace cuspidal {

template <class T>
struct PlaneCurve {
  Jet1<T> x, y;
  int trunc() const { return std::min(x.trunc(), y.trunc()); }
};

template <class T>
struct Multiplicity {
  int m;
  Jet1<T> rho_x, rho_y;  // gamma' = t^{m-1} rho
};

template <class T>
Multiplicity<T> multiplicity(const PlaneCurve<T>& g) {
  Jet1<T> dx = g.x.derivative(), dy = g.y.derivative();
  int k = std::min(dx.leading_index(), dy.leading_index());
  if (k > std::min(dx.trunc(), dy.trunc()))
    throw Inconclusive("multiplicity >= " + std::to_string(k + 1) + " (derivative vanishes to truncation)");
  return {k + 1, dx.shift_down(k), dy.shift_down(k)};
}

struct CurveNormalizeOptions {
  // for even m, flip t so that the first nonzero odd-degree coefficient is positive
  bool canonical_even_sign = false;
};

// Normal form (s^m/m!, sum_j value_j s^j/j!) with value_j = R_j * G^{-(m+j)/(2m)},
// G = |gamma^{(m)}(0)|^2 and s = G^{1/(2m)} sigma(t).
template <class T>
struct CurveNormalForm {
  int m = 0;
  std::optional<int> n;
  int valid = 0;  // last degree of the normal form that is determined
  T gx{0}, gy{0}, G{0};
  std::array<std::array<double, 2>, 2> rotation{};
  int orientation = 1;
  Jet1<T> sigma;        // sigma as a series in t
  Jet1<T> t_of_sigma;   // inverse reparametrisation
  std::vector<T> R;     // R_j = j! [sigma^j] (second component before scaling)
  double zero_scale = 1.0;

  bool coefficient_zero(int j) const { return Scalar<T>::is_zero(R[static_cast<std::size_t>(j)], zero_scale); }

  Radical<T> value(int j) const {
    return Radical<T>(R[static_cast<std::size_t>(j)], {{G, Exponent(-(m + j), 2 * m)}});
  }

  Radical<T> r() const {
    if (!n) throw PreconditionViolated("curve is not of (m,n)-type within truncation");
    return value(*n);
  }

  // (i, beta_{m,im}) for 2 <= i, im < n (or up to the valid degree)
  std::vector<std::pair<int, Radical<T>>> biases() const {
    std::vector<std::pair<int, Radical<T>>> out;
    int top = n ? *n - 1 : valid;
    for (int i = 2; i * m <= top; ++i) out.emplace_back(i, value(i * m));
    return out;
  }

  // second component as a float series in s
  Jet1<double> second_component() const {
    Jet1<double> y(valid);
    for (int j = 0; j <= valid; ++j) y[j] = value(j).to_double() / static_cast<double>(factorial<double>(j));
    return y;
  }

  // residual b with y = sum beta s^{im}/(im)! + s^n b(s)/n!
  Jet1<double> residual() const {
    if (!n) throw PreconditionViolated("curve is not of (m,n)-type within truncation");
    Jet1<double> b(valid - *n);
    for (int k = 0; k <= valid - *n; ++k)
      b[k] = value(*n + k).to_double() * factorial<double>(*n) / factorial<double>(*n + k);
    return b;
  }
};

template <class T>
CurveNormalForm<T> curve_normal_form(const PlaneCurve<T>& g, CurveNormalizeOptions opt = {}) {
  CurveNormalForm<T> nf;
  auto mult = multiplicity(g);
  int m = mult.m, N = g.trunc();
  nf.m = m;
  T mf = factorial<T>(m);
  nf.gx = g.x[m] * mf;
  nf.gy = g.y[m] * mf;
  nf.G = nf.gx * nf.gx + nf.gy * nf.gy;
  double norm = std::sqrt(Scalar<T>::to_double(nf.G));
  double cx = Scalar<T>::to_double(nf.gx) / norm, cy = Scalar<T>::to_double(nf.gy) / norm;
  nf.rotation = {{{cx, cy}, {-cy, cx}}};

  // |g| times the rotation keeps everything rational
  Jet1<T> X = g.x.truncated(N) * nf.gx + g.y.truncated(N) * nf.gy;
  Jet1<T> Y = g.y.truncated(N) * nf.gx - g.x.truncated(N) * nf.gy;
  Jet1<T> U = X.shift_down(m);
  Jet1<T> W = pow_unit(U * (T(1) / U[0]), Exponent(1, m));
  nf.sigma = W.shift_up(1);
  nf.t_of_sigma = reversion(nf.sigma);
  Jet1<T> Ys = compose(Y, nf.t_of_sigma);
  nf.valid = Ys.trunc();
  nf.zero_scale = Ys.scale();
  nf.R.assign(static_cast<std::size_t>(nf.valid) + 1, T(0));
  for (int j = 0; j <= nf.valid; ++j) nf.R[static_cast<std::size_t>(j)] = Ys[j] * factorial<T>(j);

  if (opt.canonical_even_sign && m % 2 == 0) {
    for (int j = 1; j <= nf.valid; j += 2) {
      if (nf.coefficient_zero(j)) continue;
      if (Scalar<T>::sign(nf.R[static_cast<std::size_t>(j)]) < 0) {
        Jet1<T> flip = -Jet1<T>::variable(N);
        auto res = curve_normal_form(PlaneCurve<T>{compose(g.x, flip), compose(g.y, flip)}, CurveNormalizeOptions{});
        res.orientation = -1;
        return res;
      }
      break;
    }
  }

  for (int j = m + 1; j <= nf.valid; ++j)
    if (j % m != 0 && !nf.coefficient_zero(j)) {
      nf.n = j;
      break;
    }
  return nf;
}

template <class T>
std::pair<int, std::optional<int>> mn_type(const PlaneCurve<T>& g) {
  auto nf = curve_normal_form(g);
  return {nf.m, nf.n};
}

template <class T>
struct CuspidalCurvature {
  int m;
  int n;
  Radical<T> r;
  std::vector<std::pair<int, Radical<T>>> biases;
};

template <class T>
CuspidalCurvature<T> cuspidal_curvature(const PlaneCurve<T>& g) {
  auto nf = curve_normal_form(g);
  if (!nf.n)
    throw Inconclusive("m=" + std::to_string(nf.m) + ", n undetermined (>= " + std::to_string(nf.valid + 1) + ")");
  return {nf.m, *nf.n, nf.r(), nf.biases()};
}

// r_{m,m+1} = det(g^{(m)}, g^{(m+1)}) / |g^{(m)}| / |g^{(m)}|^{(m+1)/m}, derivatives at 0
template <class T>
Radical<T> r_closed_form_general(const PlaneCurve<T>& g) {
  int m = multiplicity(g).m;
  T mf = factorial<T>(m), m1f = factorial<T>(m + 1);
  T ax = g.x[m] * mf, ay = g.y[m] * mf, bx = g.x.coeff(m + 1) * m1f, by = g.y.coeff(m + 1) * m1f;
  T G = ax * ax + ay * ay;
  return Radical<T>(ax * by - ay * bx, {{G, Exponent(-(2 * m + 1), 2 * m)}});
}

// value = num / (den * a3^{a3_power})
template <class T>
struct OracleTerm {
  T num{0}, den{1};
  Exponent a3_power{0};
  T a3{1};
  double to_double() const {
    return Scalar<T>::to_double(num) /
           (Scalar<T>::to_double(den) *
            std::pow(Scalar<T>::to_double(a3), static_cast<double>(a3_power.numerator()) / a3_power.denominator()));
  }
};

template <class T>
struct OracleM3 {
  std::array<T, 11> a{}, b{};  // tilde coefficients, index 3..10
  std::optional<OracleTerm<T>> r34, r35, beta36, r37, r38, beta39, r310;
  std::vector<std::string> refused;
};

// closed forms for multiplicity 3, with a_i = g3.g^{(i)}/|g3|, b_i = det(g3, g^{(i)})/|g3|
// (derivative values, which is the normalisation the normal form (s^3/3!, ...) uses)
template <class T>
OracleM3<T> closed_form_oracle_m3(const PlaneCurve<T>& g) {
  if (multiplicity(g).m != 3) throw PreconditionViolated("oracle requires multiplicity 3");
  if (g.trunc() < 10) throw PreconditionViolated("oracle requires truncation >= 10");
  OracleM3<T> o;
  T g3x = g.x[3] * factorial<T>(3), g3y = g.y[3] * factorial<T>(3);
  T G = g3x * g3x + g3y * g3y;
  std::optional<T> len;
  if constexpr (Scalar<T>::exact) {
    len = Scalar<T>::root(G, 2);
    if (!len) throw NeedsFloat("|gamma'''(0)| is irrational");
  } else {
    len = std::sqrt(G);
  }
  for (int i = 3; i <= 10; ++i) {
    T dx = g.x[i] * factorial<T>(i), dy = g.y[i] * factorial<T>(i);
    o.a[static_cast<std::size_t>(i)] = (g3x * dx + g3y * dy) / *len;
    o.b[static_cast<std::size_t>(i)] = (g3x * dy - g3y * dx) / *len;
  }
  const auto& A = o.a;
  const auto& B = o.b;
  T a3 = A[3], a4 = A[4], a5 = A[5], a6 = A[6], a7 = A[7];
  T b4 = B[4], b5 = B[5], b6 = B[6], b7 = B[7], b8 = B[8], b9 = B[9], b10 = B[10];
  double sc = 1.0;
  for (int i = 3; i <= 10; ++i) sc = std::max({sc, Scalar<T>::magnitude(A[i]), Scalar<T>::magnitude(B[i])});
  auto zero = [&](const T& x, double s) { return Scalar<T>::is_zero(x, s); };
  auto same = [&](const T& x, const T& y) {
    return Scalar<T>::is_zero(x - y, std::max({1.0, Scalar<T>::magnitude(x), Scalar<T>::magnitude(y)}));
  };
  auto term = [&](T num, T den, Exponent p) { return OracleTerm<T>{num, den, p, a3}; };
  auto I = [](long k) { return Scalar<T>::from_int(k); };

  o.r34 = term(b4, I(1), Exponent(4, 3));
  if (!zero(b4, sc)) {
    o.refused.push_back("r35: b4 != 0");
    return o;
  }
  o.r35 = term(b5, I(1), Exponent(5, 3));
  if (!zero(b5, sc)) {
    o.refused.push_back("beta36, r37: b5 != 0");
    return o;
  }
  o.beta36 = term(b6, I(1), Exponent(2));
  T n37 = I(-7) * a4 * b6 + I(2) * a3 * b7;
  o.r37 = term(n37, I(2), Exponent(10, 3));
  if (!same(b7, I(7) * a4 * b6 / (I(2) * a3))) {
    o.refused.push_back("r38: r37 != 0");
    return o;
  }
  T n38 = I(-35) * a4 * a4 * b6 + I(2) * a3 * (I(-28) * a5 * b6 + I(5) * a3 * b8);
  o.r38 = term(n38, I(10), Exponent(14, 3));
  if (!same(b8, I(7) * (I(5) * a4 * a4 + I(8) * a3 * a5) * b6 / (I(10) * a3 * a3))) {
    o.refused.push_back("beta39, r310: r38 != 0");
    return o;
  }
  T n39 = -(I(63) * a4 * a5 * b6 + I(42) * a3 * a6 * b6 - I(5) * a3 * a3 * b9);
  o.beta39 = term(n39, I(5), Exponent(5));
  T n310 = I(10) * a3 * a3 * a3 * b10 + I(945) * a4 * a4 * a5 * b6 -
           I(42) * a3 * (I(3) * a5 * a5 - I(10) * a4 * a6) * b6 -
           I(15) * a3 * a3 * (I(8) * a7 * b6 + I(5) * a4 * b9);
  o.r310 = term(n310, I(10), Exponent(19, 3));
  return o;
}

enum class BiasBehavior { CrossesAxis, SameSide, CuspSameSide, CuspCrosses };

inline std::string to_string(BiasBehavior b) {
  switch (b) {
    case BiasBehavior::CrossesAxis: return "crosses-axis";
    case BiasBehavior::SameSide: return "same-side";
    case BiasBehavior::CuspSameSide: return "cusp-same-side";
    case BiasBehavior::CuspCrosses: return "cusp-crosses";
  }
  return "";
}

struct BiasReport {
  BiasBehavior label;
  int parity_case;          // 1: m,n odd; 2: m odd, n even; 3: m even, n odd
  std::optional<int> k;     // index of the first nonzero bias
  bool numeric_agrees;
};

template <class T>
BiasReport bias_behavior(const PlaneCurve<T>& g) {
  auto nf = curve_normal_form(g);
  if (!nf.n) throw Inconclusive("n undetermined within truncation");
  int m = nf.m, n = *nf.n;
  if (m % 2 == 0 && n % 2 == 0) throw PreconditionViolated("m and n both even: excluded case");
  BiasReport rep{};
  rep.parity_case = m % 2 == 1 ? (n % 2 == 1 ? 1 : 2) : 3;
  int lead = n;
  for (auto& [i, beta] : nf.biases())
    if (!beta.is_zero()) {
      rep.k = i;
      lead = i * m;
      break;
    }
  bool crosses = lead % 2 == 1;
  if (m % 2 == 0)
    rep.label = crosses ? BiasBehavior::CuspCrosses : BiasBehavior::CuspSameSide;
  else
    rep.label = crosses ? BiasBehavior::CrossesAxis : BiasBehavior::SameSide;

  Jet1<double> y = nf.second_component();
  rep.numeric_agrees = true;
  for (int j = 4; j <= 10; ++j) {
    double s = std::ldexp(1.0, -j);
    double yp = y.eval(s), ym = y.eval(-s);
    bool observed = (yp > 0) != (ym > 0);
    if (yp == 0.0 || ym == 0.0 || observed != crosses) rep.numeric_agrees = false;
  }
  return rep;
}

template <class T>
struct NormalizedPlaneCurvature {
  int k;
  Jet1<T> s_tilde;        // 1/k-arc-length parameter as a series in t
  Jet1<T> t_of_s;         // inverse
  Jet1<T> kappa_tilde;    // in the 1/k-arc-length parameter
  Jet1<T> kappa1;         // det(e, e') in the same parameter
  Jet1<T> speed_residual; // |rho|^2 - k^2 after reparametrisation
};

template <class T>
NormalizedPlaneCurvature<T> normalized_plane_curvature(const PlaneCurve<T>& g) {
  auto mult = multiplicity(g);
  int k = mult.m;
  const Jet1<T>& rx = mult.rho_x;
  const Jet1<T>& ry = mult.rho_y;
  Jet1<T> rho2 = rx * rx + ry * ry;
  Jet1<T> rho_len = pow_unit(rho2, Exponent(1, 2));
  Jet1<T> P(rho_len.trunc());
  for (int j = 0; j <= P.trunc(); ++j) P[j] = rho_len[j] / Scalar<T>::from_int(k + j);
  NormalizedPlaneCurvature<T> out;
  out.k = k;
  out.s_tilde = pow_unit(P, Exponent(1, k)).shift_up(1);
  out.t_of_s = reversion(out.s_tilde);
  Jet1<T> detr = rx * ry.derivative() - ry * rx.derivative();
  Jet1<T> kt = pow_unit(P, Exponent(k - 1, k)) * detr * pow_unit(rho2, Exponent(-3, 2));
  out.kappa_tilde = compose(kt, out.t_of_s);

  PlaneCurve<T> h{compose(g.x, out.t_of_s), compose(g.y, out.t_of_s)};
  Jet1<T> hx = h.x.derivative().shift_down(k - 1), hy = h.y.derivative().shift_down(k - 1);
  T kk = Scalar<T>::from_int(k);
  out.speed_residual = hx * hx + hy * hy - Jet1<T>::constant(kk * kk, hx.trunc());
  out.kappa1 = (hx * hy.derivative() - hy * hx.derivative()) * (T(1) / (kk * kk));
  return out;
}

}  // namespace cuspidal
