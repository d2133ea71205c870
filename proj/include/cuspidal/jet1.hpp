#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scalar.hpp"

namespace cuspidal {

// truncated power series sum_{i<=trunc} c_i t^i
template <class T>
class Jet1 {
 public:
  Jet1() : c_(1, T(0)) {}
  explicit Jet1(int trunc) : c_(static_cast<std::size_t>(trunc) + 1, T(0)) {}
  Jet1(int trunc, std::vector<T> coeffs) : c_(static_cast<std::size_t>(trunc) + 1, T(0)) {
    for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = coeffs[i];
  }

  static Jet1 constant(const T& a, int trunc) {
    Jet1 r(trunc);
    r.c_[0] = a;
    return r;
  }
  static Jet1 variable(int trunc) {
    Jet1 r(trunc);
    if (trunc >= 1) r.c_[1] = T(1);
    return r;
  }
  static Jet1 monomial(int k, const T& a, int trunc) {
    Jet1 r(trunc);
    if (k <= trunc) r.c_[k] = a;
    return r;
  }

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  T& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  T coeff(int i) const { return i >= 0 && i <= trunc() ? c_[static_cast<std::size_t>(i)] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  Jet1 truncated(int n) const {
    Jet1 r(std::min(n, trunc()));
    for (int i = 0; i <= r.trunc(); ++i) r[i] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  Jet1& operator+=(const Jet1& o) {
    if (o.trunc() < trunc()) c_.resize(static_cast<std::size_t>(o.trunc()) + 1);
    for (int i = 0; i <= trunc(); ++i) c_[static_cast<std::size_t>(i)] += o[i];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    if (o.trunc() < trunc()) c_.resize(static_cast<std::size_t>(o.trunc()) + 1);
    for (int i = 0; i <= trunc(); ++i) c_[static_cast<std::size_t>(i)] -= o[i];
    return *this;
  }
  Jet1& operator*=(const T& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator-(Jet1 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Jet1 operator*(Jet1 a, const T& s) { return a *= s; }
  friend Jet1 operator*(const T& s, Jet1 a) { return a *= s; }

  friend Jet1 operator*(const Jet1& a, const Jet1& b) {
    int n = std::min(a.trunc(), b.trunc());
    Jet1 r(n);
    for (int i = 0; i <= n; ++i) {
      if (Scalar<T>::exact && a[i] == T(0)) continue;
      for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }
  Jet1& operator*=(const Jet1& o) { return *this = *this * o; }

  // d/dt; valid degree drops by one
  Jet1 derivative() const {
    Jet1 r(std::max(trunc() - 1, 0));
    for (int i = 1; i <= trunc(); ++i) r[i - 1] = c_[static_cast<std::size_t>(i)] * Scalar<T>::from_int(i);
    return r;
  }

  // antiderivative vanishing at 0
  Jet1 integral() const {
    Jet1 r(trunc() + 1);
    for (int i = 0; i <= trunc(); ++i) r[i + 1] = c_[static_cast<std::size_t>(i)] / Scalar<T>::from_int(i + 1);
    return r;
  }

  // multiply by t^k
  Jet1 shift_up(int k) const {
    Jet1 r(trunc() + k);
    for (int i = 0; i <= trunc(); ++i) r[i + k] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  // divide by t^k; the first k coefficients must vanish
  Jet1 shift_down(int k) const {
    for (int i = 0; i < k && i <= trunc(); ++i)
      if (!Scalar<T>::is_zero(c_[static_cast<std::size_t>(i)], scale()))
        throw PreconditionViolated("jet not divisible by t^" + std::to_string(k));
    Jet1 r(std::max(trunc() - k, 0));
    for (int i = k; i <= trunc(); ++i) r[i - k] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  double scale() const {
    double m = 1.0;
    for (const auto& x : c_) m = std::max(m, Scalar<T>::magnitude(x));
    return m;
  }

  bool is_zero() const {
    double s = scale();
    return std::all_of(c_.begin(), c_.end(), [&](const T& x) { return Scalar<T>::is_zero(x, s); });
  }

  // first index with a nonzero coefficient, or trunc()+1
  int leading_index() const {
    double s = scale();
    for (int i = 0; i <= trunc(); ++i)
      if (!Scalar<T>::is_zero(c_[static_cast<std::size_t>(i)], s)) return i;
    return trunc() + 1;
  }

  double eval(double t) const {
    double r = 0;
    for (int i = trunc(); i >= 0; --i) r = r * t + Scalar<T>::to_double(c_[static_cast<std::size_t>(i)]);
    return r;
  }

  bool operator==(const Jet1& o) const { return c_ == o.c_; }

 private:
  std::vector<T> c_;
};

template <class T>
Jet1<double> to_double(const Jet1<T>& a) {
  Jet1<double> r(a.trunc());
  for (int i = 0; i <= a.trunc(); ++i) r[i] = Scalar<T>::to_double(a[i]);
  return r;
}

inline Jet1<double> to_double(const Jet1<double>& a) { return a; }

// f(g(t)) with g(0) = 0, by Horner
template <class T>
Jet1<T> compose(const Jet1<T>& f, const Jet1<T>& g) {
  if (!Scalar<T>::is_zero(g[0], g.scale())) throw DomainError("compose: inner series has nonzero constant term");
  int n = std::min(f.trunc(), g.trunc());
  Jet1<T> gg = g.truncated(n);
  Jet1<T> r = Jet1<T>::constant(f[f.trunc()], n);
  for (int i = f.trunc() - 1; i >= 0; --i) {
    r = r * gg;
    r[0] += f[i];
  }
  return r;
}

template <class T>
Jet1<T> invert_unit(const Jet1<T>& f) {
  if (Scalar<T>::is_zero(f[0])) throw NotInvertible("series with zero constant term");
  int n = f.trunc();
  Jet1<T> g(n);
  T inv0 = T(1) / f[0];
  g[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    T s(0);
    for (int j = 1; j <= k; ++j) s += f[j] * g[k - j];
    g[k] = -s * inv0;
  }
  return g;
}

// f^e for a unit f; the constant term's root must exist in T
template <class T>
Jet1<T> pow_unit(const Jet1<T>& f, Exponent e) {
  if (Scalar<T>::is_zero(f[0])) throw NotUnit("pow of a series with zero constant term");
  if (!Scalar<T>::exact && f[0] < T(0) && e.denominator() % 2 == 0)
    throw DomainError("even root of a series with negative constant term");
  if (Scalar<T>::exact && Scalar<T>::sign(f[0]) < 0 && e.denominator() % 2 == 0)
    throw DomainError("even root of a series with negative constant term");
  int n = f.trunc();
  Jet1<T> y(n);
  y[0] = Scalar<T>::pow(f[0], e);
  T alpha = Scalar<T>::from_frac(e.numerator(), e.denominator());
  T inv0 = T(1) / f[0];
  for (int k = 1; k <= n; ++k) {
    T s(0);
    for (int j = 1; j <= k; ++j) {
      T w = (alpha + T(1)) * Scalar<T>::from_int(j) - Scalar<T>::from_int(k);
      s += w * f[j] * y[k - j];
    }
    y[k] = s * inv0 / Scalar<T>::from_int(k);
  }
  return y;
}

template <class T>
Jet1<T> nth_root_unit(const Jet1<T>& f, int m) {
  if (Scalar<T>::exact && Scalar<T>::sign(f[0]) > 0 && !Scalar<T>::root(f[0], static_cast<unsigned>(m)))
    throw NeedsFloat("constant term " + Scalar<T>::str(f[0]) + " is not a perfect power");
  return pow_unit(f, Exponent(1, m));
}

// compositional inverse of f with f(0)=0, f'(0)!=0, by Newton iteration
template <class T>
Jet1<T> reversion(const Jet1<T>& f) {
  if (!Scalar<T>::is_zero(f[0], f.scale())) throw DomainError("reversion: f(0) != 0");
  if (f.trunc() < 1 || Scalar<T>::is_zero(f[1])) throw NotInvertible("reversion: f'(0) = 0");
  int n = f.trunc();
  Jet1<T> s = Jet1<T>::variable(n);
  Jet1<T> g = s * (T(1) / f[1]);
  Jet1<T> df = f.derivative();
  int prec = 1;
  while (prec <= n) {
    Jet1<T> residual = compose(f, g) - s;
    Jet1<T> slope = compose(df, g.truncated(df.trunc()));
    Jet1<T> slope_full(n);
    for (int i = 0; i <= slope.trunc(); ++i) slope_full[i] = slope[i];
    g = g - residual * invert_unit(slope_full);
    prec *= 2;
  }
  return g;
}

}  // namespace cuspidal
