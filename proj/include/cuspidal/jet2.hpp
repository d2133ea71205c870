#pragma once

#include <algorithm>
#include <vector>

#include "jet1.hpp"

namespace cuspidal {

// truncated series sum_{i+j<=trunc} c_ij u^i v^j
template <class T>
class Jet2 {
 public:
  Jet2() : n_(0), c_(1, T(0)) {}
  explicit Jet2(int trunc) : n_(trunc), c_(size_for(trunc), T(0)) {}

  static Jet2 constant(const T& a, int trunc) {
    Jet2 r(trunc);
    r(0, 0) = a;
    return r;
  }
  static Jet2 u_var(int trunc) {
    Jet2 r(trunc);
    if (trunc >= 1) r(1, 0) = T(1);
    return r;
  }
  static Jet2 v_var(int trunc) {
    Jet2 r(trunc);
    if (trunc >= 1) r(0, 1) = T(1);
    return r;
  }
  static Jet2 monomial(int i, int j, const T& a, int trunc) {
    Jet2 r(trunc);
    if (i + j <= trunc) r(i, j) = a;
    return r;
  }

  int trunc() const { return n_; }
  T& operator()(int i, int j) { return c_[index(i, j)]; }
  const T& operator()(int i, int j) const { return c_[index(i, j)]; }
  T coeff(int i, int j) const { return i >= 0 && j >= 0 && i + j <= n_ ? c_[index(i, j)] : T(0); }

  Jet2 truncated(int n) const {
    Jet2 r(std::min(n, n_));
    for (int d = 0; d <= r.n_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = (*this)(d - j, j);
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    if (o.n_ < n_) *this = truncated(o.n_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    if (o.n_ < n_) *this = truncated(o.n_);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet2& operator*=(const T& a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator-(Jet2 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Jet2 operator*(Jet2 a, const T& s) { return a *= s; }
  friend Jet2 operator*(const T& s, Jet2 a) { return a *= s; }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    int n = std::min(a.n_, b.n_);
    Jet2 r(n);
    for (int d1 = 0; d1 <= n; ++d1)
      for (int j1 = 0; j1 <= d1; ++j1) {
        const T& x = a(d1 - j1, j1);
        if (Scalar<T>::exact && x == T(0)) continue;
        for (int d2 = 0; d1 + d2 <= n; ++d2)
          for (int j2 = 0; j2 <= d2; ++j2) r(d1 - j1 + d2 - j2, j1 + j2) += x * b(d2 - j2, j2);
      }
    return r;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }

  Jet2 du() const {
    Jet2 r(std::max(n_ - 1, 0));
    for (int d = 1; d <= n_; ++d)
      for (int j = 0; j < d; ++j) r(d - 1 - j, j) = (*this)(d - j, j) * Scalar<T>::from_int(d - j);
    return r;
  }
  Jet2 dv() const {
    Jet2 r(std::max(n_ - 1, 0));
    for (int d = 1; d <= n_; ++d)
      for (int j = 1; j <= d; ++j) r(d - j, j - 1) = (*this)(d - j, j) * Scalar<T>::from_int(j);
    return r;
  }
  Jet2 du(int k) const {
    Jet2 r = *this;
    for (int i = 0; i < k; ++i) r = r.du();
    return r;
  }
  Jet2 dv(int k) const {
    Jet2 r = *this;
    for (int i = 0; i < k; ++i) r = r.dv();
    return r;
  }

  // coefficient of v^j as a series in u
  Jet1<T> column(int j) const {
    Jet1<T> r(std::max(n_ - j, 0));
    for (int i = 0; i + j <= n_; ++i) r[i] = (*this)(i, j);
    return r;
  }
  Jet1<T> restrict_v0() const { return column(0); }
  Jet1<T> restrict_u0() const {
    Jet1<T> r(n_);
    for (int j = 0; j <= n_; ++j) r[j] = (*this)(0, j);
    return r;
  }

  Jet2 mul_v(int k) const {
    Jet2 r(n_ + k);
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j + k) = (*this)(d - j, j);
    return r;
  }

  // divide by v^k; columns 0..k-1 must vanish
  Jet2 div_v(int k) const {
    double s = scale();
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j < k && j <= d; ++j)
        if (!Scalar<T>::is_zero((*this)(d - j, j), s))
          throw PreconditionViolated("jet not divisible by v^" + std::to_string(k));
    Jet2 r(std::max(n_ - k, 0));
    for (int d = 0; d <= r.n_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = coeff(d - j, j + k);
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

  // lowest total degree carrying a nonzero coefficient, or trunc()+1
  int leading_degree() const {
    double s = scale();
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j <= d; ++j)
        if (!Scalar<T>::is_zero((*this)(d - j, j), s)) return d;
    return n_ + 1;
  }

  double eval(double u, double v) const {
    double r = 0;
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j <= d; ++j) {
        double c = Scalar<T>::to_double((*this)(d - j, j));
        if (c != 0.0) r += c * std::pow(u, d - j) * std::pow(v, j);
      }
    return r;
  }

  bool operator==(const Jet2& o) const { return n_ == o.n_ && c_ == o.c_; }

 private:
  static std::size_t size_for(int n) { return static_cast<std::size_t>((n + 1) * (n + 2) / 2); }
  static std::size_t index(int i, int j) {
    int d = i + j;
    return static_cast<std::size_t>(d * (d + 1) / 2 + j);
  }

  int n_;
  std::vector<T> c_;
};

template <class T>
Jet2<double> to_double(const Jet2<T>& a) {
  Jet2<double> r(a.trunc());
  for (int d = 0; d <= a.trunc(); ++d)
    for (int j = 0; j <= d; ++j) r(d - j, j) = Scalar<T>::to_double(a(d - j, j));
  return r;
}

inline Jet2<double> to_double(const Jet2<double>& a) { return a; }

// F(phi, psi) for bivariate phi, psi vanishing at the origin
template <class T>
Jet2<T> substitute(const Jet2<T>& F, const Jet2<T>& phi, const Jet2<T>& psi) {
  if (!Scalar<T>::is_zero(phi(0, 0), phi.scale()) || !Scalar<T>::is_zero(psi(0, 0), psi.scale()))
    throw DomainError("substitute: inner map does not fix the origin");
  int n = std::min({F.trunc(), phi.trunc(), psi.trunc()});
  Jet2<T> p = phi.truncated(n), q = psi.truncated(n);
  std::vector<Jet2<T>> qpow{Jet2<T>::constant(T(1), n)};
  for (int j = 1; j <= n; ++j) qpow.push_back(qpow.back() * q);
  Jet2<T> r(n);
  for (int i = std::min(F.trunc(), n); i >= 0; --i) {
    Jet2<T> col(n);
    for (int j = 0; j <= std::min(F.trunc() - i, n); ++j)
      if (!(Scalar<T>::exact && F(i, j) == T(0))) col += qpow[static_cast<std::size_t>(j)] * F(i, j);
    r = r * p + col;
  }
  return r;
}

// F(x(t), y(t)) for curves through the origin
template <class T>
Jet1<T> compose_curve(const Jet2<T>& F, const Jet1<T>& x, const Jet1<T>& y) {
  if (!Scalar<T>::is_zero(x[0], x.scale()) || !Scalar<T>::is_zero(y[0], y.scale()))
    throw DomainError("compose_curve: curve does not pass through the origin");
  int n = std::min(x.trunc(), y.trunc());
  Jet1<T> xx = x.truncated(n), yy = y.truncated(n);
  std::vector<Jet1<T>> ypow{Jet1<T>::constant(T(1), n)};
  for (int j = 1; j <= n; ++j) ypow.push_back(ypow.back() * yy);
  Jet1<T> r(n);
  for (int i = std::min(F.trunc(), n); i >= 0; --i) {
    Jet1<T> col(n);
    for (int j = 0; j <= std::min(F.trunc() - i, n); ++j)
      if (!(Scalar<T>::exact && F(i, j) == T(0))) col += ypow[static_cast<std::size_t>(j)] * F(i, j);
    r = r * xx + col;
  }
  return r;
}

// univariate series applied to a bivariate jet h with h(0,0) = 0
template <class T>
Jet2<T> compose_series(const Jet1<T>& f, const Jet2<T>& h) {
  int n = h.trunc();
  Jet2<T> r = Jet2<T>::constant(f.coeff(f.trunc()), n);
  for (int i = f.trunc() - 1; i >= 0; --i) {
    r = r * h;
    r(0, 0) += f[i];
  }
  return r;
}

template <class T>
Jet2<T> pow_unit(const Jet2<T>& f, Exponent e) {
  if (Scalar<T>::is_zero(f(0, 0))) throw NotUnit("pow of a series with zero constant term");
  int n = f.trunc();
  T f0 = f(0, 0);
  // f^e = f0^e (1+h)^e with the binomial series of (1+x)^e
  Jet1<T> one_plus_x = Jet1<T>::constant(T(1), n);
  if (n >= 1) one_plus_x[1] = T(1);
  Jet1<T> bin = pow_unit(one_plus_x, e);
  Jet2<T> h = f * (T(1) / f0);
  h(0, 0) -= T(1);
  return compose_series(bin, h) * Scalar<T>::pow(f0, e);
}

template <class T>
Jet2<T> invert_unit(const Jet2<T>& f) {
  return pow_unit(f, Exponent(-1));
}

}  // namespace cuspidal
