#pragma once

#include <gmpxx.h>

#include <boost/rational.hpp>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "errors.hpp"

namespace cuspidal {

using Rational = mpq_class;
using Exponent = boost::rational<long>;

// relative threshold used by float-mode zero tests
inline double& float_zero_tol() {
  static double tol = 1e-9;
  return tol;
}

template <class T>
struct Scalar;

template <>
struct Scalar<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  static Rational from_double(double x) { return Rational(x); }
  static bool is_zero(const Rational& x, double = 1.0) { return sgn(x) == 0; }
  static int sign(const Rational& x, double = 1.0) { return sgn(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }

  // exact n-th root, empty when irrational
  static std::optional<Rational> root(const Rational& x, unsigned n) {
    if (n == 1) return x;
    if (sgn(x) < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = abs(x.get_num()), den = x.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    if (sgn(x) < 0) r = -r;
    return r;
  }

  static Rational pow_int(const Rational& x, long e) {
    if (e < 0) {
      if (sgn(x) == 0) throw NotInvertible("zero to a negative power");
      return pow_int(Rational(1) / x, -e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  static Rational pow(const Rational& x, Exponent e) {
    auto r = root(x, static_cast<unsigned>(e.denominator()));
    if (!r) throw NeedsFloat("irrational root of " + x.get_str());
    return pow_int(*r, e.numerator());
  }

  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct Scalar<double> {
  static constexpr bool exact = false;
  static double from_int(long n) { return static_cast<double>(n); }
  static double from_frac(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
  static double from_double(double x) { return x; }
  static bool is_zero(double x, double scale = 1.0) { return std::fabs(x) <= float_zero_tol() * scale; }
  static int sign(double x, double scale = 1.0) { return is_zero(x, scale) ? 0 : (x > 0 ? 1 : -1); }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::fabs(x); }

  static std::optional<double> root(double x, unsigned n) {
    if (x < 0 && n % 2 == 0) return std::nullopt;
    if (x < 0) return -std::pow(-x, 1.0 / n);
    return std::pow(x, 1.0 / n);
  }

  static double pow_int(double x, long e) { return std::pow(x, static_cast<double>(e)); }

  static double pow(double x, Exponent e) {
    if (e.denominator() == 1) return std::pow(x, static_cast<double>(e.numerator()));
    auto r = root(x, static_cast<unsigned>(e.denominator()));
    if (!r) throw DomainError("even root of a negative number");
    return std::pow(*r, static_cast<double>(e.numerator()));
  }

  static std::string str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <class T>
inline T factorial(int n) {
  T r = Scalar<T>::from_int(1);
  for (int i = 2; i <= n; ++i) r *= Scalar<T>::from_int(i);
  return r;
}

inline long factorial_long(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::string exponent_str(Exponent e) {
  if (e.denominator() == 1) return std::to_string(e.numerator());
  return std::to_string(e.numerator()) + "/" + std::to_string(e.denominator());
}

}  // namespace cuspidal
