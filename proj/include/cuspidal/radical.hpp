#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace cuspidal {

// coef * prod base_k^{power_k}; bases are positive, so the sign is the sign of coef
template <class T>
struct Radical {
  T coef{0};
  std::vector<std::pair<T, Exponent>> factors;

  Radical() = default;
  explicit Radical(T c) : coef(std::move(c)) {}
  Radical(T c, std::vector<std::pair<T, Exponent>> f) : coef(std::move(c)), factors(std::move(f)) {}

  double to_double() const {
    double r = Scalar<T>::to_double(coef);
    for (const auto& [b, e] : factors)
      r *= std::pow(Scalar<T>::to_double(b), static_cast<double>(e.numerator()) / static_cast<double>(e.denominator()));
    return r;
  }

  bool is_zero() const { return Scalar<T>::is_zero(coef); }
  int sign() const { return Scalar<T>::sign(coef); }

  // the value in T when every root is exact
  std::optional<T> exact() const {
    T r = coef;
    for (const auto& [b, e] : factors) {
      auto root = Scalar<T>::root(b, static_cast<unsigned>(e.denominator()));
      if (!root) return std::nullopt;
      r *= Scalar<T>::pow_int(*root, e.numerator());
    }
    return r;
  }

  T value() const {
    if (auto v = exact()) return *v;
    throw NeedsFloat("value involves an irrational root");
  }

  friend Radical operator*(Radical a, const Radical& b) {
    a.coef *= b.coef;
    a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
    return a;
  }
  friend Radical operator*(Radical a, const T& s) {
    a.coef *= s;
    return a;
  }

  std::string str() const {
    std::string s = Scalar<T>::str(coef);
    for (const auto& [b, e] : factors) s += "*(" + Scalar<T>::str(b) + ")^(" + exponent_str(e) + ")";
    return s;
  }
};

}  // namespace cuspidal
