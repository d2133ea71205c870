#pragma once

#include <array>

#include "jet2.hpp"

namespace cuspidal {

// triple of scalars or jets
template <class E>
struct Vec3 {
  std::array<E, 3> c;

  E& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  const E& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
  friend Vec3 operator-(const Vec3& a) { return {{-a[0], -a[1], -a[2]}}; }
  template <class S>
  friend Vec3 operator*(const S& s, const Vec3& a) {
    return {{a[0] * s, a[1] * s, a[2] * s}};
  }
  template <class S>
  friend Vec3 operator*(const Vec3& a, const S& s) {
    return {{a[0] * s, a[1] * s, a[2] * s}};
  }
};

template <class E>
E dot(const Vec3<E>& a, const Vec3<E>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class E>
Vec3<E> cross(const Vec3<E>& a, const Vec3<E>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

template <class E>
E det(const Vec3<E>& a, const Vec3<E>& b, const Vec3<E>& c) {
  return dot(a, cross(b, c));
}

template <class E>
E norm2(const Vec3<E>& a) {
  return dot(a, a);
}

template <class T>
using CurveJet3 = Vec3<Jet1<T>>;
template <class T>
using MapJet3 = Vec3<Jet2<T>>;

template <class T>
MapJet3<T> du(const MapJet3<T>& f) {
  return {{f[0].du(), f[1].du(), f[2].du()}};
}
template <class T>
MapJet3<T> dv(const MapJet3<T>& f) {
  return {{f[0].dv(), f[1].dv(), f[2].dv()}};
}
template <class T>
MapJet3<T> du(const MapJet3<T>& f, int k) {
  return {{f[0].du(k), f[1].du(k), f[2].du(k)}};
}
template <class T>
MapJet3<T> dv(const MapJet3<T>& f, int k) {
  return {{f[0].dv(k), f[1].dv(k), f[2].dv(k)}};
}
template <class T>
CurveJet3<T> restrict_v0(const MapJet3<T>& f) {
  return {{f[0].restrict_v0(), f[1].restrict_v0(), f[2].restrict_v0()}};
}
template <class T>
Vec3<T> value_at_origin(const MapJet3<T>& f) {
  return {{f[0](0, 0), f[1](0, 0), f[2](0, 0)}};
}
template <class T>
Vec3<T> value_at_zero(const CurveJet3<T>& g) {
  return {{g[0][0], g[1][0], g[2][0]}};
}
template <class T>
CurveJet3<T> derivative(const CurveJet3<T>& g) {
  return {{g[0].derivative(), g[1].derivative(), g[2].derivative()}};
}
template <class T>
CurveJet3<T> compose_curve(const MapJet3<T>& f, const Jet1<T>& x, const Jet1<T>& y) {
  return {{compose_curve(f[0], x, y), compose_curve(f[1], x, y), compose_curve(f[2], x, y)}};
}
template <class T>
MapJet3<T> substitute(const MapJet3<T>& f, const Jet2<T>& p, const Jet2<T>& q) {
  return {{substitute(f[0], p, q), substitute(f[1], p, q), substitute(f[2], p, q)}};
}
template <class T>
CurveJet3<T> compose(const CurveJet3<T>& g, const Jet1<T>& s) {
  return {{compose(g[0], s), compose(g[1], s), compose(g[2], s)}};
}

}  // namespace cuspidal
