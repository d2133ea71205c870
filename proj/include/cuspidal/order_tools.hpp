#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "jet2.hpp"

namespace cuspidal {

// exact order, or a lower bound when the jet vanished to its truncation
struct OrderValue {
  Exponent value{0};
  bool exact{true};

  static OrderValue at_least(Exponent v) { return {v, false}; }

  bool operator==(const OrderValue& o) const { return value == o.value && exact == o.exact; }
  bool is(long v) const { return exact && value == Exponent(v); }

  std::string str() const { return (exact ? "" : ">=") + exponent_str(value); }
};

template <class T>
OrderValue order(const Jet1<T>& f) {
  int k = f.leading_index();
  return {Exponent(k), k <= f.trunc()};
}

// total degree of the lowest nonvanishing homogeneous part
template <class T>
OrderValue order(const Jet2<T>& f) {
  int k = f.leading_degree();
  return {Exponent(k), k <= f.trunc()};
}

struct OrderFactor {
  OrderValue order;
  Exponent power;
};

// order of num / prod den_k^{power_k}; absolute values do not change orders
inline OrderValue rational_order(OrderValue num, const std::vector<OrderFactor>& den) {
  Exponent v = num.value;
  for (const auto& d : den) {
    if (!d.order.exact) throw Inconclusive("denominator vanishes to the truncation degree");
    v -= d.power * d.order.value;
  }
  return {v, num.exact};
}

enum class Boundedness { Unbounded, Bounded, Continuous, Undetermined };

inline Boundedness boundedness(const OrderValue& o) {
  if (o.value >= 1) return Boundedness::Continuous;
  if (o.value >= 0) return Boundedness::Bounded;
  return o.exact ? Boundedness::Unbounded : Boundedness::Undetermined;
}

inline std::string to_string(Boundedness b) {
  switch (b) {
    case Boundedness::Unbounded: return "unbounded";
    case Boundedness::Bounded: return "bounded";
    case Boundedness::Continuous: return "continuous";
    case Boundedness::Undetermined: return "undetermined";
  }
  return "";
}

struct NumericOrder {
  double slope{0};
  double stderr_slope{0};
  bool sign_change{false};
  int used{0};
};

// least-squares slope of log|value| against log|t| over the smallest |t| samples
inline NumericOrder numeric_order(std::vector<std::pair<double, double>> samples, int keep = 6) {
  NumericOrder r;
  samples.erase(std::remove_if(samples.begin(), samples.end(),
                               [](const auto& s) { return s.first == 0.0 || s.second == 0.0 || !std::isfinite(s.second); }),
                samples.end());
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return std::fabs(a.first) < std::fabs(b.first); });
  if (static_cast<int>(samples.size()) > keep) samples.resize(static_cast<std::size_t>(keep));
  r.used = static_cast<int>(samples.size());
  if (r.used < 2) throw Inconclusive("too few usable samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if ((samples[i].second > 0) != (samples[0].second > 0)) r.sign_change = true;
  double n = r.used, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [t, v] : samples) {
    double x = std::log(std::fabs(t)), y = std::log(std::fabs(v));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = n * sxx - sx * sx;
  r.slope = (n * sxy - sx * sy) / den;
  double icpt = (sy - r.slope * sx) / n, ss = 0;
  for (const auto& [t, v] : samples) {
    double e = std::log(std::fabs(v)) - icpt - r.slope * std::log(std::fabs(t));
    ss += e * e;
  }
  r.stderr_slope = r.used > 2 ? std::sqrt(ss / (n - 2) * n / den) : 0.0;
  return r;
}

// limit at h -> 0 from values at h, h/2, h/4, ... assuming an integer power expansion
inline double richardson(std::vector<double> values) {
  for (std::size_t level = 1; level < values.size(); ++level) {
    double f = std::pow(2.0, static_cast<double>(level));
    for (std::size_t i = values.size() - 1; i >= level; --i) values[i] = (f * values[i] - values[i - 1]) / (f - 1.0);
  }
  return values.back();
}

}  // namespace cuspidal
