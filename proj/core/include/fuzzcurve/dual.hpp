#pragma once

#include <cmath>

namespace fuzzcurve {

/// First-order forward-mode dual number: value + deriv * eps, eps^2 = 0.
template <typename T>
struct Dual {
  T value{};
  T deriv{};

  constexpr Dual() = default;
  constexpr Dual(T v, T d = T{}) : value(v), deriv(d) {}

  static constexpr Dual variable(T v) { return {v, T{1}}; }
  static constexpr Dual constant(T v) { return {v, T{}}; }

  constexpr Dual operator-() const { return {-value, -deriv}; }
  constexpr Dual& operator+=(const Dual& o) { value += o.value; deriv += o.deriv; return *this; }
  constexpr Dual& operator-=(const Dual& o) { value -= o.value; deriv -= o.deriv; return *this; }
  constexpr Dual& operator*=(const Dual& o) {
    deriv = deriv * o.value + value * o.deriv;
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
};

using DualValue = Dual<double>;

template <typename T> constexpr Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <typename T> constexpr Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <typename T> constexpr Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <typename T> constexpr Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <typename T> constexpr Dual<T> operator*(T s, const Dual<T>& a) { return {s * a.value, s * a.deriv}; }
template <typename T> constexpr Dual<T> operator*(const Dual<T>& a, T s) { return s * a; }
template <typename T> constexpr Dual<T> operator+(const Dual<T>& a, T s) { return {a.value + s, a.deriv}; }
template <typename T> constexpr Dual<T> operator+(T s, const Dual<T>& a) { return a + s; }
template <typename T> constexpr Dual<T> operator-(const Dual<T>& a, T s) { return {a.value - s, a.deriv}; }
template <typename T> constexpr Dual<T> operator-(T s, const Dual<T>& a) { return {s - a.value, -a.deriv}; }

// Elementary functions. Domain checks are the caller's job (see expr.cpp).

template <typename T> Dual<T> sin(const Dual<T>& a) { using std::sin, std::cos; return {sin(a.value), cos(a.value) * a.deriv}; }
template <typename T> Dual<T> cos(const Dual<T>& a) { using std::sin, std::cos; return {cos(a.value), -sin(a.value) * a.deriv}; }
template <typename T> Dual<T> exp(const Dual<T>& a) { using std::exp; T e = exp(a.value); return {e, e * a.deriv}; }
template <typename T> Dual<T> log(const Dual<T>& a) { using std::log; return {log(a.value), a.deriv / a.value}; }

template <typename T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.value);
  return {s, a.deriv / (T{2} * s)};
}

template <typename T>
Dual<T> acos(const Dual<T>& a) {
  using std::acos, std::sqrt;
  return {acos(a.value), -a.deriv / sqrt(T{1} - a.value * a.value)};
}

// d|x| uses the sign of x, with sign(0) = +1 (right-hand derivative).
template <typename T>
Dual<T> abs(const Dual<T>& a) {
  using std::abs;
  return {abs(a.value), (a.value < T{} ? -a.deriv : a.deriv)};
}

/// a^b for constant b.
template <typename T>
Dual<T> pow(const Dual<T>& a, T b) {
  using std::pow;
  if (b == T{}) return {T{1}, T{}};
  return {pow(a.value, b), b * pow(a.value, b - T{1}) * a.deriv};
}

/// a^b with both sides varying; requires a > 0.
template <typename T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
  using std::pow, std::log;
  if (b.deriv == T{}) return pow(a, b.value);
  T p = pow(a.value, b.value);
  return {p, p * (b.deriv * log(a.value) + b.value * a.deriv / a.value)};
}

}  // namespace fuzzcurve
