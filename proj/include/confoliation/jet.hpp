#pragma once

// Truncated Taylor arithmetic in one variable, used as the exact-derivative
// carrier for every scalar profile and chart coefficient in the engine.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace confoliation {

// Highest derivative order carried by a Jet. Order 5 leaves headroom: seam
// checks consume orders 0..4 and derivative-of-coefficient nodes drop one.
inline constexpr int kJetOrder = 5;
inline constexpr int kJetLen = kJetOrder + 1;

// Taylor coefficients a_k = f^(k)(x0)/k! about the evaluation point.
class Jet {
public:
  Jet() : a_{} {}
  explicit Jet(double value) : a_{} { a_[0] = value; }

  static Jet variable(double value) {
    Jet j(value);
    j.a_[1] = 1.0;
    return j;
  }
  static Jet constant(double value) { return Jet(value); }

  double value() const { return a_[0]; }
  double taylor(int k) const { return a_[k]; }
  double &taylor(int k) { return a_[k]; }

  // k-th derivative, k! * a_k.
  double derivative(int k) const {
    static const double fact[kJetLen] = {1, 1, 2, 6, 24, 120};
    return a_[k] * fact[k];
  }

  bool finite() const {
    for (double c : a_)
      if (!std::isfinite(c)) return false;
    return true;
  }

  Jet &operator+=(const Jet &o) {
    for (int k = 0; k < kJetLen; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Jet &operator-=(const Jet &o) {
    for (int k = 0; k < kJetLen; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Jet &operator*=(double s) {
    for (int k = 0; k < kJetLen; ++k) a_[k] *= s;
    return *this;
  }

  friend Jet operator+(Jet x, const Jet &y) { return x += y; }
  friend Jet operator-(Jet x, const Jet &y) { return x -= y; }
  friend Jet operator-(const Jet &x) {
    Jet r;
    for (int k = 0; k < kJetLen; ++k) r.a_[k] = -x.a_[k];
    return r;
  }
  friend Jet operator+(Jet x, double c) {
    x.a_[0] += c;
    return x;
  }
  friend Jet operator+(double c, Jet x) { return x + c; }
  friend Jet operator-(Jet x, double c) { return x + (-c); }
  friend Jet operator-(double c, const Jet &x) { return Jet(c) - x; }
  friend Jet operator*(Jet x, double s) { return x *= s; }
  friend Jet operator*(double s, Jet x) { return x *= s; }

  friend Jet operator*(const Jet &x, const Jet &y) {
    Jet r;
    for (int k = 0; k < kJetLen; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += x.a_[i] * y.a_[k - i];
      r.a_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet &x, const Jet &y) {
    if (y.a_[0] == 0.0) throw std::domain_error("jet division by zero value");
    Jet r;
    for (int k = 0; k < kJetLen; ++k) {
      double s = x.a_[k];
      for (int i = 0; i < k; ++i) s -= r.a_[i] * y.a_[k - i];
      r.a_[k] = s / y.a_[0];
    }
    return r;
  }
  friend Jet operator/(const Jet &x, double c) { return x * (1.0 / c); }
  friend Jet operator/(double c, const Jet &y) { return Jet(c) / y; }

private:
  std::array<double, kJetLen> a_;
};

// In-series primitive: given g = dw/dx as a jet (orders 0..kJetOrder-1 used)
// and the value w0, reconstruct w.
inline Jet integrate_jet(double w0, const Jet &g) {
  Jet w;
  w.taylor(0) = w0;
  for (int k = 1; k < kJetLen; ++k) w.taylor(k) = g.taylor(k - 1) / k;
  return w;
}

inline Jet derive_jet(const Jet &x) {
  // Series of x'. The top coefficient is lost; callers needing order k of x'
  // must hold order k+1 of x.
  Jet r;
  for (int k = 0; k < kJetLen - 1; ++k) r.taylor(k) = (k + 1) * x.taylor(k + 1);
  return r;
}

inline Jet exp(const Jet &x) {
  Jet r;
  r.taylor(0) = std::exp(x.value());
  // r' = x' r  =>  (k+1) r_{k+1} = sum_{i=0..k} (i+1) x_{i+1} r_{k-i}
  for (int k = 0; k < kJetOrder; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += (i + 1) * x.taylor(i + 1) * r.taylor(k - i);
    r.taylor(k + 1) = s / (k + 1);
  }
  return r;
}

inline Jet log(const Jet &x) {
  if (x.value() <= 0.0) throw std::domain_error("jet log of non-positive value");
  return integrate_jet(std::log(x.value()), derive_jet(x) / x);
}

inline Jet sqrt(const Jet &x) {
  if (x.value() < 0.0) throw std::domain_error("jet sqrt of negative value");
  Jet r;
  r.taylor(0) = std::sqrt(x.value());
  if (x.value() == 0.0) throw std::domain_error("jet sqrt at zero is non-smooth");
  for (int k = 0; k < kJetOrder; ++k) {
    double s = x.taylor(k + 1);
    for (int i = 1; i <= k; ++i) s -= r.taylor(i) * r.taylor(k + 1 - i);
    r.taylor(k + 1) = s / (2.0 * r.taylor(0));
  }
  return r;
}

inline Jet pow(const Jet &x, double p) {
  if (x.value() <= 0.0) throw std::domain_error("jet pow needs positive base");
  return exp(p * log(x));
}

inline Jet sin(const Jet &x);
inline Jet cos(const Jet &x);

inline Jet sin(const Jet &x) {
  // Joint recurrence for s = sin(x), c = cos(x).
  Jet s, c;
  s.taylor(0) = std::sin(x.value());
  c.taylor(0) = std::cos(x.value());
  for (int k = 0; k < kJetOrder; ++k) {
    double ds = 0.0, dc = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double xp = (i + 1) * x.taylor(i + 1);
      ds += xp * c.taylor(k - i);
      dc -= xp * s.taylor(k - i);
    }
    s.taylor(k + 1) = ds / (k + 1);
    c.taylor(k + 1) = dc / (k + 1);
  }
  return s;
}

inline Jet cos(const Jet &x) {
  Jet s, c;
  s.taylor(0) = std::sin(x.value());
  c.taylor(0) = std::cos(x.value());
  for (int k = 0; k < kJetOrder; ++k) {
    double ds = 0.0, dc = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double xp = (i + 1) * x.taylor(i + 1);
      ds += xp * c.taylor(k - i);
      dc -= xp * s.taylor(k - i);
    }
    s.taylor(k + 1) = ds / (k + 1);
    c.taylor(k + 1) = dc / (k + 1);
  }
  return c;
}

inline Jet atan(const Jet &x) {
  return integrate_jet(std::atan(x.value()), derive_jet(x) / (1.0 + x * x));
}

} // namespace confoliation
