#include <doctest.h>

#include <confoliation/jet.hpp>

#include <cmath>

using namespace confoliation;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }
} // namespace

TEST_CASE("jet arithmetic follows the product and quotient rules") {
  const double x0 = 0.7;
  const Jet x = Jet::variable(x0);
  const Jet y = x * x * exp(x); // f = x^2 e^x
  const double e = std::exp(x0);
  CHECK(rel(y.derivative(0), x0 * x0 * e) < 1e-15);
  CHECK(rel(y.derivative(1), (2 * x0 + x0 * x0) * e) < 1e-14);
  CHECK(rel(y.derivative(2), (2 + 4 * x0 + x0 * x0) * e) < 1e-14);
  CHECK(rel(y.derivative(3), (6 + 6 * x0 + x0 * x0) * e) < 1e-13);

  const Jet q = Jet::constant(1.0) / (1.0 + x * x);
  CHECK(rel(q.derivative(1), -2 * x0 / std::pow(1 + x0 * x0, 2)) < 1e-14);
}

TEST_CASE("transcendental jets match analytic derivatives") {
  const double x0 = 0.37;
  const Jet x = Jet::variable(x0);

  const Jet s = sin(x), c = cos(x);
  CHECK(rel(s.derivative(1), std::cos(x0)) < 1e-15);
  CHECK(rel(c.derivative(2), -std::cos(x0)) < 1e-14);
  const Jet one = s * s + c * c;
  CHECK(rel(one.value(), 1.0) < 1e-15);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(one.derivative(k)) < 1e-13);

  const Jet a = atan(x);
  CHECK(rel(a.value(), std::atan(x0)) < 1e-15);
  CHECK(rel(a.derivative(1), 1.0 / (1.0 + x0 * x0)) < 1e-14);
  CHECK(rel(a.derivative(2), -2.0 * x0 / std::pow(1.0 + x0 * x0, 2)) < 1e-13);

  const Jet l = log(exp(x));
  CHECK(rel(l.value(), x0) < 1e-14);
  CHECK(rel(l.derivative(1), 1.0) < 1e-13);
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(l.derivative(k)) < 1e-11);

  const Jet r = sqrt(x) * sqrt(x);
  CHECK(rel(r.value(), x0) < 1e-14);
  CHECK(rel(r.derivative(1), 1.0) < 1e-13);

  const Jet p = pow(x, -0.25);
  CHECK(rel(p.value(), std::pow(x0, -0.25)) < 1e-14);
  CHECK(rel(p.derivative(1), -0.25 * std::pow(x0, -1.25)) < 1e-13);
}

TEST_CASE("derive and integrate are mutually inverse on series") {
  const Jet x = Jet::variable(1.3);
  const Jet f = exp(x) * sin(x);
  const Jet g = integrate_jet(f.value(), derive_jet(f));
  for (int k = 0; k < kJetLen - 1; ++k)
    CHECK(rel(g.taylor(k), f.taylor(k)) < 1e-14);
}

TEST_CASE("non-finite jets are detected") {
  Jet x = Jet::variable(2.0);
  x.taylor(3) = std::numeric_limits<double>::infinity();
  CHECK(!x.finite());
  CHECK(Jet::variable(2.0).finite());
  CHECK_THROWS_AS((void)(x / Jet::constant(0.0)), std::domain_error);
}
