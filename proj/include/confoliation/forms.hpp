#pragma once

// Exterior calculus on 3D coordinate charts. Coefficients are sums of
// separable products of one-variable profiles, so every partial derivative
// (including the mixed ones needed by d∘d checks) is exact.

#include <confoliation/profile.hpp>

#include <array>
#include <string>
#include <vector>

namespace confoliation {

using Point3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct CoeffTerm {
  double scale = 1.0;
  std::array<PExpr, 3> factor{}; // null factor == constant 1 along that axis

  double value(const Point3 &p) const;
  Jet jet(const Point3 &p, int axis) const; // jet along one coordinate axis
};

class ChartCoeff {
public:
  ChartCoeff() = default;
  static ChartCoeff zero() { return {}; }
  static ChartCoeff constant(double c);
  // profile of a single coordinate
  static ChartCoeff of_axis(int axis, PExpr p, double scale = 1.0);
  // separable product of per-axis profiles
  static ChartCoeff product(std::array<PExpr, 3> factors, double scale = 1.0);

  double value(const Point3 &p) const;
  Jet jet(const Point3 &p, int axis) const;
  bool is_zero() const { return terms_.empty(); }

  ChartCoeff d(int axis) const; // exact partial derivative
  ChartCoeff operator+(const ChartCoeff &o) const;
  ChartCoeff operator-(const ChartCoeff &o) const;
  ChartCoeff operator*(const ChartCoeff &o) const; // term-by-term product
  ChartCoeff scaled(double s) const;

  const std::vector<CoeffTerm> &terms() const { return terms_; }

private:
  std::vector<CoeffTerm> terms_;
};

struct ChartOneForm {
  std::string chart;
  std::array<ChartCoeff, 3> c; // coefficients of dx0, dx1, dx2
};

struct ChartTwoForm {
  std::string chart;
  // A dx1^dx2 + B dx2^dx0 + C dx0^dx1
  ChartCoeff A, B, C;
};

struct ChartThreeForm {
  std::string chart;
  ChartCoeff w; // coefficient of dx0^dx1^dx2
};

// Signed-permutation affine chart map: x_dst[k] = sign[k]*x_src[src_axis[k]] + off[k].
struct ChartMap {
  std::string name;
  std::string src_chart, dst_chart;
  std::array<int, 3> src_axis{{0, 1, 2}};
  std::array<double, 3> sign{{1.0, 1.0, 1.0}};
  std::array<double, 3> off{{0.0, 0.0, 0.0}};

  static ChartMap identity(const std::string &chart);
  Point3 forward(const Point3 &p) const;
  Mat3 jacobian() const; // constant
  double det() const;
  ChartMap inverse() const;
};

ChartTwoForm exterior_derivative(const ChartOneForm &w);
ChartThreeForm exterior_derivative(const ChartTwoForm &w); // guards d∘d = 0
ChartThreeForm wedge_13(const ChartOneForm &a, const ChartTwoForm &b);
ChartTwoForm wedge_11(const ChartOneForm &a, const ChartOneForm &b);
ChartOneForm pullback(const ChartMap &phi, const ChartOneForm &w);

ChartOneForm add(const ChartOneForm &a, const ChartOneForm &b);
ChartOneForm scaled(const ChartOneForm &a, double s);

// Coefficient of w ^ dw relative to dx0^dx1^dx2 at p. Positive means positive
// contact for the chart's declared orientation; zero means integrable.
double contact_margin(const ChartOneForm &w, const Point3 &p);

} // namespace confoliation
