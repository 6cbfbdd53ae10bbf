#include <confoliation/forms.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confoliation {

namespace {
[[noreturn]] void fail_nonfinite(const char *what, const Point3 &p) {
  std::ostringstream os;
  os << what << " evaluated non-finite at (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  throw std::runtime_error(os.str());
}

void require_same_chart(const std::string &a, const std::string &b, const char *op) {
  if (a != b) {
    std::ostringstream os;
    os << op << ": chart mismatch ('" << a << "' vs '" << b << "')";
    throw std::invalid_argument(os.str());
  }
}
} // namespace

double CoeffTerm::value(const Point3 &p) const {
  double v = scale;
  for (int k = 0; k < 3; ++k)
    if (factor[k]) v *= factor[k]->eval(p[k]).value();
  return v;
}

Jet CoeffTerm::jet(const Point3 &p, int axis) const {
  Jet j = Jet::constant(scale);
  for (int k = 0; k < 3; ++k) {
    if (!factor[k]) continue;
    const Jet fk = factor[k]->eval(p[k]);
    j = (k == axis) ? j * fk : j * fk.value();
  }
  return j;
}

ChartCoeff ChartCoeff::constant(double c) {
  ChartCoeff out;
  if (c != 0.0) {
    CoeffTerm t;
    t.scale = c;
    out.terms_.push_back(std::move(t));
  }
  return out;
}

ChartCoeff ChartCoeff::of_axis(int axis, PExpr p, double scale) {
  ChartCoeff out;
  CoeffTerm t;
  t.scale = scale;
  t.factor[axis] = std::move(p);
  out.terms_.push_back(std::move(t));
  return out;
}

ChartCoeff ChartCoeff::product(std::array<PExpr, 3> factors, double scale) {
  ChartCoeff out;
  CoeffTerm t;
  t.scale = scale;
  t.factor = std::move(factors);
  out.terms_.push_back(std::move(t));
  return out;
}

double ChartCoeff::value(const Point3 &p) const {
  double v = 0.0;
  for (const auto &t : terms_) v += t.value(p);
  return v;
}

Jet ChartCoeff::jet(const Point3 &p, int axis) const {
  Jet j;
  for (const auto &t : terms_) j += t.jet(p, axis);
  return j;
}

ChartCoeff ChartCoeff::d(int axis) const {
  ChartCoeff out;
  for (const auto &t : terms_) {
    if (!t.factor[axis]) continue; // constant along this axis
    CoeffTerm dt = t;
    dt.factor[axis] = pderiv(t.factor[axis]);
    out.terms_.push_back(std::move(dt));
  }
  return out;
}

ChartCoeff ChartCoeff::operator+(const ChartCoeff &o) const {
  ChartCoeff out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

ChartCoeff ChartCoeff::operator-(const ChartCoeff &o) const {
  return *this + o.scaled(-1.0);
}

ChartCoeff ChartCoeff::operator*(const ChartCoeff &o) const {
  ChartCoeff out;
  for (const auto &ta : terms_)
    for (const auto &tb : o.terms_) {
      CoeffTerm t;
      t.scale = ta.scale * tb.scale;
      for (int k = 0; k < 3; ++k) {
        if (ta.factor[k] && tb.factor[k]) t.factor[k] = pmul(ta.factor[k], tb.factor[k]);
        else t.factor[k] = ta.factor[k] ? ta.factor[k] : tb.factor[k];
      }
      out.terms_.push_back(std::move(t));
    }
  return out;
}

ChartCoeff ChartCoeff::scaled(double s) const {
  ChartCoeff out = *this;
  for (auto &t : out.terms_) t.scale *= s;
  return out;
}

ChartMap ChartMap::identity(const std::string &chart) {
  ChartMap m;
  m.name = "identity";
  m.src_chart = chart;
  m.dst_chart = chart;
  return m;
}

Point3 ChartMap::forward(const Point3 &p) const {
  Point3 q;
  for (int k = 0; k < 3; ++k) q[k] = sign[k] * p[src_axis[k]] + off[k];
  return q;
}

Mat3 ChartMap::jacobian() const {
  Mat3 J{};
  for (int k = 0; k < 3; ++k) J[k][src_axis[k]] = sign[k];
  return J;
}

double ChartMap::det() const {
  const Mat3 J = jacobian();
  return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

ChartMap ChartMap::inverse() const {
  ChartMap inv;
  inv.name = name + "^-1";
  inv.src_chart = dst_chart;
  inv.dst_chart = src_chart;
  for (int k = 0; k < 3; ++k) {
    const int j = src_axis[k];
    inv.src_axis[j] = k;
    inv.sign[j] = 1.0 / sign[k];
    inv.off[j] = -off[k] / sign[k];
  }
  return inv;
}

ChartTwoForm exterior_derivative(const ChartOneForm &w) {
  ChartTwoForm out;
  out.chart = w.chart;
  out.A = w.c[2].d(1) - w.c[1].d(2);
  out.B = w.c[0].d(2) - w.c[2].d(0);
  out.C = w.c[1].d(0) - w.c[0].d(1);
  return out;
}

ChartThreeForm exterior_derivative(const ChartTwoForm &w) {
  ChartThreeForm out;
  out.chart = w.chart;
  out.w = w.A.d(0) + w.B.d(1) + w.C.d(2);
  return out;
}

ChartThreeForm wedge_13(const ChartOneForm &a, const ChartTwoForm &b) {
  require_same_chart(a.chart, b.chart, "wedge_13");
  ChartThreeForm out;
  out.chart = a.chart;
  out.w = a.c[0] * b.A + a.c[1] * b.B + a.c[2] * b.C;
  return out;
}

ChartTwoForm wedge_11(const ChartOneForm &a, const ChartOneForm &b) {
  require_same_chart(a.chart, b.chart, "wedge_11");
  ChartTwoForm out;
  out.chart = a.chart;
  out.A = a.c[1] * b.c[2] - a.c[2] * b.c[1];
  out.B = a.c[2] * b.c[0] - a.c[0] * b.c[2];
  out.C = a.c[0] * b.c[1] - a.c[1] * b.c[0];
  return out;
}

ChartOneForm pullback(const ChartMap &phi, const ChartOneForm &w) {
  require_same_chart(phi.dst_chart, w.chart, "pullback");
  ChartOneForm out;
  out.chart = phi.src_chart;
  // (phi^* w)_j = sum_k J[k][j] * w_k(phi(x)); J is a signed permutation, so
  // exactly one k contributes per j and the coefficient arguments compose
  // through per-axis affine maps.
  for (int k = 0; k < 3; ++k) {
    const int j = phi.src_axis[k];
    ChartCoeff comp;
    for (const auto &t : w.c[k].terms()) {
      std::array<PExpr, 3> fac{};
      for (int kk = 0; kk < 3; ++kk) {
        if (!t.factor[kk]) continue;
        fac[phi.src_axis[kk]] = paffine_arg(t.factor[kk], phi.sign[kk], phi.off[kk]);
      }
      comp = comp + ChartCoeff::product(fac, t.scale * phi.sign[k]);
    }
    out.c[j] = comp;
  }
  return out;
}

ChartOneForm add(const ChartOneForm &a, const ChartOneForm &b) {
  require_same_chart(a.chart, b.chart, "add");
  ChartOneForm out;
  out.chart = a.chart;
  for (int k = 0; k < 3; ++k) out.c[k] = a.c[k] + b.c[k];
  return out;
}

ChartOneForm scaled(const ChartOneForm &a, double s) {
  ChartOneForm out;
  out.chart = a.chart;
  for (int k = 0; k < 3; ++k) out.c[k] = a.c[k].scaled(s);
  return out;
}

double contact_margin(const ChartOneForm &w, const Point3 &p) {
  // M = P (d1 R - d2 Q) + Q (d2 P - d0 R) + R (d0 Q - d1 P)
  try {
    const Jet P0 = w.c[0].jet(p, 0), P1 = w.c[0].jet(p, 1), P2 = w.c[0].jet(p, 2);
    const Jet Q0 = w.c[1].jet(p, 0), Q2 = w.c[1].jet(p, 2);
    const Jet R0 = w.c[2].jet(p, 0), R1 = w.c[2].jet(p, 1);
    const double P = P0.value(), Q = Q0.value(), R = R0.value();
    const double m = P * (R1.derivative(1) - Q2.derivative(1)) +
                     Q * (P2.derivative(1) - R0.derivative(1)) +
                     R * (Q0.derivative(1) - P1.derivative(1));
    if (!std::isfinite(m)) fail_nonfinite("contact margin", p);
    return m;
  } catch (const std::domain_error &) {
    fail_nonfinite("contact margin", p);
  }
}

} // namespace confoliation
