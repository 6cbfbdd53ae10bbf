#include <confoliation/profile.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace confoliation {

namespace {

struct ConstNode final : ProfileNode {
  double c;
  explicit ConstNode(double v) : c(v) {}
  Jet eval(double) const override { return Jet::constant(c); }
};

struct CoordNode final : ProfileNode {
  Jet eval(double r) const override { return Jet::variable(r); }
};

struct AffineArgNode final : ProfileNode {
  PExpr p;
  double alpha, beta;
  Jet eval(double r) const override {
    Jet j = p->eval(alpha * r + beta);
    double f = 1.0;
    for (int k = 1; k < kJetLen; ++k) {
      f *= alpha;
      j.taylor(k) *= f;
    }
    return j;
  }
};

template <class F> struct BinNode final : ProfileNode {
  PExpr a, b;
  F f;
  BinNode(PExpr x, PExpr y, F fn) : a(std::move(x)), b(std::move(y)), f(fn) {}
  Jet eval(double r) const override { return f(a->eval(r), b->eval(r)); }
};

template <class F> struct UnNode final : ProfileNode {
  PExpr a;
  F f;
  UnNode(PExpr x, F fn) : a(std::move(x)), f(fn) {}
  Jet eval(double r) const override { return f(a->eval(r)); }
};

// e(y) = exp(-y^-q), flat to all orders at 0+. Guard band keeps jet
// intermediates finite; below the cut the value underflows to exactly 0 in
// double precision anyway.
constexpr double kStepCut = 1e-12;

struct StepNode final : ProfileNode {
  double a, b, q;
  Jet eval(double r) const override {
    const double w = b - a;
    const double y0 = (r - a) / w;
    if (y0 <= kStepCut) return Jet::constant(0.0);
    if (y0 >= 1.0 - kStepCut) return Jet::constant(1.0);
    Jet y = Jet::variable(y0);
    y.taylor(1) = 1.0 / w;
    const Jet ey = exp(-pow(y, -q));
    const Jet ec = exp(-pow(1.0 - y, -q));
    return ey / (ey + ec);
  }
};

template <class F> PExpr make_bin(PExpr a, PExpr b, F f) {
  return std::make_shared<BinNode<F>>(std::move(a), std::move(b), f);
}
template <class F> PExpr make_un(PExpr a, F f) {
  return std::make_shared<UnNode<F>>(std::move(a), f);
}

} // namespace

PExpr pconst(double c) { return std::make_shared<ConstNode>(c); }
PExpr pcoord() { return std::make_shared<CoordNode>(); }
PExpr paffine_arg(PExpr p, double alpha, double beta) {
  auto n = std::make_shared<AffineArgNode>();
  n->p = std::move(p);
  n->alpha = alpha;
  n->beta = beta;
  return n;
}
PExpr padd(PExpr a, PExpr b) {
  return make_bin(std::move(a), std::move(b), [](const Jet &x, const Jet &y) { return x + y; });
}
PExpr psub(PExpr a, PExpr b) {
  return make_bin(std::move(a), std::move(b), [](const Jet &x, const Jet &y) { return x - y; });
}
PExpr pmul(PExpr a, PExpr b) {
  return make_bin(std::move(a), std::move(b), [](const Jet &x, const Jet &y) { return x * y; });
}
PExpr pdiv(PExpr a, PExpr b) {
  return make_bin(std::move(a), std::move(b), [](const Jet &x, const Jet &y) { return x / y; });
}
PExpr pscale(PExpr a, double s) {
  return make_un(std::move(a), [s](const Jet &x) { return x * s; });
}
PExpr pshift(PExpr a, double c) {
  return make_un(std::move(a), [c](const Jet &x) { return x + c; });
}
PExpr pneg(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return -x; });
}
PExpr pderiv(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return derive_jet(x); });
}
PExpr pexp(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return exp(x); });
}
PExpr patan(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return atan(x); });
}
PExpr psin(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return sin(x); });
}
PExpr pcos(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return cos(x); });
}
PExpr psqrt(PExpr a) {
  return make_un(std::move(a), [](const Jet &x) { return sqrt(x); });
}

PExpr pstep(double a, double b, double q) {
  if (!(a < b)) throw std::invalid_argument("pstep: requires a < b");
  auto n = std::make_shared<StepNode>();
  n->a = a;
  n->b = b;
  n->q = q;
  return n;
}

nlohmann::json ScalarProfile::to_json() const {
  return nlohmann::json{{"name", name}, {"domain", {lo, hi}}, {"params", params},
                        {"flat_left", flat_left}, {"flat_right", flat_right}};
}

nlohmann::json ProfileReport::to_json() const {
  nlohmann::json cl = nlohmann::json::array();
  for (const auto &c : clauses)
    cl.push_back({{"clause", c.clause}, {"margin", c.margin}, {"pass", c.pass}});
  return nlohmann::json{{"pass", pass}, {"clauses", cl}};
}

ProfileReport verify_profile(const ScalarProfile &p, const ProfileSpec &spec,
                             int grid, double flat_tol) {
  ProfileReport rep;
  auto push = [&](std::string clause, double margin, bool pass) {
    rep.clauses.push_back({std::move(clause), margin, pass});
    rep.pass = rep.pass && pass;
  };

  for (const auto &pl : spec.plateaus) {
    double dev = 0.0;
    for (int i = 0; i <= grid; ++i) {
      const double r = pl.lo + (pl.hi - pl.lo) * i / grid;
      dev = std::max(dev, std::abs(p(r) - pl.value));
    }
    std::ostringstream os;
    os << "plateau value " << pl.value << " on [" << pl.lo << "," << pl.hi << "]";
    push(os.str(), dev, dev <= flat_tol);
  }

  for (const auto &m : spec.monotone) {
    double value_margin = std::numeric_limits<double>::infinity();
    double deriv_margin = std::numeric_limits<double>::infinity();
    double prev = p(m.lo);
    for (int i = 1; i <= grid; ++i) {
      const double r = m.lo + (m.hi - m.lo) * i / grid;
      const double v = p(r);
      const double step = m.increasing ? v - prev : prev - v;
      value_margin = std::min(value_margin, step);
      prev = v;
      if (i < grid) {
        const double d = p.derivative(r, 1);
        deriv_margin = std::min(deriv_margin, m.increasing ? d : -d);
      }
    }
    const double margin = std::min(value_margin, deriv_margin);
    std::ostringstream os;
    os << "strictly " << (m.increasing ? "increasing" : "decreasing") << " on ("
       << m.lo << "," << m.hi << ")";
    push(os.str(), margin, margin > 0.0);
  }

  for (const auto &b : spec.bounds) {
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
      const double r = b.lo + (b.hi - b.lo) * i / grid;
      const double v = p(r);
      if (b.greater_than) margin = std::min(margin, v - *b.greater_than);
      if (b.less_than) margin = std::min(margin, *b.less_than - v);
    }
    std::ostringstream os;
    os << "bounds on [" << b.lo << "," << b.hi << "]";
    push(os.str(), margin, margin > 0.0);
  }

  auto flat_at = [&](double r, const char *which) {
    double dev = 0.0;
    const Jet j = p.eval(r);
    for (int k = 1; k <= 4; ++k) dev = std::max(dev, std::abs(j.derivative(k)));
    std::ostringstream os;
    os << "flat (orders 1..4) at " << which << " endpoint";
    push(os.str(), dev, dev <= flat_tol);
  };
  if (spec.flat_left) flat_at(p.lo, "left");
  if (spec.flat_right) flat_at(p.hi, "right");

  return rep;
}

namespace {
constexpr double kProfileQ = 0.25; // scanned steps: survives 1e4-grid strict scans
constexpr double kBlendQ = 0.5;    // internal blends: gentler peak derivative
} // namespace

ScalarProfile smooth_step(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("smooth_step: requires a < b");
  ScalarProfile p;
  p.expr = pstep(a, b, kProfileQ);
  p.lo = a;
  p.hi = b;
  p.flat_left = true;
  p.flat_right = true;
  p.name = "smooth_step";
  p.params = {{"a", a}, {"b", b}, {"q", kProfileQ}};
  return p;
}

ScalarProfile make_lambda(double r_max) {
  ScalarProfile p;
  p.expr = pstep(1.0 / 3.0, 1.0, kProfileQ);
  p.lo = 0.0;
  p.hi = r_max;
  p.flat_left = true;
  p.flat_right = true;
  p.name = "lambda";
  p.params = {{"r_max", r_max}};
  return p;
}

ScalarProfile make_delta(double eps, double r_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("make_delta: eps must be positive");
  ScalarProfile p;
  p.expr = pstep(1.0, 1.0 + eps, kProfileQ);
  p.lo = 0.0;
  p.hi = r_max;
  p.flat_left = true;
  p.flat_right = true;
  p.name = "delta";
  p.params = {{"eps", eps}, {"r_max", r_max}};
  return p;
}

ScalarProfile make_f(double iota, double r_max) {
  if (!(iota > 0.0 && iota < 1.0)) throw std::invalid_argument("make_f: need 0 < iota < 1");
  // f = -(1-iota/2)*step(0,1) - (iota/4) * r^2/(1+r^2); f(0)=0, f' < 0 on
  // (0, r_max], f(1) <= -1+iota and f > -1+iota/4 everywhere.
  PExpr r = pcoord();
  PExpr r2 = pmul(r, r);
  PExpr tail = pdiv(r2, pshift(r2, 1.0));
  PExpr e = psub(pscale(pstep(0.0, 1.0, kProfileQ), -(1.0 - iota / 2.0)),
                 pscale(tail, iota / 4.0));
  ScalarProfile p;
  p.expr = e;
  p.lo = 0.0;
  p.hi = r_max;
  p.name = "f";
  p.params = {{"iota", iota}, {"r_max", r_max}};
  return p;
}

ProfileSpec lambda_spec(double r_max) {
  ProfileSpec s;
  s.plateaus = {{0.0, 1.0 / 3.0, 0.0}, {1.0, r_max, 1.0}};
  s.monotone = {{1.0 / 3.0, 1.0, true}};
  s.flat_left = true;
  s.flat_right = true;
  return s;
}

ProfileSpec delta_spec(double eps, double r_max) {
  ProfileSpec s;
  s.plateaus = {{0.0, 1.0, 0.0}, {1.0 + eps, r_max, 1.0}};
  s.monotone = {{1.0, 1.0 + eps, true}};
  s.flat_left = true;
  s.flat_right = true;
  return s;
}

ProfileSpec f_spec(double iota, double r_max) {
  ProfileSpec s;
  s.monotone = {{0.0, r_max, false}};
  ProfileSpec::Bound gt;
  gt.lo = 0.0;
  gt.hi = r_max;
  gt.greater_than = -1.0;
  ProfileSpec::Bound lt;
  lt.lo = 1.0 + 1e-9; // open condition r > 1 sampled just inside
  lt.hi = r_max;
  lt.less_than = -1.0 + iota;
  s.bounds = {gt, lt};
  return s;
}

InterpolationPair make_interpolation_gh(double t, double eps, const ScalarProfile &f) {
  if (!(t > 0.0)) throw std::invalid_argument("make_interpolation_gh: t must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("make_interpolation_gh: eps must be positive");
  const double r_in = 1.0 + eps, r_out = 1.0 + 2.0 * eps;
  const double m2 = 1.0 + f(r_out);
  if (!(m2 > 0.0)) throw std::runtime_error("make_interpolation_gh: f violates f > -1");
  const double kappa = 0.45 * m2;

  // Branches of G = g/t: inner 1+f(r), outer kappa + (r_out - r). The blend
  // window must sit where the outer branch lies below the inner one; for small
  // iota they cross once inside A (the outer branch falls at unit rate), for
  // large iota the outer branch starts below already.
  auto G1 = [&](double r) { return 1.0 + f(r); };
  auto G2 = [&](double r) { return kappa + (r_out - r); };
  if (!(G2(r_out) - G1(r_out) < 0.0))
    throw std::runtime_error("make_interpolation_gh: branches out of order at the outer end");
  double r_cross = r_in;
  if (G2(r_in) - G1(r_in) > 0.0) {
    double a = r_in, b = r_out;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (a + b);
      ((G2(m) - G1(m) > 0.0) ? a : b) = m;
    }
    r_cross = 0.5 * (a + b);
  }
  // The blend must live where the branch gap G1 - G2 already dominates the
  // t-quadratic cross terms (worst at the largest sweep t and r), so it starts
  // halfway into the gap region.
  const double D = r_out - r_cross;
  const double blend_lo = r_cross + 0.5 * D;
  const double blend_hi = r_out - 0.15 * D;

  PExpr B = pstep(blend_lo, blend_hi, kBlendQ);
  PExpr oneB = psub(pconst(1.0), B);
  PExpr r = pcoord();
  PExpr g1 = pshift(f.expr, 1.0);                       // 1 + f
  PExpr g2 = psub(pconst(kappa + r_out), r);            // kappa + r_out - r
  PExpr G = padd(pmul(oneB, g1), pmul(B, g2));
  PExpr H = pmul(pmul(r, r), oneB);                     // r^2 (1 - B)

  InterpolationPair out;
  out.kappa = kappa;
  out.r_cross = r_cross;
  out.blend_lo = blend_lo;
  out.blend_hi = blend_hi;

  out.G = ScalarProfile{G, r_in, r_out, false, false, "G", {{"kappa", kappa}}};
  out.H = ScalarProfile{H, r_in, r_out, false, false, "H", {}};
  out.g = ScalarProfile{pscale(G, t), r_in, r_out, false, false, "g",
                        {{"t", t}, {"kappa", kappa}, {"eps", eps}}};
  out.h = ScalarProfile{pshift(pscale(H, t), 1.0), r_in, r_out, false, false, "h",
                        {{"t", t}, {"eps", eps}}};

  // Contact and supportedness prechecks: g' < 0 and g h' - h g' > 0 on A.
  const int n = 10000;
  for (int i = 0; i <= n; ++i) {
    const double rr = r_in + (r_out - r_in) * i / n;
    const Jet gj = out.g.eval(rr), hj = out.h.eval(rr);
    const double gp = gj.derivative(1), hp = hj.derivative(1);
    if (!(gp < 0.0)) {
      std::ostringstream os;
      os << "make_interpolation_gh: g' >= 0 at r = " << rr;
      throw std::runtime_error(os.str());
    }
    if (!(gj.value() * hp - hj.value() * gp > 0.0)) {
      std::ostringstream os;
      os << "make_interpolation_gh: g h' - h g' <= 0 at r = " << rr;
      throw std::runtime_error(os.str());
    }
  }
  return out;
}

} // namespace confoliation
