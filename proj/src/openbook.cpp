#include <confoliation/openbook.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace confoliation {

namespace {

constexpr double kBlendQ = 0.5;

struct AnnulusGeometry {
  double m_bar;   // bridge slope
  double x1, x2;  // blend window endpoints (left); right mirrored
};

AnnulusGeometry annulus_geometry(double W, double eps, double kappa) {
  if (!(W >= 5.0 * eps))
    throw std::invalid_argument("annulus page: width must be at least 5*eps");
  AnnulusGeometry g;
  g.m_bar = 0.5 * kappa / (W / 2.0 - eps);
  // crossing of l0(x) = x - (eps+kappa) with b(x) = m_bar (x - W/2)
  g.x1 = (eps + kappa - g.m_bar * W / 2.0) / (1.0 - g.m_bar);
  g.x2 = W - g.x1;
  if (!(g.x1 > eps && g.x1 < 0.25 * W))
    throw std::invalid_argument("annulus page: blend geometry infeasible");
  return g;
}

} // namespace

ScalarProfile build_base_form(const PageSpec &page, double eps, double kappa) {
  if (!(page.width > 0.0)) throw std::invalid_argument("page width must be positive");
  if (page.kind == PageKind::Disk) {
    const double V = page.width;
    const double vb = V - eps - kappa / 4.0;
    const double va = vb - kappa / 2.0;
    if (!(va >= 0.4 * V))
      throw std::invalid_argument("disk page: width too small for collar geometry");
    const double c_hat = (kappa / 4.0) / (va * va);
    PExpr v = pcoord();
    PExpr quad = pscale(pmul(v, v), c_hat);
    PExpr lin = pshift(v, -(V - eps - kappa)); // v - (V-eps-kappa)
    PExpr S = pstep(va, vb, kBlendQ);
    PExpr rho = padd(quad, pmul(S, psub(lin, quad)));
    ScalarProfile p;
    p.expr = rho;
    p.lo = 0.0;
    p.hi = V;
    p.name = "rho";
    p.params = {{"V", V}, {"eps", eps}, {"kappa", kappa}, {"c_hat", c_hat},
                {"blend", {va, vb}}};
    return p;
  }
  const double W = page.width;
  const auto geo = annulus_geometry(W, eps, kappa);
  PExpr x = pcoord();
  PExpr l0 = pshift(x, -(eps + kappa));
  PExpr lW = pshift(x, -(W - eps - kappa));
  PExpr b = pscale(pshift(x, -W / 2.0), geo.m_bar);
  PExpr S1 = pstep(eps, geo.x1, kBlendQ);
  PExpr S2 = pstep(geo.x2, W - eps, kBlendQ);
  PExpr a = padd(padd(l0, pmul(S1, psub(b, l0))), pmul(S2, psub(lW, b)));
  ScalarProfile p;
  p.expr = a;
  p.lo = 0.0;
  p.hi = W;
  p.name = "a";
  p.params = {{"W", W}, {"eps", eps}, {"kappa", kappa}, {"m_bar", geo.m_bar},
              {"blend", {geo.x1, geo.x2}}};
  return p;
}

MonodromySpec make_monodromy(const PageSpec &page, int twist_count, double eps,
                             double kappa) {
  MonodromySpec m;
  m.twist_count = twist_count;
  if (page.kind == PageKind::Disk) {
    if (twist_count != 0)
      throw std::invalid_argument("disk page forces identity monodromy");
    m.twist_profile = ScalarProfile{pconst(0.0), 0.0, page.width, true, true,
                                    "twist", nlohmann::json::object()};
    return m;
  }
  const auto geo = annulus_geometry(page.width, eps, kappa);
  const double pad = 0.05 * (geo.x2 - geo.x1);
  ScalarProfile T;
  T.expr = pscale(pstep(geo.x1 + pad, geo.x2 - pad, kBlendQ), 2.0 * std::numbers::pi);
  T.lo = 0.0;
  T.hi = page.width;
  T.flat_left = true;
  T.flat_right = true;
  T.name = "twist";
  T.params = {{"window", {geo.x1 + pad, geo.x2 - pad}}};
  m.twist_profile = T;
  return m;
}

ChartOneForm monodromy_pullback(const MonodromySpec &m, const ChartOneForm &w) {
  if (m.identity()) return w;
  // psi(x, y, z) = (x, y + n T(x), z); coefficients never depend on y, so
  // psi^* w = (P + n T' Q) dx + Q dy + R dz.
  ChartOneForm out = w;
  ChartCoeff extra;
  for (const auto &t : w.c[1].terms()) {
    CoeffTerm nt = t;
    nt.scale *= m.twist_count;
    PExpr Tp = pderiv(m.twist_profile.expr);
    nt.factor[0] = nt.factor[0] ? pmul(nt.factor[0], Tp) : Tp;
    extra = extra + ChartCoeff::product(nt.factor, nt.scale);
  }
  out.c[0] = out.c[0] + extra;
  return out;
}

LambdaFamily build_lambda_family(const PageSpec &page, const MonodromySpec &m,
                                 double eps, double kappa) {
  LambdaFamily fam;
  fam.page = page;
  fam.monodromy = m;
  fam.eps = eps;
  fam.kappa = kappa;
  fam.radial = build_base_form(page, eps, kappa);
  if (page.kind == PageKind::Disk)
    fam.c_hat = fam.radial.params.value("c_hat", 0.0);
  ScalarProfile mu;
  mu.expr = pstep(0.0, 1.0, kBlendQ);
  mu.lo = 0.0;
  mu.hi = 1.0;
  mu.flat_left = true;
  mu.flat_right = true;
  mu.name = "mu";
  fam.mu = mu;

  // d(lambda_z) positivity cannot fail for a convex combination of pullback-
  // related area forms; scan anyway to catch construction bugs.
  const double lo = (page.kind == PageKind::Disk) ? 1e-3 : 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = lo + (page.width - lo) * i / 2000.0;
    if (x == 0.0) continue;
    if (!(fam.radial.derivative(x, 1) > 0.0)) {
      std::ostringstream os;
      os << "lambda family: d(lambda_z) not positive at radial coordinate " << x;
      throw std::runtime_error(os.str());
    }
  }
  return fam;
}

ChartOneForm LambdaFamily::lambda() const {
  ChartOneForm w;
  w.chart = chart;
  w.c[1] = ChartCoeff::of_axis(0, radial.expr);
  if (!monodromy.identity()) {
    std::array<PExpr, 3> fac{};
    fac[0] = pmul(radial.expr, pderiv(monodromy.twist_profile.expr));
    fac[2] = mu.expr;
    w.c[0] = ChartCoeff::product(fac, static_cast<double>(monodromy.twist_count));
  }
  return w;
}

ChartOneForm LambdaFamily::lambda_at(double z) const {
  ChartOneForm w;
  w.chart = chart;
  w.c[1] = ChartCoeff::of_axis(0, radial.expr);
  if (!monodromy.identity()) {
    const double muz = mu(z);
    if (muz != 0.0)
      w.c[0] = ChartCoeff::of_axis(
          0, pmul(radial.expr, pderiv(monodromy.twist_profile.expr)),
          monodromy.twist_count * muz);
  }
  return w;
}

ChartOneForm build_tw_form(const LambdaFamily &fam, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("build_tw_form: t must be >= 0");
  ChartOneForm w = scaled(fam.lambda(), t);
  w.c[2] = w.c[2] + ChartCoeff::constant(1.0); // dz
  return w;
}

} // namespace confoliation
