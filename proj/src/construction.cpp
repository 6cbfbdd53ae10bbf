#include <confoliation/construction.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace confoliation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMorphWidth = 1e-6; // r-extent of the variant rotation band

ChartCoeff axis0(PExpr p, double s = 1.0) { return ChartCoeff::of_axis(0, std::move(p), s); }

ChartOneForm n_deform(const ScalarProfile &f, const std::string &chart) {
  // t-linear part of alpha_t: r^2 dtheta + (1+f) dphi
  PExpr r = pcoord();
  ChartOneForm w;
  w.chart = chart;
  w.c[1] = axis0(pmul(r, r));
  w.c[2] = axis0(pshift(f.expr, 1.0));
  return w;
}

// Deformation pair (q, g) for the mirrored Reeb core, rotated back to the
// standard pair across [1, 1+kMorphWidth] through a clockwise half-turn; the
// rotation term adds positively to the contact Wronskian.
ChartOneForm spin_morph_deform(const ScalarProfile &f, const std::string &chart) {
  PExpr r = pcoord();
  PExpr r2 = pmul(r, r);
  PExpr onef = pshift(f.expr, 1.0);
  PExpr rhat = psqrt(padd(pmul(r2, r2), pmul(onef, onef)));
  PExpr th0 = pshift(patan(pdiv(onef, r2)), -std::numbers::pi);
  PExpr rot = pstep(1.0, 1.0 + kMorphWidth, 0.5);
  PExpr th = psub(th0, pscale(rot, std::numbers::pi));
  ChartOneForm w;
  w.chart = chart;
  w.c[1] = axis0(pmul(rhat, pcos(th)));
  w.c[2] = axis0(pmul(rhat, psin(th)));
  return w;
}

ChartCoeff mirror_z_arg(const ChartCoeff &c) {
  ChartCoeff out;
  for (const auto &t : c.terms()) {
    auto fac = t.factor;
    if (fac[2]) fac[2] = paffine_arg(fac[2], -1.0, 1.0);
    out = out + ChartCoeff::product(fac, t.scale);
  }
  return out;
}

// Orientation-preserving global mirror: (theta, phi) -> (-theta, -phi) on
// binding charts, (y, z) -> (-y, 1-z) on the page chart.
void mirror_piece(Piece &p) {
  const bool page_chart = p.region.chart == "page";
  for (ChartOneForm *w : {&p.base, &p.deform}) {
    if (page_chart) {
      w->c[0] = mirror_z_arg(w->c[0]);
      w->c[1] = mirror_z_arg(w->c[1]).scaled(-1.0);
      w->c[2] = mirror_z_arg(w->c[2]).scaled(-1.0);
    } else {
      w->c[1] = w->c[1].scaled(-1.0);
      w->c[2] = w->c[2].scaled(-1.0);
    }
  }
}

} // namespace

const Piece &GlobalFormFamily::piece(const std::string &region_name) const {
  for (const auto &p : pieces)
    if (p.region.name == region_name) return p;
  throw std::out_of_range("no region named '" + region_name + "'");
}

ChartOneForm build_reeb_foliation_form(const ScalarProfile &lambda,
                                       const ScalarProfile &delta,
                                       const std::string &chart, bool inner) {
  ChartOneForm w;
  w.chart = chart;
  if (inner) {
    w.c[0] = axis0(lambda.expr);
    w.c[2] = axis0(psub(pconst(1.0), lambda.expr));
  } else {
    w.c[0] = axis0(psub(pconst(1.0), delta.expr));
    w.c[1] = axis0(delta.expr);
  }
  return w;
}

ChartOneForm build_alpha_t(const ChartOneForm &alpha, const ScalarProfile &f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("build_alpha_t: t must be >= 0");
  return add(alpha, scaled(n_deform(f, alpha.chart), t));
}

ChartMap glue_map(double eps, const std::string &src_chart, const std::string &dst_chart) {
  if (!(eps > 0.0)) throw std::invalid_argument("glue_map: eps must be positive");
  ChartMap m;
  m.name = "Psi";
  m.src_chart = src_chart;
  m.dst_chart = dst_chart;
  m.src_axis = {0, 2, 1};
  m.sign = {1.0, -1.0, 1.0};
  m.off = {-(1.0 + eps), 0.0, 0.0};
  return m;
}

ChartOneForm build_interp_form(const ScalarProfile &g, const ScalarProfile &h,
                               const std::string &chart) {
  ChartOneForm w;
  w.chart = chart;
  w.c[1] = axis0(h.expr);
  w.c[2] = axis0(g.expr);
  return w;
}

double page_restriction_margin(const Piece &piece, const ChartOneForm &w,
                               const Point3 &p) {
  if (piece.region.pages == PageOrientation::ConstTheta)
    return w.c[0].jet(p, 2).derivative(1) - w.c[2].jet(p, 0).derivative(1);
  return w.c[1].jet(p, 0).derivative(1) - w.c[0].jet(p, 1).derivative(1);
}

double binding_limit_coefficient(const GlobalFormFamily &fam, int binding, double t) {
  const auto &p = fam.pieces.at(static_cast<size_t>(binding) * 4);
  const Point3 origin{0.0, 0.0, 0.0};
  return p.base.c[2].value(origin) + t * p.deform.c[2].value(origin);
}

GlobalFormFamily assemble_global(const AssemblyConfig &config) {
  if (!(config.epsilon > 0.0 && config.epsilon <= 0.2))
    throw std::invalid_argument("assemble_global: need 0 < epsilon <= 0.2");
  if (!(config.iota > 0.0 && config.iota < 1.0))
    throw std::invalid_argument("assemble_global: need 0 < iota < 1");
  if (config.page == PageKind::Disk && config.twists != 0)
    throw std::invalid_argument("assemble_global: disk page forces twists = 0");

  GlobalFormFamily fam;
  fam.config = config;
  const double eps = config.epsilon;
  const double r_out = 1.0 + 2.0 * eps;
  const double t_ref =
      config.t_sweep.empty() ? 0.05 : *std::max_element(config.t_sweep.begin(), config.t_sweep.end());

  // kappa ties the page collar to the interpolation profiles; the same value
  // is recomputed inside make_interpolation_gh from the same f-shape.
  {
    const ScalarProfile f_probe = make_f(config.iota, r_out);
    const double kappa = 0.45 * (1.0 + f_probe(r_out));
    PageSpec page{config.page, config.width, 0.0};
    fam.page_family = build_lambda_family(
        page, make_monodromy(page, config.twists, eps, kappa), eps, kappa);
  }
  const int n_bindings = (config.page == PageKind::Disk) ? 1 : 2;
  const double pi2 = kTwoPi;

  for (int b = 0; b < n_bindings; ++b) {
    BindingModel bm;
    bm.chart = "N" + std::to_string(b);
    bm.lambda = make_lambda(r_out);
    bm.delta = make_delta(eps, r_out);
    bm.f = make_f(config.iota, r_out);
    bm.gh_parts = make_interpolation_gh(t_ref, eps, bm.f);

    // transport from this binding's A-band into the page chart
    ChartMap glue;
    glue.src_chart = bm.chart;
    glue.dst_chart = "page";
    if (config.page == PageKind::Disk) {
      glue.name = "Phi_disk";
      glue.src_axis = {0, 2, 1};
      glue.sign = {-1.0, 1.0, 1.0};
      glue.off = {config.width + 1.0 + eps, 0.0, 0.0};
    } else if (b == 0) {
      glue = glue_map(eps, bm.chart, "page");
      glue.name = "Phi_left";
    } else {
      glue.name = "Phi_right";
      glue.src_axis = {0, 2, 1};
      glue.sign = {-1.0, 1.0, 1.0};
      glue.off = {config.width + 1.0 + eps, 0.0, 0.0};
    }
    bm.glue = glue;

    const ChartOneForm alpha_in = build_reeb_foliation_form(bm.lambda, bm.delta, bm.chart, true);
    const ChartOneForm alpha_out = build_reeb_foliation_form(bm.lambda, bm.delta, bm.chart, false);
    const ChartOneForm deform = n_deform(bm.f, bm.chart);

    auto add_piece = [&](const std::string &suffix, RegionKind kind, double r0, double r1,
                         const ChartOneForm &base, const ChartOneForm &def) {
      Piece p;
      p.region.name = bm.chart + ":" + suffix;
      p.region.kind = kind;
      p.region.chart = bm.chart;
      p.region.box = {{{r0, r1}, {0.0, pi2}, {0.0, pi2}}};
      p.region.pages = PageOrientation::ConstTheta;
      p.base = base;
      p.deform = def;
      fam.pieces.push_back(std::move(p));
    };

    add_piece("core", RegionKind::Core, config.r_min, 1.0 / 3.0, alpha_in, deform);
    add_piece("reeb", RegionKind::Reeb, 1.0 / 3.0, 1.0, alpha_in, deform);
    add_piece("spin", RegionKind::Spin, 1.0, 1.0 + eps, alpha_out, deform);

    ChartOneForm a_base;
    a_base.chart = bm.chart;
    a_base.c[1] = ChartCoeff::constant(1.0);
    ChartOneForm a_def;
    a_def.chart = bm.chart;
    a_def.c[1] = axis0(bm.gh_parts.H.expr);
    a_def.c[2] = axis0(bm.gh_parts.G.expr);
    add_piece("A", RegionKind::Annulus, 1.0 + eps, r_out, a_base, a_def);

    fam.bindings.push_back(std::move(bm));
  }

  // mapping cylinder M \ N
  {
    Piece p;
    p.region.name = "cylinder";
    p.region.kind = RegionKind::Cylinder;
    p.region.chart = "page";
    const double lo = (config.page == PageKind::Disk) ? config.r_min : eps;
    const double hi = config.width - eps;
    p.region.box = {{{lo, hi}, {0.0, pi2}, {0.0, 1.0}}};
    p.region.pages = PageOrientation::ConstZ;
    p.base.chart = "page";
    p.base.c[2] = ChartCoeff::constant(1.0);
    p.deform = fam.page_family.lambda();
    fam.pieces.push_back(std::move(p));
  }

  const int cyl = static_cast<int>(fam.pieces.size()) - 1;
  for (int b = 0; b < n_bindings; ++b) {
    const int base = 4 * b;
    const std::string nb = fam.bindings[static_cast<size_t>(b)].chart;
    const ChartMap id = ChartMap::identity(nb);
    fam.seams.push_back({nb + ":r=1/3", base + 0, base + 1, 1.0 / 3.0, id});
    fam.seams.push_back({nb + ":r=1", base + 1, base + 2, 1.0, id});
    fam.seams.push_back({nb + ":r=1+eps", base + 2, base + 3, 1.0 + eps, id});
    fam.seams.push_back({nb + ":r=1+2eps", base + 3, cyl, r_out,
                         fam.bindings[static_cast<size_t>(b)].glue});
  }

  if (config.variant != VariantFlip::None) {
    // Reeb flip: mirror the core pair and rotate the deformation back inside
    // the spin region. Page flip: the global mirror of that family.
    for (int b = 0; b < n_bindings; ++b) {
      Piece &core = fam.pieces[static_cast<size_t>(4 * b)];
      Piece &reeb = fam.pieces[static_cast<size_t>(4 * b + 1)];
      Piece &spin = fam.pieces[static_cast<size_t>(4 * b + 2)];
      for (Piece *p : {&core, &reeb}) {
        p->base.c[1] = p->base.c[1].scaled(-1.0);
        p->base.c[2] = p->base.c[2].scaled(-1.0);
        p->deform.c[1] = p->deform.c[1].scaled(-1.0);
        p->deform.c[2] = p->deform.c[2].scaled(-1.0);
      }
      const ChartOneForm morph =
          spin_morph_deform(fam.bindings[static_cast<size_t>(b)].f, spin.region.chart);
      spin.deform.c[1] = morph.c[1];
      spin.deform.c[2] = morph.c[2];
    }
    if (config.variant == VariantFlip::Page)
      for (auto &p : fam.pieces) mirror_piece(p);
  }

  return fam;
}

GlobalFormFamily build_spiral_variant(const AssemblyConfig &config, SpiralVariant v) {
  if (v.flip == VariantFlip::None)
    throw std::invalid_argument("build_spiral_variant: exactly one flip must be set");
  AssemblyConfig c = config;
  c.variant = v.flip;
  return assemble_global(c);
}

} // namespace confoliation
