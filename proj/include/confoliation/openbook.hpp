#pragma once

// Open-book page models (disk, annulus), Dehn-twist monodromy, and the
// Thurston-Winkelnkemper 1-form family lambda_z on the mapping cylinder.
//
// Page charts:
//   disk:    (v, y, z), v in [v_min, V] radial from the center, y angular,
//            z the fibration coordinate; boundary at v = V.
//   annulus: (x, y, z), x in [0, W] across the page, two boundary components
//            at x = 0 and x = W.
// The chart triple is positively oriented for M; d(lambda_z) is a positive
// area form in the (radial, angular) frame.

#include <confoliation/forms.hpp>
#include <confoliation/profile.hpp>

#include <string>

namespace confoliation {

enum class PageKind { Disk, Annulus };

struct PageSpec {
  PageKind kind = PageKind::Disk;
  double width = 1.0;  // disk radius V / annulus x-extent W
  double collar = 0.0; // boundary collar width; 0 = derived from eps
};

struct MonodromySpec {
  int twist_count = 0;          // power of the core Dehn twist; disk forces 0
  ScalarProfile twist_profile;  // angle advance, flat on both collars
  bool identity() const { return twist_count == 0; }
};

struct LambdaFamily {
  PageSpec page;
  MonodromySpec monodromy;
  double eps = 0.1;
  double kappa = 0.0;     // collar coefficient at the A-seam depth
  std::string chart = "page";
  ScalarProfile radial;   // rho(v) (disk) or a(x) (annulus): the d(angular) coefficient
  ScalarProfile mu;       // z-interpolation step, flat at 0 and 1
  double c_hat = 0.0;     // disk: leading v^2 coefficient of rho near the center

  // lambda_z as a (z-dependent) 1-form on the page chart; on the disk and for
  // identity monodromy this is z-independent.
  ChartOneForm lambda() const;          // full family (z baked into coefficients)
  ChartOneForm lambda_at(double z) const; // frozen z (z treated as parameter)
};

// Base page 1-form with d(lambda-bar) a positive area form and the affine
// collar value near each boundary.
ScalarProfile build_base_form(const PageSpec &page, double eps, double kappa);

// Monodromy as a page self-map pullback: psi(x, y) = (x, y + n T(x)).
// Exact: psi^*(dy) = dy + n T'(x) dx, radial coefficients unchanged.
ChartOneForm monodromy_pullback(const MonodromySpec &m, const ChartOneForm &w);

LambdaFamily build_lambda_family(const PageSpec &page, const MonodromySpec &m,
                                 double eps, double kappa);

// beta_t = dz + t lambda_z on the page chart.
ChartOneForm build_tw_form(const LambdaFamily &fam, double t);

MonodromySpec make_monodromy(const PageSpec &page, int twist_count, double eps,
                             double kappa);

} // namespace confoliation
