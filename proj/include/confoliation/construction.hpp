#pragma once

// Assembly of the global t-family: Reeb insertion on each binding
// neighborhood, the deformation alpha_t, the interpolation annulus, and the
// Thurston-Winkelnkemper form on the mapping cylinder, glued along seams.

#include <confoliation/forms.hpp>
#include <confoliation/openbook.hpp>
#include <confoliation/profile.hpp>

#include <optional>
#include <string>
#include <vector>

namespace confoliation {

enum class RegionKind { Core, Reeb, Spin, Annulus, Cylinder };

enum class PageOrientation {
  ConstTheta, // pages are constant-x1 annuli, oriented by dx2 ^ dx0 (dphi ^ dr)
  ConstZ      // pages are constant-x2 surfaces, oriented by dx0 ^ dx1
};

struct Region {
  std::string name;
  RegionKind kind;
  std::string chart;
  std::array<std::array<double, 2>, 3> box; // per-axis coordinate ranges
  PageOrientation pages;
};

enum class VariantFlip { None, Page, Reeb };

struct SpiralVariant {
  VariantFlip flip = VariantFlip::None;
};

struct AssemblyConfig {
  double epsilon = 0.1;
  double iota = 0.05;
  PageKind page = PageKind::Disk;
  double width = 1.0;
  int twists = 0;
  std::vector<double> t_sweep = {1e-4, 1e-3, 1e-2, 0.05, 0.1};
  int n_r = 64, n_theta = 16, n_phi = 16;
  int n_cyl = 32;
  VariantFlip variant = VariantFlip::None;
  double r_min = 1e-3;
};

// One piece of the global family; the 1-form is affine in t.
struct Piece {
  Region region;
  ChartOneForm base;   // t^0 part
  ChartOneForm deform; // t^1 part
  ChartOneForm at(double t) const { return add(base, scaled(deform, t)); }
};

struct Seam {
  std::string name;
  int piece_a, piece_b;   // indices into pieces
  double a_x0;            // seam location in piece_a's chart (x0 = const)
  ChartMap a_to_b;        // transport from a's chart into b's chart
};

struct BindingModel {
  std::string chart;       // "N0", "N1"
  ScalarProfile lambda, delta, f;
  InterpolationPair gh_parts; // t-free G, H and blend metadata
  ChartMap glue;           // A-chart -> page-chart transport for this binding
};

struct GlobalFormFamily {
  AssemblyConfig config;
  LambdaFamily page_family;
  std::vector<BindingModel> bindings;
  std::vector<Piece> pieces;
  std::vector<Seam> seams;

  const Piece &piece(const std::string &region_name) const;
};

// The paper's piecewise foliation form on N (t = 0 slice of alpha_t).
ChartOneForm build_reeb_foliation_form(const ScalarProfile &lambda,
                                       const ScalarProfile &delta,
                                       const std::string &chart, bool inner);

// alpha_t = alpha + t (r^2 dtheta + (1+f) dphi) on N.
ChartOneForm build_alpha_t(const ChartOneForm &alpha, const ScalarProfile &f,
                           double t);

// The literal gluing map Psi(r, theta, phi) = (r-1-eps, -phi, theta) from the
// A-chart into the mapping-cylinder collar chart (s, theta_page, z).
ChartMap glue_map(double eps, const std::string &src_chart = "N0",
                  const std::string &dst_chart = "collar");

// gamma = g dphi + h dtheta on A; margin g h' - h g'.
ChartOneForm build_interp_form(const ScalarProfile &g, const ScalarProfile &h,
                               const std::string &chart);

GlobalFormFamily assemble_global(const AssemblyConfig &config);
GlobalFormFamily build_spiral_variant(const AssemblyConfig &config, SpiralVariant v);

// Page-restriction coefficient of d(omega) at p in the region's declared page
// orientation.
double page_restriction_margin(const Piece &piece, const ChartOneForm &w,
                               const Point3 &p);

// Limit dphi-coefficient of the family at the binding r -> 0 (per binding).
double binding_limit_coefficient(const GlobalFormFamily &fam, int binding, double t);

} // namespace confoliation
