#pragma once

// Smooth one-variable profile functions with exact jet evaluation.
// Profiles are immutable expression trees; evaluation is pure.

#include <confoliation/jet.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace confoliation {

class ProfileNode {
public:
  virtual ~ProfileNode() = default;
  virtual Jet eval(double r) const = 0;
};

using PExpr = std::shared_ptr<const ProfileNode>;

// Expression builders.
PExpr pconst(double c);
PExpr pcoord();                       // r itself
PExpr paffine_arg(PExpr p, double alpha, double beta); // r -> p(alpha*r + beta)
PExpr padd(PExpr a, PExpr b);
PExpr psub(PExpr a, PExpr b);
PExpr pmul(PExpr a, PExpr b);
PExpr pdiv(PExpr a, PExpr b);
PExpr pscale(PExpr a, double s);
PExpr pshift(PExpr a, double c);
PExpr pneg(PExpr a);
PExpr pderiv(PExpr a); // d/dr; drops the top jet order
PExpr pexp(PExpr a);
PExpr patan(PExpr a);
PExpr psin(PExpr a);
PExpr pcos(PExpr a);
PExpr psqrt(PExpr a);

// C-infinity step: 0 on (-inf,a], 1 on [b,inf), strictly increasing on (a,b),
// flat to all orders at a and b. Built from e(x)=exp(-x^-q).
PExpr pstep(double a, double b, double q);

struct ScalarProfile {
  PExpr expr;
  double lo = 0.0, hi = 1.0; // domain
  bool flat_left = false, flat_right = false;
  std::string name;
  nlohmann::json params;

  Jet eval(double r) const { return expr->eval(r); }
  double operator()(double r) const { return expr->eval(r).value(); }
  double derivative(double r, int k) const { return expr->eval(r).derivative(k); }

  nlohmann::json to_json() const;
};

// --- Profile specifications and verification -------------------------------

struct ProfileSpec {
  struct Plateau {
    double lo, hi, value;
  };
  struct StrictMono {
    double lo, hi;
    bool increasing;
  };
  struct Bound {
    double lo, hi;                      // interval
    std::optional<double> greater_than; // p > g on interval
    std::optional<double> less_than;    // p < l on interval
  };
  std::vector<Plateau> plateaus;
  std::vector<StrictMono> monotone;
  std::vector<Bound> bounds;
  bool flat_left = false, flat_right = false; // derivs 1..4 vanish at endpoint
};

struct ClauseResult {
  std::string clause;
  double margin; // > 0 passes for strict clauses; deviation <= tol for flats/plateaus
  bool pass;
};

struct ProfileReport {
  std::vector<ClauseResult> clauses;
  bool pass = true;
  nlohmann::json to_json() const;
};

// Dense-grid check of every spec clause plus endpoint jets.
ProfileReport verify_profile(const ScalarProfile &p, const ProfileSpec &spec,
                             int grid = 10000, double flat_tol = 1e-12);

// --- The paper's profiles ---------------------------------------------------

ScalarProfile smooth_step(double a, double b); // q = 1/4 mollifier step
ScalarProfile make_lambda(double r_max);
ScalarProfile make_delta(double eps, double r_max);
ScalarProfile make_f(double iota, double r_max);

ProfileSpec lambda_spec(double r_max);
ProfileSpec delta_spec(double eps, double r_max);
ProfileSpec f_spec(double iota, double r_max);

// Interpolation profiles g, h on A = [1+eps, 1+2eps] at deformation size t.
// g = t*G, h = 1 + t*H with G, H independent of t; the outer collar constant
// is kappa = 0.45*(1+f(1+2eps)).
struct InterpolationPair {
  ScalarProfile g, h;
  ScalarProfile G, H; // t-free parts
  double kappa;
  double r_cross;     // where the two g-branches meet
  double blend_lo, blend_hi;
};
InterpolationPair make_interpolation_gh(double t, double eps, const ScalarProfile &f);

} // namespace confoliation
