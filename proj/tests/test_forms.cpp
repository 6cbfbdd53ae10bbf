#include <doctest.h>

#include <confoliation/construction.hpp>
#include <confoliation/forms.hpp>
#include <confoliation/profile.hpp>

#include <cmath>
#include <random>

using namespace confoliation;

namespace {

constexpr double kEps = 0.1;
constexpr double kIota = 0.05;
constexpr double kRMax = 1.2;

double rel(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

ChartOneForm alpha_inner(const ScalarProfile &lam) {
  ChartOneForm w;
  w.chart = "N0";
  w.c[0] = ChartCoeff::of_axis(0, lam.expr);
  w.c[2] = ChartCoeff::of_axis(0, psub(pconst(1.0), lam.expr));
  return w;
}

} // namespace

TEST_CASE("exterior derivative of a constant-coefficient form vanishes") {
  ChartOneForm w;
  w.chart = "N0";
  w.c[2] = ChartCoeff::constant(1.0); // dphi
  const ChartTwoForm d = exterior_derivative(w);
  for (const Point3 p : {Point3{0.3, 1.0, 2.0}, Point3{0.9, 0.1, 4.0}}) {
    CHECK(d.A.value(p) == 0.0);
    CHECK(d.B.value(p) == 0.0);
    CHECK(d.C.value(p) == 0.0);
  }
}

TEST_CASE("d(alpha) = -lambda' dr^dphi on the inner piece") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ChartTwoForm d = exterior_derivative(alpha_inner(lam));
  for (double r : {0.2, 0.5, 0.8, 0.99}) {
    const Point3 p{r, 0.7, 1.3};
    // B is the dphi^dr coefficient, i.e. +lambda'
    CHECK(rel(d.B.value(p), lam.derivative(r, 1)) < 1e-14);
    CHECK(d.A.value(p) == 0.0);
    CHECK(d.C.value(p) == 0.0);
  }
}

TEST_CASE("d(t r^2 dtheta) = 2 t r dr^dtheta") {
  const double t = 0.03;
  ChartOneForm w;
  w.chart = "N0";
  w.c[1] = ChartCoeff::of_axis(0, pmul(pcoord(), pcoord()), t);
  const ChartTwoForm d = exterior_derivative(w);
  for (double r : {0.1, 0.6, 1.1}) {
    const Point3 p{r, 0.0, 0.0};
    CHECK(rel(d.C.value(p), 2.0 * t * r) < 1e-15);
  }
}

TEST_CASE("wedge of dr with dr^dtheta vanishes (repeated factor)") {
  ChartOneForm a;
  a.chart = "N0";
  a.c[0] = ChartCoeff::constant(1.0);
  ChartTwoForm b;
  b.chart = "N0";
  b.C = ChartCoeff::constant(1.0); // dr^dtheta
  const ChartThreeForm w = wedge_13(a, b);
  CHECK(w.w.value({0.5, 1.0, 2.0}) == 0.0);

  ChartTwoForm other;
  other.chart = "page";
  CHECK_THROWS_AS(wedge_13(a, other), std::invalid_argument);
  CHECK_THROWS_AS(pullback(glue_map(0.1, "N0", "collar"), a), std::invalid_argument);
}

TEST_CASE("alpha_t ^ d(alpha_t) reproduces the displayed coefficients") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ScalarProfile del = make_delta(kEps, kRMax);
  const ScalarProfile f = make_f(kIota, kRMax);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double t = 1e-4 + 0.1 * u(rng);

    const ChartOneForm in_t = build_alpha_t(alpha_inner(lam), f, t);
    const double r_in = 1e-3 + (1.0 - 1e-3) * u(rng);
    const Point3 p_in{r_in, u(rng), u(rng)};
    const ChartThreeForm w_in = wedge_13(in_t, exterior_derivative(in_t));
    const Jet lj = lam.eval(r_in), fj = f.eval(r_in);
    const double want_in =
        t * r_in *
        (2.0 * ((1.0 - lj.value()) + t * (1.0 + fj.value())) -
         r_in * (t * fj.derivative(1) - lj.derivative(1)));
    CHECK(rel(w_in.w.value(p_in), want_in) < 1e-12);

    ChartOneForm out;
    out.chart = "N0";
    out.c[0] = ChartCoeff::of_axis(0, psub(pconst(1.0), del.expr));
    out.c[1] = ChartCoeff::of_axis(0, del.expr);
    const ChartOneForm out_t = build_alpha_t(out, f, t);
    const double r_out = 1.0 + 2.0 * kEps * u(rng);
    const Point3 p_out{r_out, u(rng), u(rng)};
    const ChartThreeForm w_out = wedge_13(out_t, exterior_derivative(out_t));
    const Jet dj = del.eval(r_out), fo = f.eval(r_out);
    const double want_out =
        t * (-fo.derivative(1) * (dj.value() + t * r_out * r_out) +
             (1.0 + fo.value()) * (2.0 * t * r_out + dj.derivative(1)));
    CHECK(rel(w_out.w.value(p_out), want_out) < 1e-12);
  }
}

TEST_CASE("wedge_13 is bilinear and associates with scalar multiples") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ScalarProfile f = make_f(kIota, kRMax);
  const ChartOneForm a = alpha_inner(lam);
  const ChartOneForm b = build_alpha_t(a, f, 0.07);
  const ChartTwoForm db = exterior_derivative(b);
  const ChartTwoForm da = exterior_derivative(a);
  std::mt19937_64 rng(57);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng), s2 = u(rng);
    const Point3 p{0.05 + 0.2 * std::abs(u(rng)), u(rng), u(rng)};
    const double lhs = wedge_13(add(scaled(a, s), scaled(b, s2)), db).w.value(p);
    const double rhs = s * wedge_13(a, db).w.value(p) + s2 * wedge_13(b, db).w.value(p);
    CHECK(rel(lhs, rhs) < 1e-13);
    const double sa = wedge_13(scaled(a, s), da).w.value(p);
    CHECK(rel(sa, s * wedge_13(a, da).w.value(p)) < 1e-13);
  }
}

TEST_CASE("pullback under the identity map is the identity") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ChartOneForm w = alpha_inner(lam);
  const ChartOneForm back = pullback(ChartMap::identity("N0"), w);
  for (double r : {0.2, 0.7, 1.1}) {
    const Point3 p{r, 0.4, 2.2};
    for (int c = 0; c < 3; ++c) CHECK(back.c[c].value(p) == w.c[c].value(p));
  }
}

TEST_CASE("Psi pulls the displayed collar form back to dtheta - t r dphi") {
  const double t = 0.05;
  ChartOneForm beta;
  beta.chart = "collar";
  beta.c[2] = ChartCoeff::constant(1.0);                              // dz
  beta.c[1] = ChartCoeff::of_axis(0, pshift(pcoord(), 1.0 + kEps), t); // t(1+eps+s) dtheta_p
  const ChartMap psi = glue_map(kEps, "N0", "collar");
  const ChartOneForm pb = pullback(psi, beta);
  for (double r : {1.0 + kEps, 1.15, 1.0 + 2 * kEps}) {
    const Point3 p{r, 0.3, 0.8};
    CHECK(pb.c[0].value(p) == 0.0);
    CHECK(rel(pb.c[1].value(p), 1.0) < 1e-15);          // dtheta
    CHECK(rel(pb.c[2].value(p), -t * r) < 1e-14);       // -t r dphi
    CHECK(rel(pb.c[2].jet(p, 0).derivative(1), -t) < 1e-14);
  }
}

TEST_CASE("Psi* dz = dtheta, cross-checked by the jacobian-transpose oracle") {
  const ChartMap psi = glue_map(kEps, "N0", "collar");
  ChartOneForm dz;
  dz.chart = "collar";
  dz.c[2] = ChartCoeff::constant(1.0);
  ChartOneForm w = dz;
  w.c[1] = ChartCoeff::of_axis(0, pshift(pcoord(), 1.0 + kEps), 0.3);
  const ChartOneForm pb_dz = pullback(psi, dz);
  const ChartOneForm pb_w = pullback(psi, w);
  const Mat3 J = psi.jacobian();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Point3 p{1.0 + kEps + kEps * u(rng), 6.28 * u(rng), 6.28 * u(rng)};
    CHECK(pb_dz.c[0].value(p) == 0.0);
    CHECK(pb_dz.c[1].value(p) == 1.0);
    CHECK(pb_dz.c[2].value(p) == 0.0);
    const Point3 q = psi.forward(p);
    for (int j = 0; j < 3; ++j) {
      double want = 0.0;
      for (int k = 0; k < 3; ++k) want += J[k][j] * w.c[k].value(q);
      CHECK(rel(pb_w.c[j].value(p), want) < 1e-14);
    }
  }
}

TEST_CASE("contact margins: foliation form, deformed form, interpolation form") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ScalarProfile f = make_f(kIota, kRMax);
  const ChartOneForm alpha = alpha_inner(lam);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Point3 p{1e-3 + u(rng) * (1.0 - 1e-3), 6.28 * u(rng), 6.28 * u(rng)};
    CHECK(contact_margin(alpha, p) == 0.0);
  }

  const double t = 0.05;
  const ChartOneForm at = build_alpha_t(alpha, f, t);
  const Point3 p{0.5, 0.0, 0.0};
  const Jet lj = lam.eval(0.5), fj = f.eval(0.5);
  const double oracle = t * 0.5 *
                        (2.0 * ((1.0 - lj.value()) + t * (1.0 + fj.value())) -
                         0.5 * (t * fj.derivative(1) - lj.derivative(1)));
  const double got = contact_margin(at, p);
  CHECK(got > 0.0);
  CHECK(rel(got, oracle) < 1e-13);

  const InterpolationPair gh = make_interpolation_gh(t, kEps, f);
  const ChartOneForm gamma = build_interp_form(gh.g, gh.h, "N0");
  for (double r : {1.11, 1.15, 1.19}) {
    const Jet g = gh.g.eval(r), h = gh.h.eval(r);
    CHECK(rel(contact_margin(gamma, {r, 0.0, 0.0}),
              g.value() * h.derivative(1) - h.value() * g.derivative(1)) < 1e-14);
  }
}

TEST_CASE("d of d vanishes for every constructed 1-form") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ScalarProfile f = make_f(kIota, kRMax);
  const ChartOneForm at = build_alpha_t(alpha_inner(lam), f, 0.07);

  // a deliberately non-separable test form as well
  ChartOneForm mixed;
  mixed.chart = "N0";
  mixed.c[2] = ChartCoeff::product({pexp(pscale(pcoord(), 0.3)), psin(pcoord()), nullptr}, 0.8);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ChartOneForm *cases[] = {&at, &mixed};
  for (const ChartOneForm *w : cases) {
    const ChartThreeForm dd = exterior_derivative(exterior_derivative(*w));
    for (int i = 0; i < 1000; ++i) {
      const Point3 p{0.1 + 0.9 * u(rng), 6.28 * u(rng), 6.28 * u(rng)};
      CHECK(std::abs(dd.w.value(p)) <= 1e-12);
    }
  }
}

TEST_CASE("wedge of a 1-form with itself vanishes") {
  const ScalarProfile lam = make_lambda(kRMax);
  const ScalarProfile f = make_f(kIota, kRMax);
  const ChartOneForm at = build_alpha_t(alpha_inner(lam), f, 0.05);
  const ChartTwoForm sq = wedge_11(at, at);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Point3 p{1e-3 + u(rng), 6.28 * u(rng), 6.28 * u(rng)};
    CHECK(std::abs(sq.A.value(p)) <= 1e-15);
    CHECK(std::abs(sq.B.value(p)) <= 1e-15);
    CHECK(std::abs(sq.C.value(p)) <= 1e-15);
  }
}

TEST_CASE("non-finite evaluation reports the failing point") {
  ChartOneForm w;
  w.chart = "N0";
  w.c[2] = ChartCoeff::of_axis(0, pdiv(pconst(1.0), pcoord())); // 1/r dphi
  CHECK_THROWS_WITH_AS(contact_margin(w, {0.0, 0.25, 0.5}),
                       doctest::Contains("(0, 0.25, 0.5)"), std::runtime_error);
  CHECK(contact_margin(w, {0.5, 0.0, 0.0}) == 0.0);
}

TEST_CASE("pullback is natural: d(Psi* w) = Psi*(dw)") {
  const ChartMap psi = glue_map(kEps, "N0", "collar");
  ChartOneForm beta;
  beta.chart = "collar";
  beta.c[2] = ChartCoeff::constant(1.0);
  beta.c[1] = ChartCoeff::of_axis(0, pmul(pshift(pcoord(), 1.0 + kEps), pcoord()), 0.4);
  beta.c[0] = ChartCoeff::of_axis(0, pexp(pscale(pcoord(), -1.0)), 0.2);

  const ChartTwoForm d_after = exterior_derivative(pullback(psi, beta));
  const ChartTwoForm db = exterior_derivative(beta);
  // transport d(beta) through the signed permutation by hand: basis 2-forms
  // map with the sign of the corresponding axis pair.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Point3 p{1.0 + kEps + kEps * u(rng), 6.28 * u(rng), 6.28 * u(rng)};
    const Point3 q = psi.forward(p);
    // Psi*(dthp^dz) = dtheta^dphi, Psi*(dz^ds) = -dr^dtheta, Psi*(ds^dthp) = dphi^dr
    CHECK(rel(d_after.A.value(p), db.A.value(q)) < 1e-9);
    CHECK(rel(d_after.B.value(p), db.C.value(q)) < 1e-9);
    CHECK(rel(d_after.C.value(p), -db.B.value(q)) < 1e-9);
  }
}
