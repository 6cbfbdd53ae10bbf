#include <confoliation/verify.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace confoliation {

namespace {

struct Extreme {
  double value;
  Point3 at;
};

std::array<int, 3> grid_sizes(const GlobalFormFamily &fam, const Region &r) {
  if (r.kind == RegionKind::Cylinder)
    return {fam.config.n_cyl, fam.config.n_cyl, fam.config.n_cyl};
  return {fam.config.n_r, fam.config.n_theta, fam.config.n_phi};
}

double axis_coord(const Region &r, int axis, int i, int n) {
  const double lo = r.box[axis][0], hi = r.box[axis][1];
  return (n <= 1) ? lo : lo + (hi - lo) * i / (n - 1);
}

// Deterministic parallel scan: slabs along axis 0 merge in index order, ties
// keep the earliest point.
template <class F>
Extreme grid_extreme(const GlobalFormFamily &fam, const Region &r, bool want_min, F f) {
  const auto n = grid_sizes(fam, r);
  const int workers = std::max(1, std::min(worker_count(), n[0]));
  std::vector<Extreme> slab(static_cast<size_t>(n[0]));
  auto run = [&](int i0) {
    Extreme best{want_min ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity(),
                 {0, 0, 0}};
    Point3 p;
    p[0] = axis_coord(r, 0, i0, n[0]);
    for (int i1 = 0; i1 < n[1]; ++i1) {
      p[1] = axis_coord(r, 1, i1, n[1]);
      for (int i2 = 0; i2 < n[2]; ++i2) {
        p[2] = axis_coord(r, 2, i2, n[2]);
        const double v = f(p);
        if (want_min ? v < best.value : v > best.value) best = {v, p};
      }
    }
    slab[static_cast<size_t>(i0)] = best;
  };
  if (workers == 1) {
    for (int i0 = 0; i0 < n[0]; ++i0) run(i0);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i0 = next.fetch_add(1); i0 < n[0]; i0 = next.fetch_add(1)) run(i0);
      });
    for (auto &th : pool) th.join();
  }
  Extreme best = slab[0];
  for (int i0 = 1; i0 < n[0]; ++i0)
    if (want_min ? slab[static_cast<size_t>(i0)].value < best.value
                 : slab[static_cast<size_t>(i0)].value > best.value)
      best = slab[static_cast<size_t>(i0)];
  return best;
}

CheckResult make_result(std::string check, std::string region, double t, double margin,
                        double threshold, bool pass_if_leq, Point3 witness) {
  CheckResult r;
  r.check = std::move(check);
  r.region = std::move(region);
  r.t = t;
  r.margin = margin;
  r.threshold = threshold;
  r.pass_if_leq = pass_if_leq;
  r.pass = pass_if_leq ? (margin <= threshold) : (margin > threshold);
  r.witness = witness;
  return r;
}

struct Fd1 {
  double value;     // Richardson-extrapolated central difference
  double level_gap; // disagreement between the two levels: truncation estimate
};

Fd1 richardson_d1(const std::function<double(double)> &f, double x, double h) {
  auto central = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  const double d1 = central(h), d2 = central(h / 2.0);
  return {(4.0 * d2 - d1) / 3.0, std::abs(d2 - d1)};
}

uint64_t mix_seed(uint64_t seed, const std::string &tag) {
  uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char c : tag) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

} // namespace

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char *env = std::getenv("CONFOLIATION_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

nlohmann::json CheckResult::to_json() const {
  return nlohmann::json{{"check", check},         {"region", region},
                        {"t", t},                 {"margin", margin},
                        {"threshold", threshold}, {"pass_if_leq", pass_if_leq},
                        {"pass", pass},           {"witness", {witness[0], witness[1], witness[2]}}};
}

void VerificationReport::append(std::vector<CheckResult> more) {
  for (auto &c : more) {
    overall = overall && c.pass;
    checks.push_back(std::move(c));
  }
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto &c : checks) cs.push_back(c.to_json());
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : sweep) {
    nlohmann::json contact = nlohmann::json::object(), supported = nlohmann::json::object();
    for (const auto &[k, v] : row.contact) contact[k] = v;
    for (const auto &[k, v] : row.supported) supported[k] = v;
    rows.push_back({{"t", row.t}, {"contact", contact}, {"supported", supported},
                    {"seam_max", row.seam_max}});
  }
  return nlohmann::json{{"config", config_echo},
                        {"checks", cs},
                        {"sweep", rows},
                        {"overall_pass", overall},
                        {"t_max_pass", t_max_pass},
                        {"grid", grid_meta},
                        {"elapsed_seconds", elapsed_seconds}};
}

std::string VerificationReport::margins_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "t,region,check,margin,pass\n";
  for (const auto &c : checks)
    os << c.t << "," << c.region << "," << c.check << "," << c.margin << ","
       << (c.pass ? "true" : "false") << "\n";
  return os.str();
}

std::vector<CheckResult> check_integrability(const GlobalFormFamily &fam) {
  std::vector<CheckResult> out;
  for (const auto &piece : fam.pieces) {
    const auto ext = grid_extreme(fam, piece.region, false, [&](const Point3 &p) {
      return std::abs(contact_margin(piece.base, p));
    });
    out.push_back(make_result("integrability", piece.region.name, 0.0, ext.value,
                              kIntegrabilityTol, true, ext.at));
  }
  return out;
}

std::vector<CheckResult> check_contact(const GlobalFormFamily &fam, double t) {
  std::vector<CheckResult> out;
  for (const auto &piece : fam.pieces) {
    const ChartOneForm w = piece.at(t);
    const auto ext =
        grid_extreme(fam, piece.region, true, [&](const Point3 &p) { return contact_margin(w, p); });
    CheckResult r = make_result("contact", piece.region.name, t, ext.value, 0.0, false, ext.at);
    if (t == 0.0) r.pass = true; // boundary case owned by the integrability check
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> check_supported(const GlobalFormFamily &fam, double t) {
  std::vector<CheckResult> out;
  for (size_t b = 0; b < fam.bindings.size(); ++b) {
    const double lim = binding_limit_coefficient(fam, static_cast<int>(b), t);
    out.push_back(make_result("binding_positivity", fam.bindings[b].chart, t, lim, 0.0,
                              false, {0.0, 0.0, 0.0}));
  }
  for (const auto &piece : fam.pieces) {
    const ChartOneForm w = piece.at(t);
    const auto ext = grid_extreme(fam, piece.region, true, [&](const Point3 &p) {
      return page_restriction_margin(piece, w, p);
    });
    out.push_back(
        make_result("page_restriction", piece.region.name, t, ext.value, 0.0, false, ext.at));
  }
  return out;
}

std::vector<CheckResult> check_seams(const GlobalFormFamily &fam, double t) {
  std::vector<CheckResult> out;
  const int n1 = 8, n2 = 8;
  for (const auto &seam : fam.seams) {
    const Piece &pa = fam.pieces[static_cast<size_t>(seam.piece_a)];
    const Piece &pb = fam.pieces[static_cast<size_t>(seam.piece_b)];
    const ChartOneForm wa = pa.at(t);
    const ChartOneForm wb_here = pullback(seam.a_to_b, pb.at(t));
    double worst = 0.0;
    Point3 witness{seam.a_x0, 0.0, 0.0};
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        Point3 p{seam.a_x0, axis_coord(pa.region, 1, i, n1 + 1),
                 axis_coord(pa.region, 2, j, n2 + 1)};
        for (int c = 0; c < 3; ++c) {
          const Jet ja = wa.c[c].jet(p, 0);
          const Jet jb = wb_here.c[c].jet(p, 0);
          for (int k = 0; k <= 4; ++k) {
            const double d = std::abs(ja.derivative(k) - jb.derivative(k));
            if (d > worst) {
              worst = d;
              witness = p;
            }
          }
        }
      }
    out.push_back(make_result("seam", seam.name, t, worst, kSeamTol, true, witness));
  }
  return out;
}

std::vector<SweepRow> sweep_t(const GlobalFormFamily &fam, const std::vector<double> &ts) {
  std::vector<SweepRow> rows;
  for (double t : ts) {
    SweepRow row;
    row.t = t;
    for (const auto &c : check_contact(fam, t)) row.contact.emplace_back(c.region, c.margin);
    for (const auto &c : check_supported(fam, t)) row.supported.emplace_back(c.region, c.margin);
    row.seam_max = 0.0;
    for (const auto &c : check_seams(fam, t)) row.seam_max = std::max(row.seam_max, c.margin);
    rows.push_back(std::move(row));
  }
  return rows;
}

CheckResult audit_derivatives(const GlobalFormFamily &fam, uint64_t seed) {
  // A finite-difference stencil cannot resolve the tail of a mollifier near
  // its flat junction (the high derivatives outgrow any FD order there), so a
  // sample only counts when the two Richardson levels agree; coverage of the
  // converged samples must stay high.
  double worst = 0.0;
  Point3 witness{0, 0, 0};
  long total = 0, skipped = 0;
  const double h = 1e-5;
  for (const auto &piece : fam.pieces) {
    std::mt19937_64 rng(mix_seed(seed, piece.region.name));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int s = 0; s < 1000; ++s) {
      Point3 p;
      for (int k = 0; k < 3; ++k) {
        const double lo = piece.region.box[k][0], hi = piece.region.box[k][1];
        // keep the FD stencil inside the chart
        p[k] = lo + (hi - lo) * (0.02 + 0.96 * u01(rng));
      }
      const ChartOneForm *forms[] = {&piece.base, &piece.deform};
      for (const ChartOneForm *w : forms)
        for (int c = 0; c < 3; ++c) {
          if (w->c[c].is_zero()) continue;
          for (int axis = 0; axis < 3; ++axis) {
            const double ad = w->c[c].jet(p, axis).derivative(1);
            const Fd1 fd = richardson_d1(
                [&](double x) {
                  Point3 q = p;
                  q[axis] = x;
                  return w->c[c].value(q);
                },
                p[axis], h);
            ++total;
            if (fd.level_gap > 1e-7 * std::max({1.0, std::abs(ad), std::abs(fd.value)})) {
              ++skipped;
              continue;
            }
            const double rel =
                std::abs(ad - fd.value) / std::max({1.0, std::abs(ad), std::abs(fd.value)});
            if (rel > worst) {
              worst = rel;
              witness = p;
            }
          }
        }
    }
  }
  if (total > 0 && skipped * 10 > total) worst = 1.0; // unconverged audit
  return make_result("derivative_audit", "all", 0.0, worst, kAuditTol, true, witness);
}

double refinement_stability(const GlobalFormFamily &fam) {
  GlobalFormFamily fine = fam;
  fine.config.n_r *= 2;
  fine.config.n_theta *= 2;
  fine.config.n_phi *= 2;
  fine.config.n_cyl *= 2;

  auto margins = [](const GlobalFormFamily &f) {
    std::vector<std::pair<double, double>> out; // margin, floor
    for (const auto &c : check_integrability(f)) out.emplace_back(c.margin, kIntegrabilityTol);
    for (double t : f.config.t_sweep) {
      for (const auto &c : check_contact(f, t)) out.emplace_back(c.margin, 1e-10);
      for (const auto &c : check_supported(f, t)) out.emplace_back(c.margin, 1e-10);
    }
    return out;
  };
  const auto coarse = margins(fam);
  const auto refined = margins(fine);
  double worst = 0.0;
  for (size_t i = 0; i < coarse.size(); ++i) {
    const double m1 = coarse[i].first, m2 = refined[i].first;
    const double rel =
        std::abs(m2 - m1) / std::max({std::abs(m1), std::abs(m2), coarse[i].second});
    worst = std::max(worst, rel);
  }
  return worst;
}

double closed_form_agreement(const GlobalFormFamily &fam, int n, uint64_t seed) {
  // The engine margin on N against the two displayed coefficient expressions.
  double worst = 0.0;
  std::mt19937_64 rng(mix_seed(seed, "closed-form"));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double eps = fam.config.epsilon;
  for (size_t b = 0; b < fam.bindings.size(); ++b) {
    const auto &bm = fam.bindings[b];
    const Piece &inner = fam.pieces[4 * b];      // core formula == reeb formula
    const Piece &outer = fam.pieces[4 * b + 2];  // spin
    for (int i = 0; i < n; ++i) {
      const double t = 1e-4 + (0.1 - 1e-4) * u01(rng);
      const bool in = u01(rng) < 0.5;
      double r, expected;
      if (in) {
        r = fam.config.r_min + (1.0 - fam.config.r_min) * u01(rng);
        const Jet lj = bm.lambda.eval(r), fj = bm.f.eval(r);
        expected = t * r *
                   (2.0 * ((1.0 - lj.value()) + t * (1.0 + fj.value())) -
                    r * (t * fj.derivative(1) - lj.derivative(1)));
      } else {
        r = 1.0 + 2.0 * eps * u01(rng);
        const Jet dj = bm.delta.eval(r), fj = bm.f.eval(r);
        expected = t * (-fj.derivative(1) * (dj.value() + t * r * r) +
                        (1.0 + fj.value()) * (2.0 * t * r + dj.derivative(1)));
      }
      const Piece &piece = in ? inner : outer;
      const double got = contact_margin(piece.at(t), {r, 1.0, 2.0});
      const double rel = std::abs(got - expected) /
                         std::max({std::abs(expected), std::abs(got), 1e-300});
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

VerificationReport run_verification(const GlobalFormFamily &fam, uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.grid_meta = {{"n_r", fam.config.n_r},
                   {"n_theta", fam.config.n_theta},
                   {"n_phi", fam.config.n_phi},
                   {"n_cyl", fam.config.n_cyl}};
  rep.append(check_integrability(fam));
  for (double t : fam.config.t_sweep) {
    const size_t before = rep.checks.size();
    rep.append(check_contact(fam, t));
    rep.append(check_supported(fam, t));
    rep.append(check_seams(fam, t));
    bool all_green = true;
    for (size_t i = before; i < rep.checks.size(); ++i) all_green &= rep.checks[i].pass;
    if (all_green) rep.t_max_pass = std::max(rep.t_max_pass, t);
  }
  rep.append({audit_derivatives(fam, seed)});
  rep.sweep = sweep_t(fam, fam.config.t_sweep);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace confoliation
