#include <confoliation/render.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace confoliation {

namespace {

struct Seg {
  double x0, y0, x1, y1;
};

void polar_segment(std::vector<Seg> &segs, double radius, double angle, double d_rad,
                   double d_ang, double len) {
  const double norm = std::hypot(d_rad, radius * d_ang);
  if (!(norm > 1e-14)) return; // slice tangent lies in the kernel: no trace
  const double c = std::cos(angle), s = std::sin(angle);
  const double dx = (d_rad * c - radius * s * d_ang) / norm;
  const double dy = (d_rad * s + radius * c * d_ang) / norm;
  segs.push_back({radius * c - 0.5 * len * dx, radius * s - 0.5 * len * dy,
                  radius * c + 0.5 * len * dx, radius * s + 0.5 * len * dy});
}

std::string svg_document(const std::vector<Seg> &segs, const std::vector<double> &rings,
                         double extent, const std::string &title) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  const double scale = 300.0 / extent;
  auto X = [&](double x) { return 320.0 + scale * x; };
  auto Y = [&](double y) { return 320.0 - scale * y; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
        "viewBox=\"0 0 640 640\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  for (double r : rings)
    os << "<circle cx=\"320\" cy=\"320\" r=\"" << scale * r
       << "\" fill=\"none\" stroke=\"#c04040\" stroke-width=\"1\"/>\n";
  for (const auto &s : segs)
    os << "<line x1=\"" << X(s.x0) << "\" y1=\"" << Y(s.y0) << "\" x2=\"" << X(s.x1)
       << "\" y2=\"" << Y(s.y1) << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string sanitize(std::string s) {
  for (char &c : s)
    if (c == ':' || c == '/') c = '_';
  return s;
}

} // namespace

std::string render_slice(const GlobalFormFamily &fam, SlicePlane plane, double value,
                         double t) {
  const double two_pi = 8.0 * std::atan(1.0);
  const double eps = fam.config.epsilon;
  std::vector<Seg> segs;
  std::vector<double> rings;
  double extent = 1.0;
  std::ostringstream title;

  if (plane == SlicePlane::Phi || plane == SlicePlane::Theta) {
    if (!(value >= 0.0 && value <= two_pi))
      throw std::invalid_argument("slice: angle value outside chart range [0, 2pi]");
    const double r_out = 1.0 + 2.0 * eps;
    rings = {1.0 / 3.0, 1.0, 1.0 + eps, r_out};
    extent = r_out * 1.05;
    const int n_rad = 28, n_ang = 48;
    for (int i = 0; i < n_rad; ++i) {
      const double r = fam.config.r_min + (r_out - fam.config.r_min) * (i + 0.5) / n_rad;
      for (int j = 0; j < n_ang; ++j) {
        const double ang = two_pi * j / n_ang;
        // pick the piece of binding 0 containing r
        const Piece *piece = &fam.pieces[0];
        for (int k = 0; k < 4; ++k)
          if (r >= fam.pieces[static_cast<size_t>(k)].region.box[0][0] &&
              r <= fam.pieces[static_cast<size_t>(k)].region.box[0][1])
            piece = &fam.pieces[static_cast<size_t>(k)];
        const ChartOneForm w = piece->at(t);
        Point3 p;
        double d_rad, d_ang;
        if (plane == SlicePlane::Phi) {
          p = {r, ang, value};
          const double P = w.c[0].value(p), Q = w.c[1].value(p);
          d_rad = Q;
          d_ang = -P;
        } else {
          p = {r, value, ang};
          const double P = w.c[0].value(p), R = w.c[2].value(p);
          d_rad = R;
          d_ang = -P;
        }
        polar_segment(segs, r, ang, d_rad, d_ang, 0.055 * r_out);
      }
    }
    title << "plane field trace, constant-" << (plane == SlicePlane::Phi ? "phi" : "theta")
          << " slice at " << value << ", t = " << t;
  } else {
    if (!(value >= 0.0 && value <= 1.0))
      throw std::invalid_argument("slice: z value outside chart range [0, 1]");
    const Piece &cyl = fam.piece("cylinder");
    const double lo = cyl.region.box[0][0], hi = cyl.region.box[0][1];
    const bool disk = fam.config.page == PageKind::Disk;
    const double offset = disk ? 0.0 : 0.75; // draw the annulus with a hole
    rings = {offset + lo, offset + hi};
    extent = (offset + hi) * 1.05;
    const ChartOneForm w = cyl.at(t);
    const int n_rad = 24, n_ang = 48;
    for (int i = 0; i < n_rad; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / n_rad;
      for (int j = 0; j < n_ang; ++j) {
        const double ang = two_pi * j / n_ang;
        Point3 p{x, ang, value};
        const double P = w.c[0].value(p), Q = w.c[1].value(p);
        polar_segment(segs, offset + x, ang, Q, -P, 0.05 * extent);
      }
    }
    title << "page plane field trace, z = " << value << ", t = " << t;
  }
  return svg_document(segs, rings, extent, title.str());
}

std::vector<std::string> export_fields(const GlobalFormFamily &fam,
                                       const std::string &out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  fs::create_directories(out_dir);
  for (const auto &piece : fam.pieces) {
    const std::string path = out_dir + "/" + sanitize(piece.region.name) + ".csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export: cannot write '" + path + "'");
    out << std::setprecision(17);
    out << "# region=" << piece.region.name << " chart=" << piece.region.chart << "\n";
    out << "# c0,c1,c2 are the 1-form coefficients at t=0"
        << (fam.config.t_sweep.empty() ? "" : "; margin_t* are contact margins") << "\n";
    out << "x0,x1,x2,c0,c1,c2";
    for (double t : fam.config.t_sweep) out << ",margin_t" << t;
    out << "\n";
    const bool cyl = piece.region.kind == RegionKind::Cylinder;
    const int n0 = cyl ? fam.config.n_cyl : fam.config.n_r;
    const int n1 = cyl ? fam.config.n_cyl : fam.config.n_theta;
    const int n2 = cyl ? fam.config.n_cyl : fam.config.n_phi;
    std::vector<ChartOneForm> at_t;
    for (double t : fam.config.t_sweep) at_t.push_back(piece.at(t));
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
          Point3 p;
          const int n[3] = {n0, n1, n2};
          const int idx[3] = {i0, i1, i2};
          for (int k = 0; k < 3; ++k) {
            const double lo = piece.region.box[k][0], hi = piece.region.box[k][1];
            p[k] = (n[k] <= 1) ? lo : lo + (hi - lo) * idx[k] / (n[k] - 1);
          }
          out << p[0] << "," << p[1] << "," << p[2];
          for (int c = 0; c < 3; ++c) out << "," << piece.base.c[c].value(p);
          for (const auto &w : at_t) out << "," << contact_margin(w, p);
          out << "\n";
        }
    files.push_back(path);
  }
  return files;
}

} // namespace confoliation
