#include <confoliation/config.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace confoliation {

namespace {

void reject_unknown(const nlohmann::json &j, const std::set<std::string> &known,
                    const std::string &where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

} // namespace

RunConfig parse_config(const nlohmann::json &j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(j,
                 {"epsilon", "iota", "page", "width", "twists", "t_sweep", "grid",
                  "variant", "out_dir", "seed"},
                 "top level");
  RunConfig cfg;
  AssemblyConfig &a = cfg.assembly;
  a.epsilon = j.value("epsilon", a.epsilon);
  a.iota = j.value("iota", a.iota);
  if (j.contains("page")) {
    const std::string p = j.at("page").get<std::string>();
    if (p == "disk") a.page = PageKind::Disk;
    else if (p == "annulus") a.page = PageKind::Annulus;
    else throw std::invalid_argument("config: page must be 'disk' or 'annulus'");
  }
  a.width = j.value("width", a.width);
  a.twists = j.value("twists", a.twists);
  if (j.contains("t_sweep")) {
    a.t_sweep.clear();
    for (const auto &v : j.at("t_sweep")) a.t_sweep.push_back(v.get<double>());
  }
  if (j.contains("grid")) {
    const auto &g = j.at("grid");
    reject_unknown(g, {"n_r", "n_theta", "n_phi", "n_cyl"}, "grid");
    a.n_r = g.value("n_r", a.n_r);
    a.n_theta = g.value("n_theta", a.n_theta);
    a.n_phi = g.value("n_phi", a.n_phi);
    a.n_cyl = g.value("n_cyl", a.n_cyl);
  }
  if (j.contains("variant") && !j.at("variant").is_null()) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "page-flip") a.variant = VariantFlip::Page;
    else if (v == "reeb-flip") a.variant = VariantFlip::Reeb;
    else throw std::invalid_argument("config: variant must be null, 'page-flip' or 'reeb-flip'");
  }
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.seed = j.value("seed", cfg.seed);

  if (!(a.epsilon > 0.0 && a.epsilon <= 0.2))
    throw std::invalid_argument("config: need 0 < epsilon <= 0.2");
  if (!(a.iota > 0.0 && a.iota < 1.0))
    throw std::invalid_argument("config: need 0 < iota < 1");
  if (!(a.width > 0.0)) throw std::invalid_argument("config: width must be positive");
  if (a.page == PageKind::Disk && a.twists != 0)
    throw std::invalid_argument("config: disk page forces twists = 0");
  if (a.page == PageKind::Annulus && !(a.width >= 5.0 * a.epsilon))
    throw std::invalid_argument("config: annulus width must be at least 5*epsilon");
  double prev = 0.0;
  for (double t : a.t_sweep) {
    if (!(t > 0.0)) throw std::invalid_argument("config: t_sweep entries must be positive");
    if (!(t > prev)) throw std::invalid_argument("config: t_sweep must be strictly increasing");
    prev = t;
  }
  for (int n : {a.n_r, a.n_theta, a.n_phi, a.n_cyl})
    if (n < 2) throw std::invalid_argument("config: grid sizes must be at least 2");
  return cfg;
}

RunConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json RunConfig::echo() const {
  const AssemblyConfig &a = assembly;
  nlohmann::json j{{"epsilon", a.epsilon},
                   {"iota", a.iota},
                   {"page", a.page == PageKind::Disk ? "disk" : "annulus"},
                   {"width", a.width},
                   {"twists", a.twists},
                   {"t_sweep", a.t_sweep},
                   {"grid", {{"n_r", a.n_r}, {"n_theta", a.n_theta}, {"n_phi", a.n_phi}, {"n_cyl", a.n_cyl}}},
                   {"out_dir", out_dir},
                   {"seed", seed}};
  switch (a.variant) {
  case VariantFlip::None: j["variant"] = nullptr; break;
  case VariantFlip::Page: j["variant"] = "page-flip"; break;
  case VariantFlip::Reeb: j["variant"] = "reeb-flip"; break;
  }
  return j;
}

} // namespace confoliation
