#include <doctest.h>

#include <confoliation/config.hpp>
#include <confoliation/render.hpp>
#include <confoliation/verify.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace confoliation;
namespace fs = std::filesystem;

namespace {

const char *kCli = CONFOLIATION_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir(const std::string &name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string &args) {
  const int rc = std::system((std::string(kCli) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

void write(const fs::path &p, const std::string &s) {
  std::ofstream out(p);
  out << s;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tiny_config_json(const std::string &out_dir, const std::string &extra = "") {
  return "{\"grid\": {\"n_r\": 24, \"n_theta\": 6, \"n_phi\": 6, \"n_cyl\": 10},"
         "\"t_sweep\": [0.05], \"out_dir\": \"" +
         out_dir + "\"" + extra + "}";
}

} // namespace

TEST_CASE("config validation: unknown keys and invalid values are rejected") {
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"epsilom", 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"epsilon", -0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"iota", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"page", "torus"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"twists", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"t_sweep", {0.1, 0.05}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json{{"grid", {{"n_x", 4}}}}), std::invalid_argument);
  const RunConfig ok = parse_config(nlohmann::json::object());
  CHECK(ok.assembly.epsilon == doctest::Approx(0.1));
  CHECK(ok.assembly.t_sweep.size() == 5);
}

TEST_CASE("cli verify: default config passes with exit 0 and writes reports") {
  TempDir dir("confoliation_cli_verify");
  const fs::path cfg = dir.path / "config.json";
  write(cfg, tiny_config_json(dir.path.string()));
  CHECK(run("verify --config " + cfg.string()) == 0);
  const auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report.at("overall_pass") == true);
  CHECK(report.at("checks").size() > 0);
  const std::string csv = slurp(dir.path / "margins.csv");
  CHECK(csv.rfind("t,region,check,margin,pass", 0) == 0);
}

TEST_CASE("cli verify: invalid config exits 2") {
  TempDir dir("confoliation_cli_badcfg");
  const fs::path cfg = dir.path / "config.json";
  write(cfg, "{\"epsilon\": -1.0}");
  CHECK(run("verify --config " + cfg.string()) == 2);
  CHECK(run("verify --config " + (dir.path / "missing.json").string()) == 2);
}

TEST_CASE("cli verify: variant with --expect-unsupported exits 0, without it exits 1") {
  TempDir dir("confoliation_cli_variant");
  const fs::path cfg = dir.path / "config.json";
  write(cfg, tiny_config_json(dir.path.string()));
  CHECK(run("verify --config " + cfg.string() + " --variant page-flip --expect-unsupported") == 0);
  CHECK(run("verify --config " + cfg.string() + " --variant page-flip") == 1);
}

TEST_CASE("cli slice: emits an SVG with segments and region rings") {
  TempDir dir("confoliation_cli_slice");
  const fs::path cfg = dir.path / "config.json";
  write(cfg, tiny_config_json(dir.path.string()));
  const fs::path svg = dir.path / "slice.svg";
  CHECK(run("slice --config " + cfg.string() + " --plane phi --value 0 --t 0 --out " +
            svg.string()) == 0);
  const std::string doc = slurp(svg);
  CHECK(doc.rfind("<svg", 0) == 0);
  size_t lines = 0;
  for (size_t pos = doc.find("<line"); pos != std::string::npos; pos = doc.find("<line", pos + 1))
    ++lines;
  CHECK(lines > 200);
  CHECK(doc.find("<circle") != std::string::npos);

  // out-of-range slice value is a config error
  CHECK(run("slice --config " + cfg.string() + " --plane z --value 7 --t 0 --out " +
            svg.string()) == 2);

  // the deformed and variant slices differ from the foliation slice
  const GlobalFormFamily fam = assemble_global(parse_config(
      nlohmann::json::parse(tiny_config_json(dir.path.string()))).assembly);
  const std::string s0 = render_slice(fam, SlicePlane::Phi, 0.0, 0.0);
  const std::string st = render_slice(fam, SlicePlane::Phi, 0.0, 0.05);
  CHECK(s0 != st);
}

TEST_CASE("cli export: row counts and margin round trip") {
  TempDir dir("confoliation_cli_export");
  const fs::path cfg = dir.path / "config.json";
  write(cfg, tiny_config_json(dir.path.string()));
  CHECK(run("export --config " + cfg.string()) == 0);

  const RunConfig rc =
      parse_config(nlohmann::json::parse(tiny_config_json(dir.path.string())));
  const GlobalFormFamily fam = assemble_global(rc.assembly);

  const std::string csv = slurp(dir.path / "N0_core.csv");
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  REQUIRE(rows.size() ==
          1 + static_cast<size_t>(rc.assembly.n_r) * rc.assembly.n_theta * rc.assembly.n_phi);

  // recompute the margin of the second data row from its coordinates
  std::istringstream row(rows[2]);
  std::string tok;
  std::vector<double> vals;
  while (std::getline(row, tok, ',')) vals.push_back(std::stod(tok));
  REQUIRE(vals.size() == 7); // x0,x1,x2,c0,c1,c2,margin_t0.05
  const double again =
      contact_margin(fam.piece("N0:core").at(0.05), {vals[0], vals[1], vals[2]});
  CHECK(std::abs(again - vals[6]) <= 1e-12);

  // unwritable output directory is an I/O error
  const fs::path blocker = dir.path / "blocker";
  write(blocker, "");
  CHECK(run("export --config " + cfg.string() + " --out-dir " +
            (blocker / "sub").string()) == 3);

  // empty sweep: margin columns absent
  TempDir dir2("confoliation_cli_export2");
  const fs::path cfg2 = dir2.path / "config.json";
  write(cfg2, "{\"grid\": {\"n_r\": 6, \"n_theta\": 4, \"n_phi\": 4, \"n_cyl\": 6},"
              "\"t_sweep\": [], \"out_dir\": \"" + dir2.path.string() + "\"}");
  CHECK(run("export --config " + cfg2.string()) == 0);
  const std::string csv2 = slurp(dir2.path / "N0_core.csv");
  CHECK(csv2.find("margin") == std::string::npos);
}
