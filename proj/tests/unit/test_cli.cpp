#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cuspgeom_cli/commands.hpp"

namespace fs = std::filesystem;
using cuspgeom::cli::run;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("cuspgeom_cli_" + tag + "_" + std::to_string(std::hash<std::string>{}(tag) % 100000));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const fs::path& dir, std::vector<std::string> args) {
  args.insert(args.begin(), {"cuspgeom", "--out", dir.string()});
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("fig8 verify reports") {
  TempDir d("verify");
  REQUIRE(invoke(d.path, {"fig8", "verify", "--t", "1/2"}).code == 0);
  auto j = nlohmann::json::parse(slurp(d.path / "fig8_verify.json"));
  CHECK(j["relation_exact"] == true);
  CHECK(j["obstruction"] == false);
  REQUIRE(invoke(d.path, {"fig8", "verify", "--t", "1/4"}).code == 0);
  j = nlohmann::json::parse(slurp(d.path / "fig8_verify.json"));
  CHECK(j["longitude_spectrum"] == nlohmann::json::array({"1/2", "1/2", "1/2", "8"}));
  const auto m = nlohmann::json::parse(slurp(d.path / "manifest.json"));
  CHECK(m["command"] == "fig8 verify");
  CHECK(m.contains("libraries"));
}

TEST_CASE("selftest passes") {
  TempDir d("selftest");
  const Result r = invoke(d.path, {"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);
  CHECK(fs::exists(d.path / "selftest.txt"));
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir a("det_a"), b("det_b");
  const std::vector<std::vector<std::string>> cmds{
      {"fig8", "sweep", "--steps", "5"},
      {"cusp", "volume", "--cutoffs", "10,20", "--method", "mc", "--samples", "2000", "--seed", "11"},
      {"cusp", "displacement", "--levels", "1,2,4"},
  };
  for (const auto& c : cmds) {
    REQUIRE(invoke(a.path, c).code == 0);
    REQUIRE(invoke(b.path, c).code == 0);
  }
  for (const char* f : {"fig8_sweep.csv", "volume_table.csv", "displacement.csv", "volume_table.svg", "displacement.svg"}) {
    INFO(f);
    REQUIRE(fs::exists(a.path / f));
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
  CHECK(slurp(a.path / "manifest.json").find("\"seed\"") != std::string::npos);
}

TEST_CASE("lattice normalize") {
  TempDir d("lattice");
  const nlohmann::json ok = nlohmann::json::parse(R"({
    "A": {"regime":"exact","rows":[["1","0","1","-3/4"],["0","1","1","1/4"],["0","0","1","3/4"],["0","0","0","1"]]},
    "B": {"regime":"exact","rows":[["1","0","1","-3/4"],["0","1","1","1/4"],["0","0","1","3/4"],["0","0","0","1"]]}})");
  std::ofstream(d.path / "same.json") << ok.dump();
  CHECK(invoke(d.path, {"lattice", "normalize", "--in", (d.path / "same.json").string()}).code == 1);

  const nlohmann::json good = nlohmann::json::parse(R"({
    "A": {"regime":"float","rows":[[1,0,0,-1],[0,2.718281828459045,0,0],[0,0,1,0],[0,0,0,1]]},
    "B": {"regime":"float","rows":[[1,0,1,0.5],[0,1,0,0],[0,0,1,1],[0,0,0,1]]}})");
  std::ofstream(d.path / "good.json") << good.dump();
  REQUIRE(invoke(d.path, {"lattice", "normalize", "--in", (d.path / "good.json").string()}).code == 0);
  const auto rep = nlohmann::json::parse(slurp(d.path / "normalization.json"));
  CHECK(rep["sign"] == 1);
  CHECK(rep["residual"].get<double>() < 1e-9);

  std::ofstream(d.path / "bad.json") << "{not json";
  CHECK(invoke(d.path, {"lattice", "normalize", "--in", (d.path / "bad.json").string()}).code == 2);
}

TEST_CASE("domain export writes mesh and slice") {
  TempDir d("export");
  const fs::path obj = d.path / "dp.obj", svg = d.path / "dp.svg";
  REQUIRE(invoke(d.path, {"domain", "export", "--family", "DPrime", "--level", "1", "--obj", obj.string(), "--svg", svg.string()}).code == 0);
  CHECK(slurp(obj).find("\nf ") != std::string::npos);
  CHECK(slurp(svg).find("<polyline") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  TempDir d("usage");
  CHECK(invoke(d.path, {"bogus"}).code == 2);
  CHECK(invoke(d.path, {"fig8", "verify"}).code == 2);
  CHECK(invoke(d.path, {"fig8", "verify", "--t", "zero"}).code == 2);
  CHECK(invoke(d.path, {"fig8", "verify", "--t", "0"}).code == 2);
  CHECK(invoke(d.path, {"cusp", "displacement", "--levels", "4,2"}).code == 2);
  CHECK(invoke(d.path, {"--version"}).code == 0);
}
