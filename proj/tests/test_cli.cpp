// Drives the installed CLI binary end to end: exit codes, output files,
// and byte-level determinism for equal seeds.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ELLINT_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ellint_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kUnitDiskSpec = R"({"ellipsoids": [
  {"center": [0, 0], "shape": [[1, 0], [0, 1]]}
]})";

const char* kDisjointSpec = R"({"ellipsoids": [
  {"center": [0, 0], "shape": [[1, 0], [0, 1]]},
  {"center": [5, 0], "shape": [[1, 0], [0, 1]]}
]})";

}  // namespace

TEST_CASE("fuse: all methods of a unit disk return the disk") {
  TempDir tmp;
  const fs::path spec = tmp.path / "spec.json";
  std::ofstream(spec) << kUnitDiskSpec;
  const int rc = run_cli("fuse --input " + spec.string() + " --out " +
                         tmp.path.string() + " --method all");
  CHECK(rc == 0);
  int results = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path))
    if (entry.path().filename().string().rfind("result_", 0) == 0) ++results;
  CHECK(results == 8);
  const std::string dec = slurp(tmp.path / "result_decoupled.json");
  CHECK(dec.find("\"objective\"") != std::string::npos);
}

TEST_CASE("fuse: malformed JSON exits 2") {
  TempDir tmp;
  const fs::path spec = tmp.path / "bad.json";
  std::ofstream(spec) << "{broken";
  CHECK(run_cli("fuse --input " + spec.string() + " --out " +
                tmp.path.string()) == 2);
}

TEST_CASE("fuse: disjoint members exit 3 for the inscribed method") {
  TempDir tmp;
  const fs::path spec = tmp.path / "disjoint.json";
  std::ofstream(spec) << kDisjointSpec;
  CHECK(run_cli("fuse --input " + spec.string() + " --out " +
                tmp.path.string() + " --method inscribed") == 3);
}

TEST_CASE("static-demo: determinism and CSV shape") {
  TempDir tmp;
  const fs::path a = tmp.path / "a";
  const fs::path b = tmp.path / "b";
  CHECK(run_cli("static-demo --runs 3 --seed 7 --out " + a.string()) == 0);
  CHECK(run_cli("static-demo --runs 3 --seed 7 --out " + b.string()) == 0);
  CHECK(slurp(a / "table.csv") == slurp(b / "table.csv"));
  CHECK(slurp(a / "intersection.svg") == slurp(b / "intersection.svg"));
  const std::string csv = slurp(a / "table.csv");
  CHECK(csv.rfind("method,mean_logdet,mean_wall_seconds\n", 0) == 0);
  CHECK(csv.find("decoupled") != std::string::npos);
  CHECK(csv.find("recursive") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);  // LF endings only
}

TEST_CASE("track: single step, single run") {
  TempDir tmp;
  CHECK(run_cli("track --runs 1 --steps 1 --seed 3 --out " +
                tmp.path.string()) == 0);
  const std::string csv = slurp(tmp.path / "metrics.csv");
  CHECK(csv.rfind("step,rmse_sensor1,rmse_sensor2,rmse_sensor3,"
                  "rmse_fused_dec,rmse_fused_ci,vol_sensor1,vol_sensor2,"
                  "vol_sensor3,vol_fused_dec,vol_fused_ci\n",
                  0) == 0);
  // header plus exactly one data row
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(fs::exists(tmp.path / "rmse.svg"));
  CHECK(fs::exists(tmp.path / "volume.svg"));
}

TEST_CASE("plot renders a spec") {
  TempDir tmp;
  const fs::path spec = tmp.path / "spec.json";
  std::ofstream(spec) << kUnitDiskSpec;
  CHECK(run_cli("plot --input " + spec.string() + " --out " + tmp.path.string() +
                " --method none") == 0);
  const std::string svg = slurp(tmp.path / "spec.svg");
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("verify: small grid passes, fault injection and strict tol fail") {
  CHECK(run_cli("verify --instances 4 --seed 11") == 0);
  CHECK(run_cli("verify --instances 4 --seed 11 --inject-fault") == 1);
  // a 1e-12 Prop-1 tolerance is below the solver's path accuracy
  CHECK(run_cli("verify --instances 4 --seed 11 --tol 1e-12") == 1);
}
