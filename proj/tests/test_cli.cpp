// Runs the cellimit-cli executable end to end.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CELLIMIT_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(CELLIMIT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "cellimit_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("moments") {
  const Run r = run("moments --n 10 --margins 4,5,6");
  CHECK(r.code == 0);
  CHECK(r.out.find("146/225") != std::string::npos);
  CHECK(r.out.find("6/5") != std::string::npos);
  const Run two = run("moments --spec " + data("three_collectors.json") + " --format json");
  CHECK(two.code == 0);
  CHECK(nlohmann::json::parse(two.out)["moments"][1]["V"] == "2/3");
  const Run small = run("moments --n 10 --margins 4,5 --format csv");
  CHECK(small.out.find("2,2,0.66666666666666663,2,2/3") != std::string::npos);
}

TEST_CASE("validation errors exit with 2 and leave no output") {
  const fs::path out = scratch() / "bad_moments.txt";
  fs::remove(out);
  const Run r = run("moments --n 10 --margins 4,11 --out " + out.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("MarginOutOfRange") != std::string::npos);
  CHECK(!fs::exists(out));
  CHECK(run("simulate --n 4 --margins 2,2,2 --reps 10").code == 2);
  CHECK(run("paper-tables --which 5 --n-grid 10000").code == 2);
  CHECK(run("moments --spec /nonexistent.json").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("moments --spec " + data("small_table.json")).code == 2);
}

TEST_CASE("resource limits exit with 3") {
  const Run r = run("pmf --n 10000000 --margins 5000000,5000000");
  CHECK(r.code == 3);
  CHECK(r.out.find("ResourceLimit") != std::string::npos);
}

TEST_CASE("pmf") {
  const Run r = run("pmf --n 4 --margins 2,2,2 --exact");
  CHECK(r.code == 0);
  CHECK(r.out == "x,prob\n0,19/36\n1,4/9\n2,1/36\n");
  const Run t = run("pmf --spec " + data("small_table.json") + " --cell 3,1,1 --format json");
  CHECK(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["mode"] == "logfloat");
  CHECK(run("pmf --n 4 --margins 2,2 --exact --logfloat").code == 2);
}

TEST_CASE("classify example cell") {
  const Run r = run("classify --growth " + data("example_table2.json") + " --cell 3,1,1 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["regime"] == "PoissonI");
  CHECK(j["rho"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  const Run text = run("classify --growth " + data("two_thirds.json"));
  CHECK(text.code == 0);
  CHECK(text.out.find("Normal") != std::string::npos);
}

TEST_CASE("simulate is reproducible across worker counts") {
  const fs::path dir = scratch();
  std::string hist;
  std::string summary;
  for (const int w : {1, 4, 16}) {
    const std::string prefix = (dir / ("sim_w" + std::to_string(w))).string();
    const Run r = run("simulate --n 4 --margins 2,2,2 --reps 100000 --seed 7 --workers " + std::to_string(w) +
                      " --out " + prefix);
    REQUIRE(r.code == 0);
    const std::string h = slurp(prefix + "_histogram.csv");
    const std::string s = slurp(prefix + "_summary.json");
    if (w == 1) {
      hist = h;
      summary = s;
      CHECK(nlohmann::json::parse(s)["tv_to_exact"].get<double>() < 0.01);
    }
    CHECK(h == hist);
    CHECK(s == summary);
  }
}

TEST_CASE("diagnose normal cell") {
  const Run r = run("diagnose --growth " + data("example_table3.json") + " --cell 2,2,2 --n 10000 --format json");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["ks"].get<double>() <= 0.05);
  const Run grid = run("diagnose --growth " + data("example_table2.json") + " --cell 3,2,2 --n-grid 10000,1000000");
  CHECK(grid.code == 0);
  CHECK(grid.out.find("n = 1000000") != std::string::npos);
}

TEST_CASE("example tables") {
  const Run r = run("paper-tables --which 3 --n-grid 10000 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  int normals = 0;
  for (const auto& c : j["cells"]) normals += c["regime"] == "Normal" ? 1 : 0;
  CHECK(normals == 8);
  const Run text = run("example-tables --which 2 --n-grid 10000");
  CHECK(text.out.find("X - n + 3*n^(1/2) + n^(1/4) -> Pois(3)") != std::string::npos);
}
