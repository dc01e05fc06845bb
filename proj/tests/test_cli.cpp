#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("IRBATH_CLI");
  REQUIRE_MESSAGE(p != nullptr, "IRBATH_CLI must point at the irbath binary");
  return p;
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / "irbath_cli_test";
  fs::create_directories(d);
  return d;
}

fs::path write_config(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

Run run(const std::string& args) {
  Run r;
  std::string cmd = cli() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kTwoSlit = R"({"m": 1, "T": 0, "Lambda": 0.5, "d": 2.5e6, "L": 2.5e8, "k": 0.01})";
const char* kKernel =
    R"({"m": 1, "T": 1e-4, "Lambda": 0.1, "q": [1e-4, 0, 0], "p": [0, 1e-3, 0], "Tt": [10, 100], "points": 6})";

}  // namespace

TEST_CASE("two-slit run at zero temperature") {
  auto cfg = write_config("twoslit.json", kTwoSlit);
  auto out = scratch() / "twoslit_out";
  auto r = run("twoslit --config " + cfg.string() + " --out " + out.string());
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["scenario"] == "twoslit");
  CHECK(j["result"]["visibility"].get<double>() == 1.0);
  CHECK(fs::exists(out / "twoslit_pattern.csv"));
}

TEST_CASE("kernel run reports the slope ratio") {
  auto cfg = write_config("irkernel.json", kKernel);
  auto r = run("irkernel --config " + cfg.string() + " --out " + (scratch() / "irkernel_out").string());
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["result"].contains("slope_ratio"));
  CHECK(j["result"]["slope_ratio"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("output does not depend on the thread count") {
  auto cfg = write_config("irkernel.json", kKernel);
  auto a = run("irkernel --config " + cfg.string() + " --out " + (scratch() / "t1").string() + " --threads 1");
  auto b = run("irkernel --config " + cfg.string() + " --out " + (scratch() / "t8").string() + " --threads 8");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("flags override the config file") {
  auto cfg = write_config("twoslit.json", kTwoSlit);
  auto r = run("twoslit --config " + cfg.string() + " --out " + (scratch() / "seeded").string() + " --seed 7");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["seed"].get<std::uint64_t>() == 7);
}

TEST_CASE("exit codes") {
  auto out = (scratch() / "err_out").string();
  auto broken = write_config("broken.json", "{\"T\": ");
  CHECK(run("twoslit --config " + broken.string() + " --out " + out).code == 2);
  auto unit = write_config("unit.json", R"({"T": {"value": 300, "unit": "furlong"}, "d": 1, "L": 1000, "k": 0.01})");
  CHECK(run("twoslit --config " + unit.string() + " --out " + out).code == 2);
  auto geom = write_config("geom.json", R"({"d": 1, "L": 10, "k": 0.01})");
  CHECK(run("twoslit --config " + geom.string() + " --out " + out).code == 2);
  CHECK(run("twoslit --config " + (scratch() / "missing.json").string() + " --out " + out).code == 4);
  auto cfg = write_config("twoslit.json", kTwoSlit);
  auto blocker = write_config("not_a_dir", "x");
  CHECK(run("twoslit --config " + cfg.string() + " --out " + (blocker / "sub").string()).code == 4);
  CHECK(run("nonsense").code == 2);
}
