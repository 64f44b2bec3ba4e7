#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
  const char* env = std::getenv("SWARMOC_BIN");
  REQUIRE_MESSAGE(env != nullptr, "SWARMOC_BIN must point at the CLI binary");
  return env;
}

int run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const std::string kDeskConfig =
    "N = 4\n"
    "d = 3\n"
    "kappa = 0.5\n"
    "lambda = 0.1\n"
    "T = 1\n"
    "dt = 0.01\n"
    "seed = 3\n"
    "k_max = 30\n";

}  // namespace

TEST_CASE("simulate writes trajectory, metrics and report") {
  TempDir tmp("swarmoc_cli_sim");
  write(tmp.path / "run.cfg", kDeskConfig);
  const int code = run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
                       (tmp.path / "out").string());
  CHECK(code == 0);
  CHECK(fs::exists(tmp.path / "out" / "trajectory.csv"));
  CHECK(fs::exists(tmp.path / "out" / "metrics.csv"));

  const std::string report = slurp(tmp.path / "out" / "report.json");
  CHECK(report.find("\"config.N\": \"4\"") != std::string::npos);
  CHECK(report.find("max_norm_drift") != std::string::npos);

  SUBCASE("reruns are byte-identical") {
    const std::string first = slurp(tmp.path / "out" / "trajectory.csv");
    REQUIRE(run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
                (tmp.path / "out2").string()) == 0);
    CHECK(slurp(tmp.path / "out2" / "trajectory.csv") == first);
  }

  SUBCASE("--seed override changes the body") {
    const std::string first = slurp(tmp.path / "out" / "trajectory.csv");
    REQUIRE(run("simulate --config " + (tmp.path / "run.cfg").string() + " --seed 99 --out " +
                (tmp.path / "out3").string()) == 0);
    CHECK(slurp(tmp.path / "out3" / "trajectory.csv") != first);
  }
}

TEST_CASE("simulate with order 2 emits velocity columns") {
  TempDir tmp("swarmoc_cli_sim2");
  write(tmp.path / "run.cfg", kDeskConfig + "order = 2\nv0_scale = 0.2\n");
  REQUIRE(run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "out").string()) == 0);
  const std::string traj = slurp(tmp.path / "out" / "trajectory.csv");
  CHECK(traj.rfind("t,particle,x0,x1,x2,v0,v1,v2\n", 0) == 0);
  const std::string metrics = slurp(tmp.path / "out" / "metrics.csv");
  CHECK(metrics.rfind("t,position_variance,velocity_variance\n", 0) == 0);
}

TEST_CASE("invalid configs exit 1 before any solve") {
  TempDir tmp("swarmoc_cli_bad");
  write(tmp.path / "bad.cfg", "N = 0\n");
  CHECK(run("simulate --config " + (tmp.path / "bad.cfg").string() + " --out " +
            (tmp.path / "out").string()) == 1);
  CHECK_FALSE(fs::exists(tmp.path / "out" / "trajectory.csv"));

  write(tmp.path / "typo.cfg", "coupling = 0.5\n");
  CHECK(run("simulate --config " + (tmp.path / "typo.cfg").string()) == 1);
  CHECK(run("simulate --config " + (tmp.path / "missing.cfg").string()) == 1);
}

TEST_CASE("optimize writes control and history; consensus stops immediately") {
  TempDir tmp("swarmoc_cli_opt");
  write(tmp.path / "run.cfg", kDeskConfig);
  REQUIRE(run("optimize --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "out").string()) == 0);
  CHECK(fs::exists(tmp.path / "out" / "control.csv"));
  CHECK(fs::exists(tmp.path / "out" / "trajectory.csv"));
  const std::string history = slurp(tmp.path / "out" / "history.csv");
  CHECK(history.rfind("iteration,total,tracking,energy,grad_norm,step_size\n", 0) == 0);
  const std::string report = slurp(tmp.path / "out" / "report.json");
  CHECK(report.find("\"FAILED\": false") != std::string::npos);
  CHECK(report.find("best_cost") != std::string::npos);
}

TEST_CASE("compare pairs controlled and free runs from one seed") {
  TempDir tmp("swarmoc_cli_cmp");
  write(tmp.path / "run.cfg", kDeskConfig);
  REQUIRE(run("compare --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "out").string()) == 0);
  const std::string cmp = slurp(tmp.path / "out" / "compare.csv");
  CHECK(cmp.rfind("t,position_variance_controlled,position_variance_free\n", 0) == 0);
  CHECK(fs::exists(tmp.path / "out" / "trajectory_controlled.csv"));
  CHECK(fs::exists(tmp.path / "out" / "trajectory_free.csv"));

  // both runs start from the same data, so row 0 has equal variances
  std::istringstream rows(cmp);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  const auto comma1 = first.find(',');
  const auto comma2 = first.find(',', comma1 + 1);
  CHECK(first.substr(comma1 + 1, comma2 - comma1 - 1) == first.substr(comma2 + 1));
}

TEST_CASE("gradcheck passes and exits nonzero when sabotaged") {
  TempDir tmp("swarmoc_cli_grad");
  write(tmp.path / "run.cfg",
        "N = 3\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 1\ndt = 0.01\nseed = 1\n"
        "fd_max_coords = 120\n");
  CHECK(run("gradcheck --config " + (tmp.path / "run.cfg").string() + " --out " +
            (tmp.path / "out").string()) == 0);
  const std::string report = slurp(tmp.path / "out" / "gradcheck.json");
  CHECK(report.find("\"pass\": true") != std::string::npos);
  CHECK(report.find("relative_error") != std::string::npos);
  CHECK(report.find("coordinate_subsample") != std::string::npos);

  CHECK(run("gradcheck --flip-sign --config " + (tmp.path / "run.cfg").string() + " --out " +
            (tmp.path / "out_flip").string()) != 0);
  const std::string flipped = slurp(tmp.path / "out_flip" / "gradcheck.json");
  CHECK(flipped.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("single particle: variance column is identically zero, one-row history") {
  TempDir tmp("swarmoc_cli_n1");
  write(tmp.path / "run.cfg",
        "N = 1\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 1\ndt = 0.01\nseed = 4\n");
  REQUIRE(run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "sim").string()) == 0);
  std::istringstream metrics(slurp(tmp.path / "sim" / "metrics.csv"));
  std::string line;
  std::getline(metrics, line);  // header
  while (std::getline(metrics, line)) {
    CHECK(line.substr(line.find(',') + 1) == "0");
  }

  // variance is the whole tracking cost, so a lone particle is already optimal
  REQUIRE(run("optimize --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "opt").string()) == 0);
  const std::string history = slurp(tmp.path / "opt" / "history.csv");
  CHECK(std::count(history.begin(), history.end(), '\n') == 2);  // header + iterate 0
  const std::string control = slurp(tmp.path / "opt" / "control.csv");
  CHECK(control.find("0,0,0\n") != std::string::npos);
}

TEST_CASE("long-horizon simulate shows variance decay toward consensus") {
  TempDir tmp("swarmoc_cli_t40");
  write(tmp.path / "run.cfg",
        "N = 20\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 40\ndt = 0.01\nseed = 6\n"
        "hemisphere = true\n");
  REQUIRE(run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
              (tmp.path / "out").string()) == 0);
  std::istringstream metrics(slurp(tmp.path / "out" / "metrics.csv"));
  std::string header, first, line, last;
  std::getline(metrics, header);
  std::getline(metrics, first);
  while (std::getline(metrics, line)) last = line;
  const double var_first = std::stod(first.substr(first.find(',') + 1));
  const double var_last = std::stod(last.substr(last.find(',') + 1));
  CHECK(var_last < var_first);
  CHECK(var_last <= 1e-3);
}

TEST_CASE("integrator abort exits 2") {
  TempDir tmp("swarmoc_cli_abort");
  write(tmp.path / "run.cfg",
        "N = 2\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 1\ndt = 0.01\nseed = 1\n"
        "order = 2\nv0_scale = 1000\nrenorm = false\n");
  CHECK(run("simulate --config " + (tmp.path / "run.cfg").string() + " --out " +
            (tmp.path / "out").string()) == 2);
}

TEST_CASE("optimizer step-failure exits 3 and marks the report FAILED") {
  TempDir tmp("swarmoc_cli_fail");
  write(tmp.path / "run.cfg",
        "N = 4\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 1\ndt = 0.01\nseed = 5\n"
        "alpha0 = 10000\nalpha_max = 10000\nrenorm = false\nk_max = 50\n");
  CHECK(run("optimize --config " + (tmp.path / "run.cfg").string() + " --out " +
            (tmp.path / "out").string()) == 3);
  const std::string report = slurp(tmp.path / "out" / "report.json");
  CHECK(report.find("\"FAILED\": true") != std::string::npos);
  CHECK(report.find("step-failure") != std::string::npos);
  CHECK(fs::exists(tmp.path / "out" / "history.csv"));  // partial outputs retained
}

TEST_CASE("order 2 gradcheck passes through the CLI") {
  TempDir tmp("swarmoc_cli_grad2");
  write(tmp.path / "run.cfg",
        "N = 3\nd = 3\nkappa = 0.5\nlambda = 0.1\nT = 1\ndt = 0.01\nseed = 2\n"
        "order = 2\nv0_scale = 0.3\nfd_max_coords = 120\n");
  CHECK(run("gradcheck --config " + (tmp.path / "run.cfg").string() + " --out " +
            (tmp.path / "out").string()) == 0);
}
