// End-to-end tests driving the installed CLI binary through a shell. The
// binary path arrives via the QDSIM_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

const char* kCli = QDSIM_CLI_PATH;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_all(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// Scratch directory shared by every case in this binary; wiped at exit.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("qdsim_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

struct ScratchCleanup {
  ~ScratchCleanup() {
    std::error_code ec;
    fs::remove_all(scratch_dir(), ec);
  }
} cleanup;

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = env + quoted(kCli) + " " + args + " > " +
                          quoted(out.string()) + " 2> " + quoted(err.string());
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_all(out);
  result.err = read_all(err);
  return result;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (const char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("selftest passes") {
  const RunResult r = run_cli("selftest --seed 7");
  CHECK(r.code == 0);
  CHECK(r.err.find("[FAIL]") == std::string::npos);
  CHECK(r.err.find("[ok]") != std::string::npos);
}

TEST_CASE("selftest runs on the scalar kernels too") {
  const RunResult r = run_cli("selftest --seed 7 --kernel scalar");
  CHECK(r.code == 0);
  CHECK(r.err.find("kernels=scalar") != std::string::npos);
}

TEST_CASE("QDSIM_KERNELS picks the default; --kernel still wins") {
  const RunResult env_only =
      run_cli("selftest --seed 7", "QDSIM_KERNELS=scalar ");
  CHECK(env_only.code == 0);
  CHECK(env_only.err.find("kernels=scalar") != std::string::npos);

  const RunResult flag_wins =
      run_cli("selftest --seed 7 --kernel auto", "QDSIM_KERNELS=scalar ");
  CHECK(flag_wins.code == 0);
  CHECK(flag_wins.err.find("kernels=scalar") == std::string::npos);
}

TEST_CASE("certify is byte-deterministic and reports to stdout by default") {
  const std::string args = "certify --N 6 --d 2 --depth 3 --m 2 --seed 11";
  const RunResult first = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.out.rfind("realization,t,m,alpha,", 0) == 0);
  CHECK(count_lines(first.out) == 1 + 4);  // header + t = 0..3
  CHECK(first.err.find("0 violation(s)") != std::string::npos);

  const RunResult second = run_cli(args);
  CHECK(second.out == first.out);

  // --out routes the same bytes into a file
  const fs::path csv = scratch_dir() / "certify.csv";
  const RunResult third = run_cli(args + " --out " + quoted(csv.string()));
  CHECK(third.code == 0);
  CHECK(read_all(csv) == first.out);
}

TEST_CASE("bad arguments exit with the usage code") {
  CHECK(run_cli("certify --N 7 --depth 2").code == 2);       // odd chain
  CHECK(run_cli("certify --N 8 --depth 2").code == 2);       // wrong parity
  CHECK(run_cli("certify --alpha 1.0 --N 6").code == 2);     // alpha = 1
  CHECK(run_cli("certify --no-such-flag").code == 2);
  CHECK(run_cli("").code == 2);                              // subcommand required
  CHECK(run_cli("certify --N 6 --depth 1 --kernel mmx").code == 2);
  CHECK(run_cli("certify --N 6 --depth 1 --format yaml").code == 2);
}

TEST_CASE("config files fill in defaults but explicit flags win") {
  const fs::path cfg = scratch_dir() / "run.json";
  write_all(cfg, R"({"depth": 2, "seed": 9, "N": 6})");

  const RunResult base = run_cli("certify --config " + quoted(cfg.string()));
  REQUIRE(base.code == 0);
  CHECK(count_lines(base.out) == 1 + 3);  // depth 2 from the config

  const RunResult override_run =
      run_cli("certify --config " + quoted(cfg.string()) + " --depth 3");
  REQUIRE(override_run.code == 0);
  CHECK(count_lines(override_run.out) == 1 + 4);
  CHECK(override_run.out.find("\n0,3,") != std::string::npos);

  const fs::path bad = scratch_dir() / "bad.json";
  write_all(bad, R"({"depht": 2})");  // typo must be caught, not ignored
  CHECK(run_cli("certify --config " + quoted(bad.string())).code == 2);

  const fs::path nested = scratch_dir() / "nested.json";
  write_all(nested, R"({"depth": {"value": 2}})");
  CHECK(run_cli("certify --config " + quoted(nested.string())).code == 2);
}

TEST_CASE("a dumped circuit replays to the identical certificate table") {
  const fs::path circ = scratch_dir() / "circuit.json";
  const fs::path first_csv = scratch_dir() / "first.csv";
  const fs::path replay_csv = scratch_dir() / "replay.csv";
  const std::string common = "certify --N 6 --d 2 --depth 3 --m 2 --seed 13";

  const RunResult dump = run_cli(common + " --dump-circuit " +
                                 quoted(circ.string()) + " --out " +
                                 quoted(first_csv.string()));
  REQUIRE(dump.code == 0);
  REQUIRE(fs::exists(circ));

  const RunResult replay = run_cli(common + " --replay-circuit " +
                                   quoted(circ.string()) + " --out " +
                                   quoted(replay_csv.string()));
  REQUIRE(replay.code == 0);
  CHECK(read_all(replay_csv) == read_all(first_csv));

  // replaying on a mismatched chain is a usage error
  CHECK(run_cli("certify --N 10 --d 2 --depth 3 --m 2 --replay-circuit " +
                quoted(circ.string()))
            .code == 2);
}

TEST_CASE("transport --oracle prints the exact averaged profile") {
  const RunResult r = run_cli("transport --N 4 --d 2 --depth 1 --oracle");
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "t,site,mean_q,stderr,n_samples,seed\n"
        "0,1,0,0,0,1\n"
        "0,2,1,0,0,1\n"
        "0,3,0,0,0,1\n"
        "0,4,0,0,0,1\n"
        "1,1,0.5,0,0,1\n"
        "1,2,0.25,0,0,1\n"
        "1,3,0.25,0,0,1\n"
        "1,4,0,0,0,1\n");
}

TEST_CASE("transport sampling is reproducible and fits on request") {
  const std::string args =
      "transport --N 6 --d 2 --depth 2 --realizations 3 --seed 17";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args + " --threads 2");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);  // thread count must not leak into the estimates

  const fs::path fit = scratch_dir() / "fit.json";
  const RunResult c = run_cli(
      "transport --N 6 --d 2 --depth 2 --m 4 --realizations 3 --seed 17 "
      "--fit-out " +
      quoted(fit.string()));
  REQUIRE(c.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(read_all(fit));
  CHECK(doc.contains("slope"));
  CHECK(doc.contains("slope_std_error"));
  CHECK(doc.at("n_points").get<int>() >= 1);
}

TEST_CASE("sprime emits one row per layer and realization") {
  const RunResult r =
      run_cli("sprime --N 6 --d 2 --depth 3 --m 2 --seed 19 --realizations 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("realization,t,m,p_value,", 0) == 0);
  CHECK(count_lines(r.out) == 1 + 2 * 3);
}

TEST_CASE("json output parses and carries the log convention") {
  const RunResult r = run_cli("certify --N 6 --depth 1 --seed 23 --format json");
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("meta").at("log_base") == "e");
  REQUIRE(doc.at("rows").size() == 2);
  CHECK(doc["rows"][0]["holds"] == true);

  const RunResult s =
      run_cli("simulate --N 6 --depth 2 --seed 23 --format json --mode scaling");
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out).at("rows").size() == 3);
}
