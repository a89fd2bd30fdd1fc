// End-to-end tests of the `dimred` command-line tool.  Each case launches the
// real binary (path injected at compile time) and inspects exit codes, stdout
// text, and the files it writes.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "dimred/cmatrix.hpp"
#include "dimred/hartmann.hpp"
#include "dimred/sample_io.hpp"

#ifndef DIMRED_CLI_PATH
#error "DIMRED_CLI_PATH must point at the dimred executable"
#endif
#ifndef DIMRED_DATA_DIR
#error "DIMRED_DATA_DIR must point at the bundled data directory"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path work_root() {
  fs::path dir = fs::temp_directory_path() / "dimred_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = work_root() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture =
      work_root() / ("capture_" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string("\"") + DIMRED_CLI_PATH + "\" " + args +
                          " > \"" + capture.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = read_text(capture);
  return result;
}

std::string data_file(const std::string& name) {
  return (fs::path(DIMRED_DATA_DIR) / name).string();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pi: report and verification") {
  fs::path out = fresh_dir("pi");
  CliResult r = run_cli("pi --system " + data_file("mhd_system.json") +
                        " --verify --no-timestamp --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("unitless groups: 3") != std::string::npos);
  CHECK(r.output.find("Pi_3") != std::string::npos);

  json j = json::parse(read_text(out / "pi.json"));
  CHECK(j.at("n").get<int>() == 3);
  CHECK(j.at("verify").at("dv_ok").get<bool>());
  CHECK_FALSE(j.contains("generated_at"));
}

TEST_CASE("subspace: quadrature run is deterministic byte for byte") {
  fs::path out1 = fresh_dir("sub1");
  fs::path out2 = fresh_dir("sub2");
  const std::string base =
      "subspace --model hartmann_u_avg --quadrature 5 --no-timestamp --out ";
  CliResult r1 = run_cli(base + out1.string());
  CliResult r2 = run_cli(base + out2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output.find("selected n = 2") != std::string::npos);

  for (const char* name : {"spectrum.json", "eigenvalues.csv",
                           "sensitivity.json"}) {
    CHECK(read_text(out1 / name) == read_text(out2 / name));
    CHECK(fs::file_size(out1 / name) > 0);
  }
}

TEST_CASE("subspace: consistency cross-check against the quantity system") {
  fs::path out = fresh_dir("consistency");
  CliResult r = run_cli(
      "subspace --model hartmann_u_avg --quadrature 5 --system " +
      data_file("mhd_system.json") +
      " --alias dp0dx=p --no-timestamp --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("consistency: nonzero count 2 <= rank 3: ok") !=
        std::string::npos);

  json j = json::parse(read_text(out / "spectrum.json"));
  CHECK(j.at("consistency").at("ok").get<bool>());
  CHECK(j.at("consistency").at("containment_ok").get<bool>());

  // b_ind cross-checks against the extended system.
  fs::path outb = fresh_dir("consistency_b");
  CliResult rb = run_cli(
      "subspace --model hartmann_b_ind --quadrature 5 --system " +
      data_file("mhd_system_bind.json") +
      " --alias dp0dx=p --no-timestamp --out " + outb.string());
  CHECK(rb.exit_code == 0);
  json jb = json::parse(read_text(outb / "spectrum.json"));
  CHECK(jb.at("consistency").at("ok").get<bool>());
  CHECK(jb.at("consistency").at("restricted_rank").get<int>() == 5);
}

TEST_CASE("subspace: Monte Carlo with bootstrap reruns identically") {
  fs::path out1 = fresh_dir("mc1");
  fs::path out2 = fresh_dir("mc2");
  const std::string base =
      "subspace --model hartmann_u_avg --mc 100 --seed 3 --bootstrap 50 "
      "--threads 2 --no-timestamp --out ";
  CliResult r1 = run_cli(base + out1.string());
  CliResult r2 = run_cli(base + out2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(read_text(out1 / "spectrum.json") == read_text(out2 / "spectrum.json"));

  json j = json::parse(read_text(out1 / "spectrum.json"));
  CHECK(j.at("bootstrap").at("replicates").get<int>() == 50);
  CHECK(j.at("bootstrap").at("eigenvalue_intervals").size() == 5);
  CHECK(j.at("estimator").at("method").get<std::string>() == "monte_carlo");
}

TEST_CASE("subspace: sample-file input") {
  // Build a sample file with the library, then feed it through the CLI.
  fs::path dir = fresh_dir("samples");
  fs::path csv = dir / "gen.csv";
  dimred::models::HartmannModel model(
      dimred::models::HartmannModel::Qoi::kUAvg,
      dimred::models::hartmann_space());
  auto [est, samples] =
      dimred::subspace::estimate_c_monte_carlo(model, 150, 99);
  (void)est;
  dimred::ingest::save_samples(samples, model.space(), csv);

  fs::path out = fresh_dir("samples_out");
  CliResult r = run_cli("subspace --samples " + csv.string() +
                        " --no-timestamp --out " + out.string());
  CHECK(r.exit_code == 0);
  json j = json::parse(read_text(out / "spectrum.json"));
  CHECK(j.at("estimator").at("method").get<std::string>() == "from_samples");

  // Bootstrap over loaded samples works and is reproducible.
  fs::path outb1 = fresh_dir("samples_b1");
  fs::path outb2 = fresh_dir("samples_b2");
  const std::string base = "subspace --samples " + csv.string() +
                           " --bootstrap 40 --seed 12 --no-timestamp --out ";
  CliResult b1 = run_cli(base + outb1.string());
  CliResult b2 = run_cli(base + outb2.string());
  CHECK(b1.exit_code == 0);
  CHECK(read_text(outb1 / "spectrum.json") ==
        read_text(outb2 / "spectrum.json"));

  // Space cross-validation: the generator box does not match this file.
  CliResult bad = run_cli("subspace --samples " + csv.string() + " --space " +
                          data_file("generator_space.json") + " --out " +
                          fresh_dir("samples_bad").string());
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("error:") != std::string::npos);
}

TEST_CASE("summary: files for both dimensions") {
  fs::path out = fresh_dir("summary");
  CliResult r = run_cli(
      "summary --model hartmann_u_avg --seed 11 --count 50 --quadrature 5 "
      "--no-timestamp --out " +
      out.string());
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"summary1.csv", "summary1.svg", "summary2.csv", "summary2.svg"}) {
    CHECK(fs::exists(out / name));
  }
  std::string csv = read_text(out / "summary2.csv");
  CHECK(csv.rfind("y1,y2,f,mu,rho,dp0dx,eta,B0", 0) == 0);
}

TEST_CASE("check: passing and failing audits") {
  fs::path out = fresh_dir("check_ok");
  CliResult ok = run_cli(
      "check --model hartmann_u_avg --seed 1 --points 20 --quadrature 5 "
      "--no-timestamp --out " +
      out.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("gradient_fd_agreement") != std::string::npos);
  json j = json::parse(read_text(out / "check.json"));
  CHECK(j.at("ok").get<bool>());

  // A deliberately corrupted gradient component trips the audit (exit 1).
  fs::path outc = fresh_dir("check_bad");
  CliResult bad = run_cli(
      "check --model hartmann_u_avg --seed 1 --points 20 --quadrature 5 "
      "--corrupt-component 4 --corrupt-offset 0.25 --no-timestamp --out " +
      outc.string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("FAIL") != std::string::npos);
  CHECK(bad.output.find("B0") != std::string::npos);
  json jc = json::parse(read_text(outc / "check.json"));
  CHECK_FALSE(jc.at("ok").get<bool>());
}

TEST_CASE("user-input errors exit with code 2") {
  SUBCASE("Monte Carlo without a seed") {
    CliResult r = run_cli("subspace --model hartmann_u_avg --mc 50 --out " +
                          fresh_dir("e1").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--seed") != std::string::npos);
  }
  SUBCASE("bootstrap on a quadrature estimate") {
    CliResult r = run_cli(
        "subspace --model hartmann_u_avg --quadrature 5 --bootstrap 50 "
        "--seed 1 --out " +
        fresh_dir("e2").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("bootstrap") != std::string::npos);
  }
  SUBCASE("2-D plot of a 1-D subspace") {
    CliResult r = run_cli(
        "summary --model hartmann_u_avg --seed 1 --count 10 --quadrature 5 "
        "--dim 1 --plot2d --out " +
        fresh_dir("e3").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--dim 2") != std::string::npos);
  }
  SUBCASE("unknown model name") {
    CliResult r = run_cli("subspace --model bogus --quadrature 3 --out " +
                          fresh_dir("e4").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("unknown model") != std::string::npos);
  }
  SUBCASE("quadrature budget guard") {
    CliResult r = run_cli(
        "subspace --model hartmann_u_avg --quadrature 26 --out " +
        fresh_dir("e5").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("force") != std::string::npos);
  }
  SUBCASE("inexpressible output units") {
    fs::path dir = fresh_dir("e6");
    fs::path bad = dir / "bad_system.json";
    std::ofstream(bad) << "{\"inputs\": [{\"name\": \"l\", \"units\": \"m\"}],"
                          " \"output\": {\"name\": \"T\", \"units\": \"K\"}}";
    CliResult r = run_cli("pi --system " + bad.string() + " --out " +
                          dir.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("not expressible") != std::string::npos);
  }
  SUBCASE("both --samples and --model") {
    CliResult r = run_cli(
        "subspace --model hartmann_u_avg --samples nope.csv --out " +
        fresh_dir("e7").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("exactly one") != std::string::npos);
  }
  SUBCASE("no subcommand") {
    CliResult r = run_cli("");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("check without a seed") {
    CliResult r = run_cli("check --model hartmann_u_avg --out " +
                          fresh_dir("e8").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("--seed") != std::string::npos);
  }
}

TEST_CASE("help exits cleanly") {
  CliResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("subspace") != std::string::npos);
  CliResult rs = run_cli("subspace --help");
  CHECK(rs.exit_code == 0);
  CHECK(rs.output.find("--quadrature") != std::string::npos);
}

}  // TEST_SUITE
