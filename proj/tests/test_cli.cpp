#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli_support.hpp"
#include "oracles.hpp"

using namespace thetaspec;
using namespace thetaspec::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("thetaspec_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter)), err = dir / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = env + " '" THETASPEC_CLI_PATH "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli support") {
  TEST_CASE("complex literals") {
    CHECK(parse_complex("2") == cplx(2));
    CHECK(parse_complex("-0.5+0.25i") == cplx(-0.5L, 0.25L));
    CHECK(parse_complex("3i") == cplx(0, 3));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("(1,2)") == cplx(1, 2));
    CHECK(parse_complex("1,-2") == cplx(1, -2));
    CHECK(parse_complex("1e-3-2e-2j") == cplx(1e-3L, -2e-2L));
    CHECK(parse_complex("0.31") == cplx(0.31L));
    CHECK_THROWS_AS(parse_complex(""), Error);
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK_THROWS_AS(parse_complex("1+"), Error);
  }

  TEST_CASE("precision resolution") {
    CHECK(resolve_precision(64, nullptr) == 64);
    CHECK(resolve_precision(64, "") == 64);
    CHECK(resolve_precision(64, "200") == 200);
    CHECK_THROWS_AS(resolve_precision(64, "many"), Error);
  }

  TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    c.tolerance = 0;
    CHECK_THROWS_AS(validate(c), Error);
    c.tolerance = 1e-12L;
    c.precision_bits = 32;
    CHECK_THROWS_AS(validate(c), Error);
    c.precision_bits = 64;
    c.parallelism = 0;
    CHECK_THROWS_AS(validate(c), Error);
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code_for(ErrorKind::DomainError) == kUsageError);
    CHECK(exit_code_for(ErrorKind::UnsupportedOrder) == kUsageError);
    CHECK(exit_code_for(ErrorKind::CertificateFailed) == kVerificationFailed);
    CHECK(exit_code_for(ErrorKind::NoConvergence) == kVerificationFailed);
  }
}

TEST_SUITE("cli binary") {
  TEST_CASE("usage") {
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("eval --q 0.1").code == 2);
    CHECK(run("--tol -1 eval --q 0.1 --x 1").code == 2);
    CHECK(run("--format xml eval --q 0.1 --x 1").code == 2);
  }

  TEST_CASE("eval") {
    Run r = run("eval --q 0 --x 3.5");
    REQUIRE(r.code == 0);
    auto j = parse(r);
    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "theta_value");
    CHECK(run("eval --q 1.2 --x 1").code == 2);
    CHECK(run("eval --q 0.3 --x 1 --dx 5").code == 2);
    auto dx = parse(run("eval --q 0.1 --x 1 --dx 1"))["result"]["value"];
    const auto want = oracle::theta_sum(0.1L, 1.0L, 1, 0, 40).ld();
    const long double center = std::stold(dx["re"].get<std::string>());
    CHECK(std::fabs(center - want.real()) <= std::stold(dx["radius"].get<std::string>()) + 1e-19L);
    auto near = parse(run("eval --q 0.3092493386 --x -7.5032559833"))["result"]["modulus_upper"];
    CHECK(std::stold(near.get<std::string>()) < 1e-6L);
    Run csv = run("--format csv eval --q 0.3 --x -2 --dx 1");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("re,im,radius,n_terms,precision_bits\n", 0) == 0);
  }

  TEST_CASE("precision from the environment") {
    Run r = run("eval --q 0.5 --x -3", "THETA_SPECTRUM_PRECISION=200");
    REQUIRE(r.code == 0);
    CHECK(parse(r)["result"]["precision_bits"].get<int>() > 64);
    CHECK(run("eval --q 0.5 --x -3", "THETA_SPECTRUM_PRECISION=junk").code == 2);
  }

  TEST_CASE("spectrum") {
    Run r = run("--format csv spectrum --max 1");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("1,0.3092493386", 0) == 0);
    CHECK(row.find(",-7.50325596") != std::string::npos);
    Run empty = run("--format csv spectrum --max 0");
    CHECK(empty.code == 0);
    CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);
    Run js = run("spectrum --max 3");
    REQUIRE(js.code == 0);
    auto j = parse(js);
    CHECK(j["kind"] == "spectrum");
    CHECK(j["points"].size() == 3);
    CHECK(run("spectrum --max -1").code == 2);
    Run twenty = run("--tol 1e-9 spectrum --max 20");
    REQUIRE(twenty.code == 0);
    auto pts = parse(twenty)["points"];
    CHECK(pts.size() == 20);
    for (const auto& p : pts) {
      CHECK(p["residual_theta"].get<double>() < 1e-9);
      CHECK(p["residual_theta_x"].get<double>() < 1e-9);
    }
  }

  TEST_CASE("certify") {
    CHECK(run("certify --suite disk").code == 0);
    CHECK(run("certify --suite lemmas").code == 0);
    CHECK(run("certify --suite proposition").code == 0);
    CHECK(run("certify --suite segments --tables derived").code == 0);
    Run ref = run("certify --suite segments");
    CHECK(ref.code == 1);
    CHECK(ref.err.find("FAILED segment") != std::string::npos);
    CHECK(run("certify --suite segments --tables derived --threshold-scale 10").code == 1);
    CHECK(run("certify --suite nonsense").code == 2);
  }

  TEST_CASE("track and laurent") {
    Run t = run("track --j 2 --to 0.22");
    REQUIRE(t.code == 0);
    auto j = parse(t);
    CHECK(j["kind"] == "zero_track");
    CHECK(j["j"] == 2);
    Run l = run("--format csv laurent --j 1 --coeffs 3");
    REQUIRE(l.code == 0);
    CHECK(l.out.rfind("power,re,im\n-1,-1", 0) == 0);
    CHECK(run("laurent --j 1 --radius 0.3").code == 2);
    CHECK(run("track --j 1 --to 1.5").code == 2);
  }

  TEST_CASE("reproduce is deterministic and reports mismatches") {
    const fs::path dir = fs::temp_directory_path();
    const std::string a = (dir / "thetaspec_repro_a.json").string(), b = (dir / "thetaspec_repro_b.json").string();
    Run r1 = run("--out '" + a + "' reproduce --tables derived");
    Run r2 = run("--parallelism 4 --out '" + b + "' reproduce --tables derived");
    CHECK(r1.code == r2.code);
    CHECK(slurp(a) == slurp(b));
    auto j = nlohmann::json::parse(slurp(a));
    CHECK(j["kind"] == "reproduction_report");
    CHECK(j.contains("constants_table"));
    CHECK(j["certificates"].contains("segments"));
    Run ref = run("reproduce");
    CHECK(ref.code == 1);
    CHECK(ref.err.find("MISMATCH") != std::string::npos);
    fs::remove(a);
    fs::remove(b);
  }
}
