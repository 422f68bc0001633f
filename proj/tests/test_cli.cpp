// Integration tests for the command line tool. The harness exports CK_CLI
// with the path of the built binary; every case shells out through popen.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* cli_path() {
  const char* p = std::getenv("CK_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CK_CLI must point at the circlekit binary");
  return p;
}

RunResult run(const std::string& args) {
  std::string cmd = std::string("'") + cli_path() + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  REQUIRE_MESSAGE(!j.is_discarded(), "tool did not print valid json");
  return j;
}

const std::string kHaar = "'{\"type\":\"haar\",\"mass\":\"1\"}'";
const std::string kTwoAtoms =
    "'{\"type\":\"lincomb\",\"terms\":["
    "{\"coeff\":\"1/2\",\"inner\":{\"type\":\"atom\",\"angle\":\"0\",\"weight\":\"1\"}},"
    "{\"coeff\":\"1/2\",\"inner\":{\"type\":\"atom\",\"angle\":\"1/3\",\"weight\":\"1\"}}]}'";
const std::string kLacunary =
    "'{\"total_mass\":0.0,\"jumps\":[],"
    "\"smooth\":{\"type\":\"lacunary\",\"base\":2,\"amplitude\":1.0}}'";

}  // namespace

TEST_CASE("fourier emits the pinned haar window") {
  RunResult r = run("fourier --inline " + kHaar + " --order 1 --tol 1e-9");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "nu,re,im,errbound\r\n-1,0,0,0\r\n0,1,0,0\r\n1,0,0,0\r\n");
}

TEST_CASE("repeated runs are byte identical and --out matches stdout") {
  std::string args = "fourier --inline '{\"type\":\"digit\",\"base\":3,"
                     "\"weights\":[\"1/2\",\"0\",\"1/2\"]}' --order 8 --tol 1e-10";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  auto path = std::filesystem::temp_directory_path() /
              ("ck_cli_out_" + std::to_string(getpid()) + ".csv");
  RunResult c = run(args + " --out '" + path.string() + "'");
  CHECK(c.exit_code == 0);
  CHECK(c.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("invariance check passes on haar and reports per factor") {
  RunResult r = run("check invariance --inline " + kHaar + " --gens 2,3 --order 16");
  CHECK(r.exit_code == 0);
  json j = parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["factors"].size() == 2);
  CHECK(j["factors"][0]["factor"] == 2);
}

TEST_CASE("feq check fails on a non-invariant measure with exit 1") {
  RunResult r = run("check feq --inline " + kTwoAtoms + " --gens 2 --order 32 --tol 1e-10");
  CHECK(r.exit_code == 1);
  json j = parse(r.out);
  CHECK(j["pass"] == false);
  CHECK(j["max_residual"].get<double>() > 1e-4);
}

TEST_CASE("masseq check knows which factor fixes the lacunary premeasure") {
  RunResult good = run("check masseq --inline " + kLacunary + " --gens 2 --grid 64 --tol 1e-8");
  CHECK(good.exit_code == 0);
  CHECK(parse(good.out)["pass"] == true);
  RunResult bad = run("check masseq --inline " + kLacunary + " --gens 3 --grid 64 --tol 1e-8");
  CHECK(bad.exit_code == 1);
  CHECK(parse(bad.out)["pass"] == false);
}

TEST_CASE("entropy reports finite sets and cantor series") {
  RunResult fin = run("entropy --inline '{\"angles\":[\"0\",\"1/5\",\"2/5\",\"3/5\",\"4/5\"]}'"
                      " --kappa gamma=1");
  CHECK(fin.exit_code == 0);
  json jf = parse(fin.out);
  CHECK(jf["kind"] == "finite");
  CHECK(jf["points"] == 5);
  CHECK(jf["value"].get<double>() == doctest::Approx(1.0 + std::log(5.0)).epsilon(1e-12));

  RunResult can = run("entropy --inline '{\"base\":3,\"digits\":[0,2]}'"
                      " --kappa gamma=1 --tol 1e-12");
  CHECK(can.exit_code == 0);
  json jc = parse(can.out);
  CHECK(jc["kind"] == "cantor");
  CHECK(jc["diverged"] == false);
  CHECK(jc["value"].get<double>() ==
        doctest::Approx(1.0 + 3.0 * std::log(3.0)).epsilon(1e-10));

  RunResult div = run("entropy --inline '{\"base\":3,\"digits\":[0,2]}'"
                      " --kappa power=0.58 --tol 1e-10");
  CHECK(div.exit_code == 0);
  CHECK(parse(div.out)["diverged"] == true);
}

TEST_CASE("witt suites pass and the idempotency report is decisive") {
  RunResult id = run("witt identities --order 12 --trials 8 --seed 11");
  CHECK(id.exit_code == 0);
  json ji = parse(id.out);
  CHECK(ji["failures"] == 0);
  CHECK(ji["pass"] == true);

  RunResult ip = run("witt idempotency --gens 2 --order 12");
  CHECK(ip.exit_code == 0);
  json jp = parse(ip.out);
  CHECK(jp["base_idempotent"] == false);
  CHECK(jp["negation_idempotent"] == true);
  CHECK(jp["base_square_equals_negation"] == true);

  RunResult ah = run("witt artin-hasse --gens 2 --order 8 --primes 2,3");
  CHECK(ah.exit_code == 0);
  json ja = parse(ah.out);
  CHECK(ja["integral"]["2"] == true);
  CHECK(ja["integral"]["3"] == false);
  CHECK(ja["ghost"][1] == "-1");
  CHECK(ja["ghost"][3] == "0");
}

TEST_CASE("radial trace converges to the atom weight") {
  RunResult r = run("trace radial --inline '{\"total_mass\":1.0,"
                    "\"jumps\":[[\"1/6\",0.3]],\"smooth\":{\"type\":\"zero\"}}'"
                    " --at 1/6 --kmin 3 --kmax 12 --tol 1e-9");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("k,r,scaled_re\r\n", 0) == 0);
  auto last = r.out.rfind("\r\n", r.out.size() - 3);
  std::string row = r.out.substr(last + 2);
  CHECK(row.rfind("12,0.999755859375,0.300", 0) == 0);
}

TEST_CASE("growth profile ratios fall for gamma 2 and rise for gamma 1") {
  std::string h = "'{\"kind\":\"rational\",\"order\":1,\"coeffs\":[[\"0\",\"0\"],[\"2\",\"0\"]]}'";
  auto ratios = [](const std::string& out) {
    std::vector<double> v;
    std::istringstream in(out);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      auto c = line.rfind(',');
      v.push_back(std::stod(line.substr(c + 1)));
    }
    return v;
  };
  RunResult flat = run("trace growth --inline " + h +
                       " --gens 2,3 --kappa gamma=2 --kmin 6 --kmax 11 --grid 16");
  CHECK(flat.exit_code == 0);
  std::vector<double> fr = ratios(flat.out);
  REQUIRE(fr.size() == 6);
  for (size_t i = 1; i < fr.size(); ++i) CHECK(fr[i] < fr[i - 1]);

  RunResult steep = run("trace growth --inline " + h +
                        " --gens 2,3 --kappa gamma=1 --kmin 6 --kmax 11 --grid 16");
  std::vector<double> sr = ratios(steep.out);
  REQUIRE(sr.size() == 6);
  for (size_t i = 1; i < sr.size(); ++i) CHECK(sr[i] > sr[i - 1]);
}

TEST_CASE("malformed input and usage errors exit with code 2") {
  CHECK(run("fourier --inline 'not json'").exit_code == 2);
  CHECK(run("fourier --order 4").exit_code == 2);
  CHECK(run("fourier --inline '{\"type\":\"comb\"}'").exit_code == 2);
  CHECK(run("entropy --inline '{\"angles\":[\"0\"]}' --kappa spline=1").exit_code == 2);
  CHECK(run("entropy --inline '{\"base\":3}' --kappa gamma=1").exit_code == 2);
  CHECK(run("check invariance --inline " + kHaar + " --gens 2,4").exit_code == 2);
  CHECK(run("witt idempotency --gens 2,3").exit_code == 2);
  CHECK(run("trace radial --inline " + kLacunary + " --at 1/x").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}
