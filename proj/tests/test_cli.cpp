#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CTQW_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("spectrum with dual-route comparison succeeds") {
  const auto r = run_cli("spectrum --family barbell --n 3 --method both");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("result=ok") != std::string::npos);
  REQUIRE(r.out.find("eigenvalue,multiplicity,label") != std::string::npos);
}

TEST_CASE("small full-contact star spectrum") {
  const auto r = run_cli("spectrum --family star1 --n 2");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find("-5.0000000000000000e-01,3,") != std::string::npos);
  REQUIRE(r.out.find("5.0000000000000000e-01,1,V1_Chi") != std::string::npos);
  REQUIRE(r.out.find("1.0000000000000000e+00,1,V1_Psi1") != std::string::npos);
}

TEST_CASE("usage errors exit with 64") {
  REQUIRE(run_cli("spectrum --family ladder --n 3").status == 64);
  REQUIRE(run_cli("spectrum --family barbell").status == 64);  // missing --n
  REQUIRE(run_cli("nonsense").status == 64);
  REQUIRE(run_cli("spectrum --family barbell --n 2").status == 64);  // below minimum
  REQUIRE(run_cli("ipr --family barbell --n 4 --mode dynamical --start class:Center").status ==
          64);  // class not in family
  REQUIRE(run_cli("--help").status == 0);
}

TEST_CASE("dynamical participation of the star center") {
  const auto r =
      run_cli("ipr --family star1 --n 8 --mode dynamical --start class:Center");
  REQUIRE(r.status == 0);
  // 4229/6561 = 0.6445663770766652, computed to round-off
  const auto row = r.out.find("dynamical,class:Center,");
  REQUIRE(row != std::string::npos);
  const double value = std::strtod(r.out.c_str() + row + 23, nullptr);
  REQUIRE(value == Catch::Approx(4229.0 / 6561.0).margin(1e-13));
  // the exact formula is attached as a reference with a tiny residual
  REQUIRE(r.out.find("\"(n^4+2n^2+5)/(n+1)^4\"") != std::string::npos);
}

TEST_CASE("repeat runs are byte identical") {
  const std::string args = "limit --family star2 --n 3 --all-classes";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.status == 0);
  REQUIRE(a.out == b.out);
  REQUIRE_FALSE(a.out.empty());
}

TEST_CASE("json output parses and matches the schema") {
  const auto r = run_cli("graph --family star2 --n 3 --format json");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.at("family") == "star2");
  REQUIRE(doc.at("degrees").size() == 10);
  REQUIRE(doc.at("provenance").at("version") == "1.0.0");

  const auto s = run_cli("spectrum --family barbell --n 4 --format json --full-vectors");
  REQUIRE(s.status == 0);
  const auto sdoc = nlohmann::json::parse(s.out);
  REQUIRE(sdoc.at("spaces").size() == 5);
  REQUIRE(sdoc.at("spaces")[0].contains("basis_row_major"));
}

TEST_CASE("limiting rows are stochastic") {
  const auto r = run_cli("limit --family barbell --n 4 --start index:3");
  REQUIRE(r.status == 0);
  // last non-empty line: start,pibar0..pibar7
  std::istringstream is(r.out);
  std::string line, data;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') data = line;
  REQUIRE(data.rfind("index:3,", 0) == 0);
  double sum = 0.0;
  size_t pos = data.find(',');
  int fields = 0;
  while (pos != std::string::npos) {
    sum += std::strtod(data.c_str() + pos + 1, nullptr);
    pos = data.find(',', pos + 1);
    ++fields;
  }
  REQUIRE(fields == 8);
  REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("evolution grid shape") {
  const auto r = run_cli("evolve --family star1 --n 2 --start index:0 --t-max 1 --dt 0.5");
  REQUIRE(r.status == 0);
  std::istringstream is(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#' && line[0] != 't') ++rows;
  REQUIRE(rows == 3);  // t = 0, 0.5, 1.0
}

TEST_CASE("sweep over an exact metric passes") {
  const auto r = run_cli("sweep --metric v1_center_dyn --n-list 2,3,4");
  REQUIRE(r.status == 0);
  REQUIRE(r.out.find(",false") == std::string::npos);
  REQUIRE(r.out.find("4.0625000000000000e-01") != std::string::npos);  // n = 3 value
}

TEST_CASE("unwritable output path exits with 3") {
  const auto r =
      run_cli("graph --family barbell --n 3 --output /nonexistent_dir_zz/out.csv");
  REQUIRE(r.status == 3);
}
