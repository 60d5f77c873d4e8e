// End-to-end checks of the kt binary: exit-code contract, file formats,
// witness round-trips and output determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kt/io.hpp"

#ifndef KT_BIN
#error "KT_BIN must point at the kt executable"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("kt_e2e_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args, const std::string& stdout_to = "") {
  std::string cmd = std::string(KT_BIN) + " " + args;
  if (!stdout_to.empty()) cmd += " > " + stdout_to;
  cmd += " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kH3 = R"({"name":"h3","dimension":3,
  "brackets":[{"i":1,"j":2,"result":{"3":"1"}}]})";

const char* kJacobiBroken = R"({"name":"broken","dimension":3,
  "brackets":[{"i":1,"j":2,"result":{"3":"1"}},
              {"i":2,"j":3,"result":{"1":"1","2":"1"}},
              {"i":1,"j":3,"result":{"2":"-1"}}]})";

const char* kBadGram = R"({"name":"badgram","dimension":2,"brackets":[],
  "gram":[["1","0"],["0","-1"]]})";

}  // namespace

TEST_CASE("validate: exit 0 on valid, 1 on invalid, 3 on missing file") {
  TempDir tmp;
  write_file(tmp.path / "h3.json", kH3);
  write_file(tmp.path / "broken.json", kJacobiBroken);
  write_file(tmp.path / "badgram.json", kBadGram);

  CHECK(run("validate " + (tmp.path / "h3.json").string()) == 0);

  auto out = (tmp.path / "diag.txt").string();
  CHECK(run("validate " + (tmp.path / "broken.json").string(), out) == 1);
  // the diagnostic names the failing quadruple
  CHECK(slurp(out).find("jacobi") != std::string::npos);

  CHECK(run("validate " + (tmp.path / "badgram.json").string(), out) == 1);
  CHECK(slurp(out).find("minor 2") != std::string::npos);

  CHECK(run("validate " + (tmp.path / "missing.json").string()) == 3);
}

TEST_CASE("spaces and check-type run on files and catalog names") {
  TempDir tmp;
  write_file(tmp.path / "h3.json", kH3);
  auto out = (tmp.path / "out.json").string();

  CHECK(run("spaces " + (tmp.path / "h3.json").string() + " --degree 1 --format json", out) == 0);
  kt::Json spaces = kt::Json::parse(slurp(out));
  CHECK(spaces["dim_killing"] == 1);
  CHECK(spaces["dim_conformal"] == 1);

  CHECK(run("spaces 'abelian(3)' --degree 3 --format json", out) == 0);
  CHECK(kt::Json::parse(slurp(out))["dim_killing"] == 10);

  CHECK(run("spaces 'milnor(1,2,3)' --degree 2 --format json", out) == 0);
  CHECK(kt::Json::parse(slurp(out))["dim_killing"] == 2);

  CHECK(run("spaces free-2step-3gen --degree 1 --format json", out) == 0);
  CHECK(kt::Json::parse(slurp(out))["dim_killing"] == 3);

  CHECK(run("check-type heisenberg-h3 --max-degree 4 --format json", out) == 0);
  kt::Json rep = kt::Json::parse(slurp(out));
  CHECK(rep["all_killing_type"] == true);
  CHECK(rep["degrees"].size() == 5);

  CHECK(run("catalog run 'milnor(1,2,3)' --max-degree 3") == 0);
  CHECK(run("catalog list") == 0);

  CHECK(run("check-type no-such-entry") == 1);
}

TEST_CASE("complete solves and classifies tensors") {
  TempDir tmp;
  auto out = (tmp.path / "out.json").string();

  // L itself is Killing on any Milnor frame
  write_file(tmp.path / "L.json", R"({"degree":2,"coeffs":{"2,0,0":1,"0,2,0":1,"0,0,2":1}})");
  CHECK(run("complete 'milnor(1,2,3)' --tensor " + (tmp.path / "L.json").string() +
            " --format json", out) == 0);
  kt::Json rep = kt::Json::parse(slurp(out));
  CHECK(rep["conformal"] == true);

  // x*y is not conformal Killing there
  write_file(tmp.path / "xy.json", R"({"degree":2,"coeffs":{"1,1,0":1}})");
  CHECK(run("complete 'milnor(1,2,3)' --tensor " + (tmp.path / "xy.json").string() +
            " --format json", out) == 0);
  rep = kt::Json::parse(slurp(out));
  CHECK(rep["conformal"] == false);
  CHECK(rep["completion"].is_null());
}

TEST_CASE("search is byte-identical for a fixed seed and obeys the flag set") {
  TempDir tmp;
  auto out1 = (tmp.path / "s1.json").string(), out2 = (tmp.path / "s2.json").string();
  const std::string args =
      "search --family solvable4-dimg2 --trials 3 --seed 42 --max-degree 3 --format json";
  CHECK(run(args, out1) == 0);
  CHECK(run(args, out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK_FALSE(slurp(out1).empty());

  CHECK(run("search --family bogus --trials 1") == 1);
}
