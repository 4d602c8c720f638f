#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "symrh/formsrc.hpp"
#include "symrh/report.hpp"
#include "symrh/symcoef.hpp"

using namespace symrh;
namespace fs = std::filesystem;

namespace {

std::string make_temp_dir() {
  char tmpl[] = "/tmp/symrh_test_XXXXXX";
  char* d = mkdtemp(tmpl);
  return d ? std::string(d) : std::string();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SYMRH_BIN) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc < 0) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t line_count(const std::string& text) {
  size_t n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) n++;
  return n;
}

}  // namespace

TEST_CASE("coefficient cache: miss, hit, prefix service, corruption") {
  std::string dir = make_temp_dir();
  REQUIRE(!dir.empty());
  NewformData f = builtin_newform(12, 256);

  bool hit = true;
  SymPowerCoefficients a = cached_sym_coeffs(f, 2, 256, 128, dir, &hit);
  CHECK(!hit);
  SymPowerCoefficients b = cached_sym_coeffs(f, 2, 256, 128, dir, &hit);
  CHECK(hit);
  REQUIRE(b.lambda.size() == a.lambda.size());
  for (size_t i = 0; i < a.lambda.size(); i++)
    CHECK((a.lambda[i] - b.lambda[i]).is_zero());

  // a stored larger cutoff serves the smaller request
  SymPowerCoefficients c = cached_sym_coeffs(f, 2, 64, 128, dir, &hit);
  CHECK(hit);
  REQUIRE(c.cutoff() == 64);
  for (size_t i = 0; i < 64; i++)
    CHECK((c.lambda[i] - a.lambda[i]).is_zero());

  // corrupt files are recomputed, not trusted
  for (const auto& e : fs::directory_iterator(dir))
    std::ofstream(e.path(), std::ios::trunc) << "not json";
  SymPowerCoefficients d = cached_sym_coeffs(f, 2, 256, 128, dir, &hit);
  CHECK(!hit);
  REQUIRE(d.lambda.size() == a.lambda.size());
  for (size_t i = 0; i < a.lambda.size(); i++)
    CHECK((d.lambda[i] - a.lambda[i]).is_zero());
  fs::remove_all(dir);
}

TEST_CASE("value cache: cold call equals warm call bitwise") {
  std::string dir = make_temp_dir();
  REQUIRE(!dir.empty());
  NewformData f = builtin_newform(12, 64);
  SymPowerCoefficients c = sym_coeffs(f, 1, 64, 128);

  bool hit = true;
  CriticalValues u = cached_critical_values(c, 128, 0, true, 0, dir, &hit);
  CHECK(!hit);
  CriticalValues v = cached_critical_values(c, 128, 0, true, 0, dir, &hit);
  CHECK(hit);
  CHECK(u.epsilon == v.epsilon);
  REQUIRE(u.vals.size() == v.vals.size());
  for (size_t i = 0; i < u.vals.size(); i++) {
    CHECK((u.vals[i].value - v.vals[i].value).is_zero());
    CHECK((u.vals[i].budget.total() - v.vals[i].budget.total()).is_zero());
    CHECK(u.vals[i].strategy == v.vals[i].strategy);
    CHECK(u.vals[i].pairing_checked == v.vals[i].pairing_checked);
  }
  fs::remove_all(dir);
}

TEST_CASE("command-line pipeline end to end") {
  std::string dir = make_temp_dir();
  REQUIRE(!dir.empty());
  std::string out = dir + "/out", cache = dir + "/cache";
  std::string form_path = dir + "/eta5.json";
  save_newform(oracle::eta_newform(5, 4096), form_path);

  nlohmann::json cfg;
  cfg["precision"] = 96;
  cfg["ms"] = {1};
  cfg["jobs"] = 2;
  cfg["out_dir"] = out;
  cfg["cache_dir"] = cache;
  cfg["forms"] = {12, nlohmann::json{{"path", form_path}}};
  std::string cfg_path = dir + "/cfg.json";
  std::ofstream(cfg_path) << cfg.dump(1) << "\n";

  REQUIRE(run_cli("report --config " + cfg_path) == 0);
  std::string first = slurp(out + "/report.json");
  REQUIRE(!first.empty());
  nlohmann::json rep = nlohmann::json::parse(first);
  CHECK(rep.contains("tool"));
  CHECK(rep.contains("toolchain"));
  CHECK(rep["config"]["precision"] == 96);
  REQUIRE(rep["instances"].size() == 2);
  for (const auto& inst : rep["instances"]) CHECK(inst["status"] == "ok");

  // warm rerun must reproduce the report byte for byte
  REQUIRE(run_cli("report --config " + cfg_path) == 0);
  CHECK(slurp(out + "/report.json") == first);

  std::string csv = slurp(out + "/report.csv");
  std::istringstream csv_in(csv);
  std::string header;
  std::getline(csv_in, header);
  CHECK(header ==
        "label,m,k,level,poly,degree,status,circle_verdict,disk_verdict,"
        "sign_changes,grid,max_circle_deviation,rouche_margin");
  CHECK(line_count(csv) == 7);  // header + {P,Q,H} for each of 2 instances

  // one row per certified root: degrees 10 and 2
  CHECK(line_count(slurp(out + "/roots.csv")) == 13);

  nlohmann::json tim = nlohmann::json::parse(slurp(out + "/timings.json"));
  CHECK(tim.contains("total_seconds"));

  CHECK(run_cli("verify-lemmas --config " + cfg_path) == 0);
  fs::remove_all(dir);
}

TEST_CASE("command-line failure modes") {
  std::string dir = make_temp_dir();
  REQUIRE(!dir.empty());

  std::string bad_prec = dir + "/bad_prec.json";
  std::ofstream(bad_prec) << "{\"precision\": 32, \"ms\": [1]}\n";
  CHECK(run_cli("report --config " + bad_prec) == 3);

  std::string not_json = dir + "/broken.json";
  std::ofstream(not_json) << "{ this is not json\n";
  CHECK(run_cli("report --config " + not_json) == 3);

  nlohmann::json cfg;
  cfg["ms"] = {1};
  cfg["out_dir"] = dir + "/out";
  cfg["cache_dir"] = dir + "/cache";
  cfg["forms"] = {nlohmann::json{{"path", dir + "/missing_form.json"}}};
  std::string cfg_path = dir + "/cfg.json";
  std::ofstream(cfg_path) << cfg.dump(1) << "\n";
  CHECK(run_cli("report --config " + cfg_path) == 2);

  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("report --no-such-flag") == 3);
  fs::remove_all(dir);
}
