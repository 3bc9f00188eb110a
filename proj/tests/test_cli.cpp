#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run weil(const std::string& args) {
  std::string cmd = std::string(WEIL_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json data_of(const Run& r) {
  Json j = Json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  return j["data"];
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "weil_cli_test";
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("info") {
  auto r = weil("info --symbol 'U(6)'");
  REQUIRE(r.code == 0);
  Json d = data_of(r);
  CHECK(d["order"] == 36);
  CHECK(d["level"] == 6);
  CHECK(d["signature"] == 0);
  CHECK(d["census"]["self_dual_isotropic_subgroups"] == 4);
  CHECK(weil("info --symbol 'U(6)' --pretty").out.find("order      36") != std::string::npos);
}

TEST_CASE("invariants agree across methods") {
  auto r = weil("invariants --symbol 'U(6)' --method all");
  REQUIRE(r.code == 0);
  Json d = data_of(r);
  CHECK(d["dim_kernel"] == 4);
  CHECK(d["dim_frobenius"] == 4);
  for (const auto& f : d["formulas"]) CHECK(f["value"] == 4);
  CHECK(d["agreement"] == true);
  auto out = scratch("inv.json");
  REQUIRE(weil("invariants --symbol 'U(2)' --method kernel --emit-basis " + out.string()).code == 0);
  Json b = Json::parse(std::ifstream(out));
  CHECK(b["data"]["integer_basis"].size() == 2);
}

TEST_CASE("basis with verification") {
  auto r = weil("basis --symbol '3^+1' --verify --words 5");
  REQUIRE(r.code == 0);
  Json d = data_of(r);
  CHECK(d["integrality"]["verdict"] == true);
  CHECK(d["columns"].size() == 3);
  CHECK(d["tags"].size() == 3);
  CHECK(weil("verify --symbol '2_II^-2⊕3^+1' --words 3").code == 0);
}

TEST_CASE("rep emits a matrix") {
  auto r = weil("rep --symbol '2_1^+1' --word 'S T T S'");
  REQUIRE(r.code == 0);
  Json d = data_of(r);
  CHECK(d["entries"].size() == 2);
  CHECK(d["entries"][0].size() == 2);
}

TEST_CASE("build round trip through a form file") {
  auto f = scratch("form.json");
  REQUIRE(weil("build --symbol '3^-1⊕2_II^-2' --out " + f.string()).code == 0);
  auto a = weil("info --symbol '3^-1⊕2_II^-2'");
  auto b = weil("info --input " + f.string());
  REQUIRE(b.code == 0);
  CHECK(data_of(a)["signature"] == data_of(b)["signature"]);
  CHECK(data_of(a)["order"] == 12);
}

TEST_CASE("decompose") {
  auto r = weil("decompose --symbol 'Z(9,2)'");
  REQUIRE(r.code == 0);
  Json d = data_of(r);
  size_t dim = 0;
  for (const auto& c : d["components"]) dim += c["basis"].size();
  CHECK(dim == 9);
  CHECK(weil("decompose --symbol 'U(2)'").code == 2);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(weil("info --symbol bogus").code == 2);
  CHECK(weil("info").code == 2);
  CHECK(weil("info --symbol 'U(2)' --form 'U(3)'").code == 2);
  CHECK(weil("rep --symbol 'U(2)'").code == 2);
  CHECK(weil("rep --symbol 'U(2)' --word 'S Q'").code == 2);
  CHECK(weil("info --symbol 'U(12)' --max-order 100").code == 2);
  CHECK(weil("invariants --symbol 'U(2)' --method guess").code == 2);
  CHECK(weil("info --input /nonexistent.json").code == 2);
  CHECK(weil("frobnicate").code == 2);
  CHECK(weil("selftest --criteria 99").code == 2);
}

TEST_CASE("output is byte-stable") {
  for (const char* a : {"info --symbol 'UG(2,4)'", "basis --symbol '4_1^+1⊕3^+1'", "invariants --symbol 'U(4)'",
                        "decompose --symbol 'Z(12,1)'"}) {
    CAPTURE(a);
    auto x = weil(a), y = weil(a);
    CHECK(x.code == 0);
    CHECK(x.out == y.out);
  }
}

TEST_CASE("selftest subset") {
  auto r = weil("selftest --criteria 7,8,10");
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] 7") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}
