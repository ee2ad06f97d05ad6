#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(WREATH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int rc = pclose(p);
  r.status = WEXITSTATUS(rc);
  return r;
}

fs::path write_group(const std::string& name, const std::string& json) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << json;
  return p;
}

const std::string kA5 = R"js({"degree":5,"generators":["(0 1 2)","(0 1 2 3 4)"]})js";
const std::string kS3 = R"js({"degree":3,"generators":["(0 1)","(0 1 2)"]})js";

}  // namespace

TEST_CASE("selftest exits zero") {
  RunResult r = run("selftest");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("exit code 2 on input errors") {
  CHECK(run("decide --group /nonexistent.json").status == 2);
  CHECK(run("pk --group /nonexistent.json --k 2").status == 2);
  CHECK(run("bogus-subcommand").status == 2);
  CHECK(run("pk").status == 2);  // missing required --group
  fs::path bad = write_group("bad_group.json", R"js({"degree":3,"generators":["(0 9)"]})js");
  CHECK(run("decide --group " + bad.string()).status == 2);
  fs::path malformed = write_group("malformed.json", "{not json");
  CHECK(run("decide --group " + malformed.string()).status == 2);
}

TEST_CASE("exit code 3 on cap errors") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  // exhaustive C7/K computation for the certificate needs overrides
  CHECK(run("certify --group " + a5.string()).status == 3);
}

TEST_CASE("pk exact and decide round trip") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  RunResult r = run("pk --group " + a5.string() + " --k 2 --mode exact");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"value\": \"19/30\"") != std::string::npos);
  RunResult d = run("decide --group " + a5.string());
  CHECK(d.status == 0);
  CHECK(d.out.find("\"decision\": \"YES\"") != std::string::npos);
  fs::path s3 = write_group("s3_cli.json", kS3);
  RunResult dn = run("decide --group " + s3.string());
  CHECK(dn.status == 0);
  CHECK(dn.out.find("\"decision\": \"NO\"") != std::string::npos);
  CHECK(dn.out.find("abelianization") != std::string::npos);
}

TEST_CASE("identical invocation and seed give byte-identical output") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  std::string cmd = "pk --group " + a5.string() + " --k 2 --mode mc --samples 2000 --seed 9";
  RunResult r1 = run(cmd);
  RunResult r2 = run(cmd);
  CHECK(r1.status == 0);
  CHECK(r1.out == r2.out);
  std::string tower = "tower verify --group " + a5.string() + " --n 2 --count 20 --seed 4";
  CHECK(run(tower).out == run(tower).out);
}

TEST_CASE("cache hit does not change results") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  fs::path dir = fs::temp_directory_path() / "wreath_cache_test";
  fs::remove_all(dir);
  std::string cmd = "tower build --group " + a5.string() + " --n 2 --cache-dir " + dir.string();
  RunResult cold = run(cmd);
  CHECK(cold.status == 0);
  CHECK(fs::exists(dir));
  bool has_payload = false;
  for (const auto& e : fs::directory_iterator(dir)) has_payload |= e.is_regular_file();
  CHECK(has_payload);
  RunResult warm = run(cmd);
  CHECK(warm.status == 0);
  CHECK(warm.out == cold.out);
  // corrupt cache entries are re-verified and ignored
  for (const auto& e : fs::directory_iterator(dir)) std::ofstream(e.path()) << "{}";
  RunResult rebuilt = run(cmd);
  CHECK(rebuilt.status == 0);
  CHECK(rebuilt.out == cold.out);
}

TEST_CASE("zeta output") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  RunResult r = run("zeta --group " + a5.string() + " --s 1");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"total\": \"7/15\"") != std::string::npos);
}

TEST_CASE("table format prints flat key value lines") {
  fs::path a5 = write_group("a5_cli.json", kA5);
  RunResult r = run("pk --group " + a5.string() + " --k 2 --mode exact --format table");
  CHECK(r.status == 0);
  CHECK(r.out.find("value: 19/30") != std::string::npos);
}
