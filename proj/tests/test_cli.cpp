#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef UALGEO_CLI
#error "UALGEO_CLI must name the command-line binary"
#endif

namespace {
  struct Run {
    int         status = -1;
    std::string out;
  };

  Run run(std::string const& args, std::string const& env = "") {
    std::string const cmd = env + (env.empty() ? "" : " ") + "\"" UALGEO_CLI "\" " + args
                            + " 2>/dev/null";
    Run   r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t            got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      r.out.append(buf.data(), got);
    }
    int const status = pclose(pipe);
    r.status         = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string data(std::string const& rel) {
    return std::string(UALGEO_DATA_DIR) + "/" + rel;
  }

  std::string temp_file(std::string const& name, std::string const& contents) {
    auto const dir = std::filesystem::temp_directory_path() / "ualgeo_cli_test";
    std::filesystem::create_directories(dir);
    auto const path = dir / name;
    std::ofstream(path) << contents;
    return path.string();
  }

  bool has(Run const& r, std::string const& needle) {
    return r.out.find(needle) != std::string::npos;
  }
}  // namespace

TEST_CASE("free and radical") {
  auto r = run("free --algebra z2group.json --vars 2");
  CHECK(r.status == 0);
  CHECK(has(r, "4 elements"));
  CHECK(has(r, "(+ x1 x2)"));

  r = run("radical --algebra z2group.json --vars 2 --system " + data("systems/z2_sum_zero.json"));
  CHECK(r.status == 0);
  CHECK(has(r, "{{(e), (+ x1 x2)}, {x1, x2}}"));

  r = run("radical --algebra pointed_z2.json --vars 1 --system " + data("systems/z2p_unsat.json"));
  CHECK(r.status == 0);
  CHECK(has(r, "0 satisfying assignments"));

  r = run("free --algebra " + data("corpus/s2.json") + " --vars 3 --json");
  CHECK(r.status == 0);
  auto const j = nlohmann::json::parse(r.out);
  CHECK(j["size"] == 7);

  r = run("tmap --algebra z2group.json --vars 2 --system " + data("systems/z2_sum_zero.json"));
  CHECK(r.status == 0);
  r = run("congruences --algebra z2group.json --json");
  CHECK(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["count"] == 2);
}

TEST_CASE("verdicts and exit codes") {
  auto r = run("check-theorem --algebra z2group.json --vars 2 --op join --policy exhaustive");
  CHECK(r.status == 0);
  CHECK(has(r, "pass"));

  r = run("check-hypothesis --algebra s2.json --vars 2 --op full --policy exhaustive --json");
  CHECK(r.status == 1);
  auto const j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "fail");
  CHECK(j["failures"][0]["system"] == nlohmann::json::array());

  r = run("check-theorem --algebra s2.json --vars 2 --op full --policy exhaustive");
  CHECK(r.status == 1);
  r = run("check-theorem --algebra s2.json --vars 2 --op full --policy exhaustive --force");
  CHECK(r.status == 0);
  CHECK(has(r, "expected-fail"));

  CHECK(run("check-axiom --algebra z2group.json --vars 2 --op meet --seed 1").status == 1);
  CHECK(run("check-axiom --algebra z2group.json --vars 2 --op radunion --seed 1").status == 0);
  CHECK(run("geom-eq --algebra s2.json --other trivial.json --policy exhaustive").status == 1);
  CHECK(run("geom-eq --algebra z2group.json --index-size 3 --core 1,2").status == 0);
  CHECK(run("geom-eq --algebra z2group.json --other z3group.json").status == 1);
  CHECK(run("filter-power --algebra z2group.json --index-size 3 --core 1,2").status == 0);
  CHECK(run("lemma1 --algebra s2.json --vars 2").status == 0);
  CHECK(run("validate --algebra chain3.json").status == 0);
}

TEST_CASE("usage and file errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("free --algebra z2group.json").status == 2);
  CHECK(run("free --algebra /nonexistent.json --vars 1").status == 2);
  CHECK(run("free --algebra z2group.json --vars 1 --bogus").status == 2);
  CHECK(run("check-theorem --algebra z2group.json --vars 2 --op join --policy sample").status
        == 2);
  CHECK(run("check-theorem --algebra z2group.json --vars 2 --op cup").status == 2);
  CHECK(run("filter-power --algebra z2group.json --index-size 3 --core 4").status == 2);
  CHECK(run("radical --algebra s2.json --vars 2 --system " + data("systems/z2_sum_zero.json"))
            .status
        == 2);

  auto const broken = temp_file("broken.json", "{\"name\": ");
  CHECK(run("validate --algebra " + broken).status == 2);
  auto const invalid = temp_file(
      "invalid.json",
      R"({"name": "bad", "signature": [{"op": "f", "arity": 1}], "size": 2, "tables": {"f": [0, 2]}})");
  auto r = run("validate --algebra " + invalid + " --json");
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.out)["error"] == "EntryOutOfRange");
}

TEST_CASE("caps") {
  CHECK(run("free --algebra s2.json --vars 3 --cap-free 5").status == 3);
  CHECK(run("free --algebra s2.json --vars 3", "UALGEO_CAP_OVERRIDE=free_elements=5").status
        == 3);
  CHECK(run("free --algebra s2.json --vars 3", "UALGEO_CAP_OVERRIDE=free_elements").status == 2);
  CHECK(run("free --algebra s2.json --vars 3", "UALGEO_CAP_OVERRIDE=widgets=5").status == 2);
  CHECK(run("check-theorem --algebra z2group.json --vars 2 --op join --policy exhaustive "
            "--cap-systems 8")
            .status
        == 3);
}

TEST_CASE("json reports are stable across jobs") {
  std::string const args
      = "check-theorem --algebra pointed_z2.json --vars 2 --op meet --policy sample "
        "--seed 5 --samples 3000 --json";
  auto const one  = run(args);
  auto const four = run(args + " --jobs 4");
  CHECK(one.status == 1);
  CHECK(one.out == four.out);
  CHECK(one.out == run(args).out);
}
