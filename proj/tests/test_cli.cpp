#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "yulecrack/cli.hpp"

using namespace yulecrack::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "yulecrack");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
  }

  TEST_CASE("simulate") {
    const auto r = invoke({"simulate", "--family", "exp", "--lambda", "1", "--xi", "1", "--t", "1", "--n", "100000",
                           "--seed", "42"});
    REQUIRE(r.code == kOk);
    CHECK(r.out.rfind("# yulecrack-simulate v1", 0) == 0);
    CHECK(r.out.find("\nvalue\n") != std::string::npos);
    CHECK(data_rows(r.out) == 100000);
    const auto again = invoke({"simulate", "--family", "exp", "--lambda", "1", "--xi", "1", "--t", "1", "--n",
                               "100000", "--seed", "42"});
    CHECK(again.out == r.out);
    CHECK(invoke({"simulate", "--family", "tempered", "--alpha", "0.8", "--mu", "10", "--n", "100"}).code == kOk);
    const auto paths = invoke({"simulate", "--horizon", "1", "--n", "5"});
    CHECK(paths.code == kOk);
    CHECK(paths.out.find("path,time,value") != std::string::npos);
  }

  TEST_CASE("seed precedence") {
    const auto base = invoke({"simulate", "--n", "20", "--seed", "7"});
    const auto path = (std::filesystem::temp_directory_path() / "yulecrack_test_config.json").string();
    std::ofstream(path) << R"({"seed": 7, "n": 20, "family": "stable", "alpha": 0.5})";
    const auto from_config = invoke({"simulate", "--config", path, "--family", "exp"});
    CHECK(from_config.out == base.out);
    ::setenv("YULECRACK_SEED", "7", 1);
    const auto from_env = invoke({"simulate", "--n", "20"});
    CHECK(from_env.out == base.out);
    const auto flag_wins = invoke({"simulate", "--n", "20", "--seed", "8"});
    CHECK(flag_wins.out != base.out);
    ::unsetenv("YULECRACK_SEED");
    CHECK(invoke({"simulate", "--n", "20"}).out.find("# seed=12345") != std::string::npos);
    std::remove(path.c_str());
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"simulate", "--family", "nope"}).code == kBadConfig);
    CHECK(invoke({"simulate", "--family", "stable", "--alpha", "1.5"}).code == kBadConfig);
    CHECK(invoke({"simulate", "--bogus"}).code == kBadConfig);
    CHECK(invoke({"reproduce", "--figure", "9"}).code == kBadConfig);
    CHECK(invoke({"simulate", "--n", "3", "-o", "/nonexistent/dir/out.csv"}).code == kIoFailure);
    CHECK(invoke({"simulate", "--config", "/nonexistent/cfg.json"}).code == kIoFailure);
    CHECK(invoke({"verify", "--suite", "pde", "--family", "stable", "--alpha", "0.5", "--quick"}).code == kVerifyFailed);
  }

  TEST_CASE("pdf and fpt tables") {
    const auto pdf = invoke({"pdf", "--family", "tempered", "--alpha", "0.5", "--mu", "10", "--xi", "0.5", "--to", "3",
                             "--points", "30"});
    REQUIRE(pdf.code == kOk);
    CHECK(data_rows(pdf.out) == 30);
    const auto fpt = invoke({"fpt", "--family", "stable", "--alpha", "0.5", "--beta", "2", "--to", "3", "--points",
                             "31", "--format", "json"});
    REQUIRE(fpt.code == kOk);
    const auto j = nlohmann::json::parse(fpt.out);
    CHECK(j["columns"].size() == 3);
    CHECK(j["rows"].size() == 31);
    CHECK(j["meta"]["mean_path"] == "fox-wright");
    const auto lv = invoke({"fpt", "--family", "poisson", "--axis", "beta", "--to", "5", "--points", "6"});
    CHECK(lv.code == kOk);
  }

  TEST_CASE("verify reports") {
    const auto r = invoke({"verify", "--suite", "pde", "--family", "exp", "--quick"});
    CHECK(r.code == kOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"][0]["metrics"].contains("convergence_order"));
    const auto tc = invoke({"verify", "--suite", "timechange", "--family", "stable", "--alpha", "0.5", "--quick"});
    CHECK(tc.code == kOk);
    CHECK(nlohmann::json::parse(tc.out)["checks"][0]["metrics"].contains("p_value"));
  }

  TEST_CASE("figures") {
    const auto f1 = figure_table(1, 20000, 1, 4);
    CHECK(f1.columns == std::vector<std::string>{"y", "t", "pdf_theory", "pdf_empirical"});
    const auto f3 = figure_table(3, 0, 1, 1);
    CHECK(f3.columns.size() == 7);
    const auto f2 = figure_table(2, 0, 1, 1);
    for (const auto& o : figure_orderings(f2, f3)) {
      CAPTURE(o.claim);
      CHECK(o.difference > 0.0);
    }
    const auto svg_path = (std::filesystem::temp_directory_path() / "yulecrack_fig4.svg").string();
    const auto r = invoke({"reproduce", "--figure", "4", "--n", "2000", "--svg", svg_path});
    CHECK(r.code == kOk);
    std::ifstream svg(svg_path);
    std::string first;
    std::getline(svg, first);
    CHECK(first.rfind("<svg", 0) == 0);
    std::remove(svg_path.c_str());
  }
}
