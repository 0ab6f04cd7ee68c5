#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lerch/cli/commands.hpp"
#include "lerch/cli/settings.hpp"
#include "lerch/error.hpp"

using lerch::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "lerchlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help exits zero for every subcommand") {
    for (const char* cmd : {"eval", "scan", "probe", "random", "bergman", "phi"}) {
      const auto r = invoke({cmd, "--help"});
      CHECK(r.code == 0);
      CHECK(r.out.find("usage") != std::string::npos);
    }
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
  }

  TEST_CASE("eval: zeta(2)") {
    const auto r = invoke({"eval", "--sigma", "2", "--t", "0", "--alpha", "1", "--lambda", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double bound = j["abs_error_bound"];
    CHECK(std::abs(j["value"]["re"].get<double>() - 1.6449340668482264) <= bound + 1e-15);
    CHECK(j["value"]["im"].get<double>() == 0.0);
  }

  TEST_CASE("eval: argument and computation errors") {
    CHECK(invoke({"eval", "--sigma", "0.4", "--alpha", "1", "--lambda", "0.5"}).code == 0);
    const auto bad = invoke({"eval", "--sigma", "2", "--alpha", "1.5"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("alpha out of (0,1]") != std::string::npos);
    const auto pole = invoke({"eval", "--sigma", "1", "--alpha", "1", "--lambda", "1"});
    CHECK(pole.code == 1);
    CHECK(pole.err.find("pole error") != std::string::npos);
    CHECK(invoke({"eval", "--t", "1"}).code == 2);
    CHECK(invoke({"eval", "--sigma", "2", "--bogus", "1"}).code == 2);
  }

  TEST_CASE("scan: duplicate lambda names the clash") {
    const auto r = invoke({"scan", "--lambda", "0.5, 0.5", "--set.1", "disk 0.75 0 0.02", "--set.2",
                           "disk 0.75 1 0.02", "--target.1", "1", "--target.2", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("clash") != std::string::npos);
  }

  TEST_CASE("scan: set outside the strip is rejected") {
    const auto r = invoke({"scan", "--set.1", "disk 0.9 0 0.2", "--target.1", "1"});
    CHECK(r.code == 2);
  }

  TEST_CASE("scan: huge epsilon prints density 1") {
    const auto out = scratch("toy.json");
    const auto r = invoke({"scan", "--set.1", "disk 0.75 0 0.02", "--target.1", "1", "--epsilon", "1e9",
                           "--tau_max", "20", "--boundary_samples", "16", "--interior_samples", "4",
                           "--threads", "1", "--output", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("density = 1 ") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["report"]["density"].get<double>() == 1.0);
  }

  TEST_CASE("scan: csv trace") {
    const auto trace = scratch("trace.csv");
    const auto r = invoke({"scan", "--set.1", "disk 0.75 0 0.02", "--target.1", "1", "--tau_max", "1",
                           "--boundary_samples", "8", "--interior_samples", "1", "--trace",
                           trace.string(), "--output", scratch("t.json").string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(trace);
    CHECK(text.find("tau,distance\n") != std::string::npos);
    std::size_t rows = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line[0] != '#' && line != "tau,distance") ++rows;
    }
    CHECK(rows == 21);
  }

  TEST_CASE("random: deterministic output and config round trip") {
    const auto a = scratch("random_a.json");
    const auto b = scratch("random_b.json");
    const auto c = scratch("random_c.json");
    const std::vector<std::string> base{"random", "--seed", "7", "--n", "1000", "--samples", "5"};
    auto args = base;
    args.insert(args.end(), {"--output", a.string()});
    REQUIRE(invoke(args).code == 0);
    args = base;
    args.insert(args.end(), {"--output", b.string()});
    REQUIRE(invoke(args).code == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(invoke({"random", "--config", a.string(), "--output", c.string()}).code == 0);
    CHECK(slurp(a) == slurp(c));
  }

  TEST_CASE("csv header round trip") {
    const auto a = scratch("phi_a.csv");
    const auto b = scratch("phi_b.csv");
    REQUIRE(invoke({"phi", "--theta", "0.3", "--t", "17", "--format", "csv", "--output", a.string()}).code == 0);
    REQUIRE(invoke({"phi", "--config", a.string(), "--output", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
  }

  TEST_CASE("phi: full period") {
    const auto r = invoke({"phi", "--theta", "0.25", "--t", "3"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["abs"].get<double>() < 1e-15);
    CHECK(invoke({"phi", "--theta", "2", "--t", "3"}).code == 2);
  }

  TEST_CASE("bergman: zero element gives zero rows") {
    const auto r = invoke({"bergman", "--domain", "rect 0.6 0.9 0 1", "--lambda", "1/3", "--g.1", "0",
                           "--x_grid", "4, 5, 6", "--format", "csv", "--threads", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x,S,S1,abs_S2,envelope,cum_sum\n") != std::string::npos);
    CHECK(r.out.find("\n4,0,0,0,") != std::string::npos);
    CHECK(r.out.find("\n6,0,0,0,") != std::string::npos);
  }

  TEST_CASE("bergman: empty window is a computation error") {
    const auto r = invoke({"bergman", "--domain", "rect 0.6 0.9 0 1", "--lambda", "1/3, 2/3",
                           "--x_grid", "5", "--threads", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("empty-window") != std::string::npos);
  }

  TEST_CASE("settings parsing") {
    using namespace lerch::cli;
    CHECK(parse_number("1/3") == 1.0 / 3.0);
    CHECK(parse_number("1/pi") == 1.0 / std::numbers::pi);
    CHECK(parse_complex("0.75-0.1i") == std::complex<double>(0.75, -0.1));
    CHECK(parse_complex("-2i") == std::complex<double>(0.0, -2.0));
    CHECK(parse_complex("1e-3+i") == std::complex<double>(1e-3, 1.0));
    CHECK(parse_number_list("1/3, 2/3").size() == 2);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK_THROWS_AS(parse_number("abc"), lerch::InvalidArgument);
    CHECK_THROWS_AS(parse_shape("square 1 2"), lerch::InvalidArgument);
  }
}
