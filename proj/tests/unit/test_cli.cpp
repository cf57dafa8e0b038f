#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lnratio::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval") {
    auto r = run({"eval", "--fn", "H", "--x", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("1 0", 0) == 0);
    r = run({"eval", "--fn", "h", "--x", "1"});
    CHECK(r.out.rfind("2 0", 0) == 0);
    CHECK(run({"eval", "--fn", "H", "--x", "-1"}).code == lnratio::cli::kUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(run({"eval", "--bogus"}).code == lnratio::cli::kUsage);
    CHECK(run({"eval", "--fn", "nope", "--x", "1"}).code == lnratio::cli::kUsage);
    CHECK(run({}).code == lnratio::cli::kUsage);
  }

  TEST_CASE("checks set the exit code") {
    CHECK(run({"check", "cm", "--fn", "H", "--grid", "log:0.1:10:5", "--order", "4"}).code == 0);
    CHECK(run({"check", "cm", "--fn", "X2H", "--grid", "log:0.1:10:5", "--order", "4"}).code == 1);
    const auto pts = std::filesystem::temp_directory_path() / "lnratio_cli_points.txt";
    std::ofstream(pts) << "2 0\n0.5 1\n";
    // The closed form and the integral disagree at these points.
    const auto v = run({"verify", "--rep", "STIELTJES_G", "--points", pts.string()});
    CHECK(v.code == lnratio::cli::kCheckFailed);
    CHECK(v.out.find("FAIL") != std::string::npos);
    std::filesystem::remove(pts);
  }

  TEST_CASE("unwritable output") {
    const auto r = run({"check", "cm", "--fn", "H", "--grid", "log:0.1:10:5", "--order", "2", "--out",
                        "/nonexistent/dir/x.json"});
    CHECK(r.code == lnratio::cli::kNumerical);
    CHECK_FALSE(r.err.empty());
  }
}
