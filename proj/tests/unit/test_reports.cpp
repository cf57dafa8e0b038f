#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lnratio/reports.hpp"

using namespace lnratio;

namespace {

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

}  // namespace

TEST_SUITE("reports") {
  TEST_CASE("property report layout") {
    const auto r = check_cm(FunctionId::X2H, GridSpec::log(0.1, 10, 5), 2);
    const Json j = to_json(r);
    CHECK(keys(j) == std::vector<std::string>{"property", "fn", "grid", "max_order", "pass", "worst_violation",
                                              "witness"});
    CHECK(j["property"] == "CM");
    CHECK(j["pass"] == false);
    CHECK(keys(j["witness"]) == std::vector<std::string>{"x", "k", "value"});
    const Json ok = to_json(check_cm(FunctionId::H, GridSpec::log(0.1, 10, 5), 2));
    CHECK(ok["witness"].is_null());
  }

  TEST_CASE("residual report layout") {
    const auto r = verify_representation(RepresentationId::STIELTJES_G, {CutPlanePoint::make(2.0)}, 1e-6);
    const Json j = to_json(r);
    CHECK(keys(j) == std::vector<std::string>{"rep", "points", "max_rel_res", "pass"});
    CHECK(keys(j["points"][0]) == std::vector<std::string>{"z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                                                           "abs_res", "rel_res", "quad_err"});
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "lnratio_reports_test";
    std::filesystem::create_directories(dir);
    write_json(dir / "a.json", Json{{"x", 1}});
    std::ifstream in(dir / "a.json");
    CHECK(Json::parse(in)["x"] == 1);
    CHECK_THROWS_AS(write_text(dir / "missing" / "sub" / "b.txt", "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
  }
}
