#include <doctest.h>

#include <cmath>

#include "lnratio/analysis.hpp"
#include "lnratio/representations.hpp"

using namespace lnratio;

TEST_SUITE("analysis") {
  TEST_CASE("grid parsing") {
    const auto g = GridSpec::parse("log:1e-2:1e2:5");
    CHECK(g.scale == GridSpec::Scale::Log);
    const auto p = g.points();
    REQUIRE(p.size() == 5);
    CHECK(p.front() == doctest::Approx(1e-2));
    CHECK(p[2] == doctest::Approx(1.0));
    CHECK(p.back() == doctest::Approx(1e2));
    const auto l = GridSpec::parse("lin:1:3:3").points();
    CHECK(l[1] == doctest::Approx(2.0));
    CHECK(GridSpec::parse(g.to_string()).count == 5);
    for (const char* bad : {"log:1:2", "cube:1:2:3", "log:-1:2:3", "log:1:2:1", "log:a:2:3", "lin:1:2:3:4"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(GridSpec::parse(bad), DomainError);
    }
  }

  TEST_CASE("completely monotonic functions pass") {
    const auto grid = GridSpec::log(1e-2, 1e2, 30);
    for (auto fn : {FunctionId::H, FunctionId::h, FunctionId::G, FunctionId::INV_Z2H}) {
      const auto r = check_cm(fn, grid, 8);
      CAPTURE(to_string(fn));
      CHECK(r.pass);
      CHECK_FALSE(r.witness.has_value());
      CHECK(r.points_checked == 30);
    }
    CHECK(check_lcm(FunctionId::H, grid, 8).pass);
  }

  TEST_CASE("an increasing function is not completely monotonic") {
    const auto r = check_cm(FunctionId::X2H, GridSpec::log(1e-2, 1e2, 20), 3);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->k >= 1);
    CHECK(r.worst_violation > 0.0);
  }

  TEST_CASE("bernstein checks") {
    const auto grid = GridSpec::log(1e-2, 1e2, 40);
    CHECK(check_bernstein(FunctionId::X2H, grid, 6).pass);
    const auto r = check_bernstein(FunctionId::INV_H, grid, 6);
    CHECK_FALSE(r.pass);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->k >= 1);
  }

  TEST_CASE("degree ratio") {
    CHECK(degree_ratio(FunctionId::H, 2.0) == doctest::Approx(degree_ratio_H_closed_form(2.0)).epsilon(1e-9));
    CHECK(degree_ratio(FunctionId::H, 0.3) == doctest::Approx(degree_ratio_H_closed_form(0.3)).epsilon(1e-9));
    CHECK_THROWS_AS(degree_ratio_H_closed_form(1.0), DomainError);
    for (double x : {1e-6, 0.01, 0.5, 3.0, 40.0}) {
      CAPTURE(x);
      CHECK(degree_ratio(FunctionId::XH, x) == doctest::Approx(degree_ratio(FunctionId::H, x) - 1.0).epsilon(1e-9));
      CHECK(degree_ratio(FunctionId::H, x) >= 1.0 - 1e-6);
    }
  }

  TEST_CASE("degree bracket") {
    const auto b = estimate_cm_degree(jet_target(FunctionId::H), {0.0, 0.5, 1.0, 1.5, 2.0},
                                      default_degree_grid().points(), 8);
    REQUIRE(b.largest_passing.has_value());
    REQUIRE(b.smallest_failing.has_value());
    CHECK(*b.largest_passing >= 1.0);
    CHECK(*b.smallest_failing - *b.largest_passing <= 0.01 + 1e-12);
    CHECK(b.consistent);
    CHECK(b.first_failure.has_value());
  }

  TEST_CASE("half-plane criterion") {
    const auto grid = upper_half_plane_grid();
    CHECK(grid.size() == 2000);
    for (const auto& z : grid) CHECK(in_gated_region(z));
    CHECK(check_stieltjes_geometric(stieltjes_target(FunctionId::G), grid).pass);
    CHECK(check_stieltjes_geometric(damped_G_target(1.0), grid).pass);
    const auto h = check_stieltjes_geometric(stieltjes_target(FunctionId::X2H), grid);
    CHECK_FALSE(h.pass);
    REQUIRE(h.witness.has_value());
    CHECK(h.witness->y > 0.0);
    CHECK_THROWS_AS(check_stieltjes_geometric(stieltjes_target(FunctionId::H), {CutPlanePoint::make(1.0, -1.0)}),
                    DomainError);
  }

  TEST_CASE("closure identities") {
    const auto r = check_closure_identities(GridSpec::log(1e-3, 1e3, 200));
    CHECK(r.pass);
    CHECK(r.worst_violation < 1e-10);
  }
}
