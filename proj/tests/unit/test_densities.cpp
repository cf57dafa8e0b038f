#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lnratio/densities.hpp"

using namespace lnratio;

namespace {

// -(1/pi) Im G, |G|^2 and -(1/pi) Im 1/(z^2 H) at z = -t + i eps, eps = 1e-40, 50 digits.
struct BoundaryReference {
  double t;
  double rho;
  double g2;
  double sigma;
};

const BoundaryReference kBoundary[] = {
    {0.001, 0.99850191454363831, 57.428072890904333, 17.387000194843464},
    {0.5, 0.54567833396864572, 3.7101186319387412, 0.29415681173704074},
    {2.0, 0.36959944379388876, 12.943289481265870, 0.014277647283128735},
    {2.5, 0.13342979679250173, 0.21990752574593087, 0.24270164713991502},
    {3.0, 0.12299276169686251, 0.18848356263750491, 0.21751279877457974},
    {100.0, 0.032563600556959016, 0.033053131944525154, 0.0098518956120746003},
};

}  // namespace

TEST_SUITE("densities") {
  TEST_CASE("closed forms match the boundary values") {
    for (const auto& r : kBoundary) {
      CAPTURE(r.t);
      CHECK(rho(r.t) == doctest::Approx(r.rho).epsilon(1e-12));
      CHECK(g2(r.t) == doctest::Approx(r.g2).epsilon(1e-12));
      CHECK(sigma(r.t) == doctest::Approx(r.sigma).epsilon(1e-11));
    }
  }

  TEST_CASE("values at the breakpoints") {
    CHECK(rho(1.0) == 0.0);
    CHECK(g2(1.0) == 1.0);
    CHECK(varrho_paper(1.0) == 1.0);
    CHECK(sigma(1.0) == 0.0);
    CHECK(sigma_candidate_a(1.0) == 0.0);
    CHECK(sigma_candidate_b(1.0) == 0.0);
    // 1 + sqrt 2 belongs to the right branch.
    CHECK(rho(kSilverRatio) == rho_piecewise().limits[1].right);
  }

  TEST_CASE("one-sided limits") {
    const auto p = rho_piecewise();
    CHECK(p.limits[0].left == 0.0);
    CHECK(p.limits[0].right == 0.0);
    // The approach to 0 at t = 1 is logarithmically slow.
    CHECK(rho(1.0 - 1e-12) < rho(1.0 - 1e-6));
    CHECK(rho(1.0 + 1e-12) < rho(1.0 + 1e-6));
    CHECK(rho(1.0 + 1e-12) < 0.05);
    CHECK(p.limits[1].left >= 0.0);
    CHECK(p.limits[1].right >= 0.0);
    CHECK(p.limits[1].left != doctest::Approx(p.limits[1].right));
    CHECK(std::isfinite(p.limits[1].left));
  }

  TEST_CASE("densities are non-negative") {
    for (int i = 0; i <= 400; ++i) {
      const double t = std::pow(10.0, -6.0 + 12.0 * i / 400.0);
      CAPTURE(t);
      CHECK(rho(t) >= 0.0);
      CHECK(varrho_paper(t) > 0.0);
      CHECK(sigma(t) >= 0.0);
    }
    CHECK_THROWS_AS(rho(0.0), DomainError);
    CHECK_THROWS_AS(g2(-1.0), DomainError);
  }

  TEST_CASE("varrho_paper(t) t = g2(t)") {
    for (int i = 0; i < 100; ++i) {
      const double t = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
      CHECK(varrho_paper(t) * t == doctest::Approx(g2(t)).epsilon(1e-10));
    }
  }

  TEST_CASE("tail law") {
    for (double u : {30.0, 100.0, 700.0}) {
      const double t = std::exp(u);
      CHECK(rho(t) * (u * u + std::numbers::pi * std::numbers::pi) == doctest::Approx(1.0).epsilon(1e-9));
    }
    const double l = std::log(1e8);
    CHECK(rho(1e8) * l * l == doctest::Approx(0.971736).epsilon(1e-5));
  }

  TEST_CASE("log forms agree with direct evaluation") {
    for (double u : {-20.0, -1.0, 0.5, 3.0, 25.0}) {
      const auto a = rho_log(u);
      CHECK(a.scaled(u, 0) == doctest::Approx(rho(std::exp(u))).epsilon(1e-12));
      const auto b = sigma_candidate_b_log(u);
      CHECK(b.scaled(u, 0) == doctest::Approx(sigma_candidate_b(std::exp(u))).epsilon(1e-12));
    }
    // Far tails stay finite where t itself overflows.
    CHECK(std::isfinite(rho_log(1000.0).mantissa));
    CHECK(std::isfinite(sigma_candidate_b_log(-1000.0).mantissa));
  }

  TEST_CASE("sigma calibration is decisive") {
    const auto& cal = sigma_calibration();
    CHECK(cal.grid.size() == 40);
    CHECK(cal.decisive());
    CHECK(cal.selected == SigmaCandidate::B);
    CHECK(cal.max_dev_b <= 1e-6);
    CHECK(cal.max_dev_a > 1.0);
    for (double t : cal.grid) {
      CHECK(std::abs(t - 1.0) >= 1e-9);
      CHECK(std::abs(t - kSilverRatio) >= 1e-9);
    }
  }

  TEST_CASE("laplace-type kernels against reference integrals") {
    // 30-digit mpmath quadrature of the defining integrals at t = 1.
    CHECK(levy_density_z2H(1.0) == doctest::Approx(0.290276838168572).epsilon(1e-9));
    CHECK(levy_density_invzH(1.0) == doctest::Approx(0.14911732219643).epsilon(1e-9));
    CHECK(h_rep_kernel(1.0) == doctest::Approx(1.11955776278305).epsilon(1e-9));
  }

  TEST_CASE("kernel jets agree with differences") {
    const double t = 0.8;
    const auto c = levy_density_jet(rho_density(), t, 2, 1e-12);
    CHECK(c[0] == doctest::Approx(levy_density_z2H(t, 1e-12)).epsilon(1e-10));
    const double h = 1e-4;
    const double fd = (levy_density_z2H(t + h, 1e-13) - levy_density_z2H(t - h, 1e-13)) / (2 * h);
    CHECK(c[1] == doctest::Approx(fd).epsilon(1e-6));
    CHECK(c[1] < 0.0);
    CHECK(c[2] > 0.0);
  }

  TEST_CASE("csv export") {
    const double ts[] = {0.5, 2.0};
    const std::string csv = densities_csv(ts);
    CHECK(csv.rfind("t,rho,varrho_paper,g2,sigma\n", 0) == 0);
    CHECK(csv.find("0.5,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  }
}
