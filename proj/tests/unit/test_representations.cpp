#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lnratio/representations.hpp"

using namespace lnratio;

TEST_SUITE("representations") {
  TEST_CASE("names round-trip") {
    for (auto rep : all_representations()) CHECK(parse_representation_id(to_string(rep)) == rep);
    CHECK_FALSE(parse_representation_id("nope").has_value());
    CHECK(all_representations().size() == 7);
  }

  TEST_CASE("stieltjes form of zH at one") {
    // Independent 30-digit quadrature of int_0^inf rho(t)/(t+1) dt.
    const auto z = CutPlanePoint::make(1.0);
    CHECK(representation_lhs(RepresentationId::STIELTJES_G, z) == cplx(1.0, 0.0));
    const auto q = representation_rhs(RepresentationId::STIELTJES_G, z, 1e-12);
    CHECK(q.status == QuadratureStatus::Converged);
    CHECK(q.value.real() == doctest::Approx(0.99355879646255).epsilon(1e-9));
  }

  TEST_CASE("levy form of 1/(zH) at one against the reference integral") {
    const auto q = representation_rhs(RepresentationId::LK_INV_ZH, CutPlanePoint::make(1.0), 1e-9);
    CHECK(q.value.real() == doctest::Approx(0.784994228493).epsilon(1e-7));
  }

  TEST_CASE("gating") {
    CHECK(in_gated_region(CutPlanePoint::make(1.0, 1.0)));
    CHECK_FALSE(in_gated_region(CutPlanePoint::make(-2.0, 0.5)));
    CHECK_FALSE(in_gated_region(CutPlanePoint::make(0.0, 1.005)));
    CHECK_THROWS_AS(residual(RepresentationId::STIELTJES_G, CutPlanePoint::make(-2.0, 0.5), 1e-6), DomainError);
    CHECK_THROWS_AS(residual(RepresentationId::LK_Z2H, CutPlanePoint::make(-0.1, 1.0), 1e-6), DomainError);
  }

  TEST_CASE("default points") {
    const auto pts = default_points(RepresentationId::STIELTJES_G);
    CHECK(pts.size() == 9);
    for (const auto& z : pts) CHECK(in_gated_region(z));
  }

  TEST_CASE("sigma candidates give opposite verdicts") {
    const auto z = CutPlanePoint::make(2.0);
    RepresentationOptions a;
    a.sigma = SigmaCandidate::A;
    RepresentationOptions b;
    b.sigma = SigmaCandidate::B;
    const auto ra = residual(RepresentationId::STIELTJES_INV_Z2H, z, 1e-5, a);
    const auto rb = residual(RepresentationId::STIELTJES_INV_Z2H, z, 1e-5, b);
    // The printed density misses by orders of magnitude; the calibrated one is close.
    CHECK(ra.rel_res > 100 * rb.rel_res);
    CHECK_FALSE(ra.pass);
  }

  TEST_CASE("truncated split converges") {
    const auto s = truncated_split(RepresentationId::STIELTJES_H_SPLIT, CutPlanePoint::make(2.0));
    CHECK(s.cutoffs.size() == 3);
    CHECK(s.converging);
    CHECK(s.distances.back() < s.distances.front());
    const auto q = representation_rhs(RepresentationId::STIELTJES_H_SPLIT, CutPlanePoint::make(2.0), 1e-12);
    CHECK(std::abs(s.combined - q.value) < 1e-8);
    bool divergent = false;
    for (const auto& t : s.terms) divergent |= t.full_range_status == QuadratureStatus::Divergent;
    CHECK(divergent);
  }

  TEST_CASE("report aggregates points") {
    const std::vector<CutPlanePoint> pts = {CutPlanePoint::make(0.5), CutPlanePoint::make(1.0, 1.0)};
    const auto rep = verify_representation(RepresentationId::STIELTJES_G, pts, 1e-6);
    CHECK(rep.points.size() == 2);
    double worst = 0.0;
    bool all = true;
    for (const auto& p : rep.points) {
      worst = std::max(worst, p.rel_res);
      all = all && p.pass;
    }
    CHECK(rep.max_rel_res == worst);
    CHECK(rep.pass == all);
    CHECK(rep.witness.has_value() == !all);
  }
}
