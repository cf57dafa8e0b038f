#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lnratio/core_eval.hpp"

using namespace lnratio;

namespace {

// Reference values from 50-digit mpmath evaluation of the defining formulas.
struct Reference {
  cplx z;
  cplx H;
  cplx G;
  cplx inv_z2H;
};

const Reference kReference[] = {
    {{2.0, 0.0}, {0.35691544885672408, 0.0}, {0.71383089771344817, 0.0}, {0.70044600423098257, 0.0}},
    {{0.5, 0.0}, {2.8017840169239303, 0.0}, {1.4008920084619651, 0.0}, {1.4276617954268963, 0.0}},
    {{10.0, 0.0}, {0.038498501304951595, 0.0}, {0.38498501304951595, 0.0}, {0.25975037108038856, 0.0}},
    {{1.0, 1.0},
     {0.22050786341340453, -0.53857496987049405},
     {0.75908283328389858, -0.31806710645708952},
     {0.79509314128729910, -0.32553367610468984}},
    {{3.0, -2.0},
     {0.10257603816470161, 0.11059980012387389},
     {0.52892771474185260, 0.12664732404221846},
     {0.47850742740994229, 0.17628962527680606}},
    {{0.5, 2.0},
     {-0.10880535923258178, -0.28340214031724928},
     {0.51240160101820768, -0.35931178862378819},
     {0.58563608672126690, -0.50773121117242312}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("core_eval") {
  TEST_CASE("values at one are exact") {
    const auto one = CutPlanePoint::make(1.0);
    CHECK(eval_H(one) == cplx(1.0, 0.0));
    CHECK(eval_h(one) == cplx(2.0, 0.0));
    CHECK(eval_G(one) == cplx(1.0, 0.0));
    CHECK(eval_inv_z2H(one) == cplx(1.0, 0.0));
  }

  TEST_CASE("matches high-precision reference values") {
    for (const auto& r : kReference) {
      const auto z = CutPlanePoint::make(r.z);
      CAPTURE(r.z);
      CHECK(rel(eval_H(z), r.H) < 1e-13);
      CHECK(rel(eval_h(z), r.H + 1.0) < 1e-13);
      CHECK(rel(eval_G(z), r.G) < 1e-13);
      CHECK(rel(eval_inv_z2H(z), r.inv_z2H) < 1e-13);
    }
  }

  TEST_CASE("function ids evaluate the expected aliases") {
    const auto z = CutPlanePoint::make(1.7, 0.4);
    const cplx w = z.value();
    const cplx G = eval_G(z);
    CHECK(eval(FunctionId::XH, z) == G);
    CHECK(rel(eval(FunctionId::X2H, z), w * G) < 1e-15);
    CHECK(rel(eval(FunctionId::INV_XH, z), 1.0 / G) < 1e-15);
    CHECK(rel(eval(FunctionId::INV_H, z), 1.0 / eval_H(z)) < 1e-15);
    CHECK(eval(FunctionId::INV_X2H, z) == eval(FunctionId::INV_Z2H, z));
    for (auto fn : {FunctionId::H, FunctionId::h, FunctionId::G, FunctionId::INV_Z2H, FunctionId::INV_H,
                    FunctionId::INV_XH, FunctionId::X2H, FunctionId::XH, FunctionId::INV_X2H}) {
      CHECK(parse_function_id(to_string(fn)) == fn);
    }
    CHECK_FALSE(parse_function_id("nope").has_value());
  }

  TEST_CASE("conjugate symmetry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
      const double re = r(rng);
      const double im = r(rng);
      if (!CutPlanePoint::admissible(re, im)) continue;
      const auto z = CutPlanePoint::make(re, im);
      if (near_imaginary_unit(z, 1e-3)) continue;
      CHECK(std::abs(eval_H(z.conj()) - std::conj(eval_H(z))) <= 1e-14 * std::abs(eval_H(z)));
    }
  }

  TEST_CASE("reciprocal symmetry H(1/x) H(x) = 1") {
    for (double x : {1e-3, 0.1, 0.37, 0.999, 1.001, 2.0, 55.0, 1e4}) {
      CHECK(eval_real(FunctionId::H, x) * eval_real(FunctionId::H, 1.0 / x) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("series and formula paths agree near one") {
    for (double d : {1e-4, 5e-4, 9e-4}) {
      for (cplx w : {cplx(1.0 + d, 0.0), cplx(1.0 - d, 0.0), cplx(1.0, d), cplx(1.0 + d / 2, -d / 2)}) {
        CAPTURE(w);
        CHECK(rel(paths::H_series(w), paths::H_formula(w)) < 1e-9);
        CHECK(rel(paths::h_series(w), paths::h_formula(w)) < 1e-9);
      }
    }
  }

  TEST_CASE("continuity across the series radius") {
    const double below = std::nextafter(1.0 + kSeriesRadius, 0.0);
    const double above = std::nextafter(1.0 + kSeriesRadius, 2.0);
    CHECK(eval_real(FunctionId::H, below) == doctest::Approx(eval_real(FunctionId::H, above)).epsilon(1e-12));
  }

  TEST_CASE("cut points are rejected") {
    CHECK_THROWS_AS(CutPlanePoint::make(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(CutPlanePoint::make(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(CutPlanePoint::make(std::nan(""), 1.0), DomainError);
    CHECK_NOTHROW(CutPlanePoint::make(-1.0, 1e-300));
    CHECK_THROWS_AS(eval_real(FunctionId::H, -2.0), DomainError);
  }

  TEST_CASE("accuracy flag next to the imaginary unit") {
    CHECK(eval_checked(FunctionId::H, CutPlanePoint::make(1e-8, 1.0)).accuracy_loss);
    CHECK_FALSE(eval_checked(FunctionId::H, CutPlanePoint::make(0.0, 1.5)).accuracy_loss);
  }

  TEST_CASE("boundary limit recovers the boundary values of G") {
    // -(1/pi) lim Im G(-t + i0) at t = 0.5, 2, 3 from 50-digit evaluation at eps = 1e-40.
    const double t_values[] = {0.5, 2.0, 3.0};
    const double rho_ref[] = {0.54567833396864572, 0.36959944379388876, 0.12299276169686251};
    for (int i = 0; i < 3; ++i) {
      const auto lim = boundary_limit(t_values[i], BoundaryQuantity::IM_G);
      CHECK(lim.converged);
      CHECK(-lim.value / std::numbers::pi == doctest::Approx(rho_ref[i]).epsilon(1e-9));
    }
    CHECK_THROWS_AS(boundary_limit(1.0, BoundaryQuantity::IM_G), DomainError);
  }
}
