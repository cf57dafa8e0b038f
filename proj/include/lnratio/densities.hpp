#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lnratio/quadrature.hpp"

namespace lnratio {

inline constexpr double kSilverRatio = 1.0 + std::numbers::sqrt2;  // 1 + sqrt 2
inline constexpr std::array<double, 2> kDensityBreakpoints = {1.0, kSilverRatio};

double rho(double t);
/// lim |G(-t + i eps)|^2 as eps -> 0+.
double g2(double t);
/// The positive density displayed next to 1/(z^2 H(z)), as printed.
double varrho_paper(double t);
/// rho / varrho_paper.
double sigma_candidate_a(double t);
/// rho / (t g2).
double sigma_candidate_b(double t);

LogScaled rho_log(double u);
LogScaled sigma_candidate_b_log(double u);

enum class SigmaCandidate { A, B };

std::string_view to_string(SigmaCandidate c) noexcept;

struct SigmaCalibration {
  std::vector<double> grid;
  std::vector<double> oracle;
  std::vector<double> candidate_a;
  std::vector<double> candidate_b;
  double max_dev_a = 0.0;
  double max_dev_b = 0.0;
  double tolerance = 1e-6;
  bool a_matches = false;
  bool b_matches = false;
  SigmaCandidate selected = SigmaCandidate::B;

  /// Exactly one candidate is within tolerance of the oracle.
  bool decisive() const noexcept { return a_matches != b_matches; }
};

/// 40 log-spaced points in [1e-3, 1e3], nudged 1e-9 away from the breakpoints.
std::vector<double> calibration_grid();

/// Compares both candidates with -(1/pi) lim Im 1/(z^2 H(z)) on the calibration grid.
/// Computed once and cached. Throws DomainError if neither candidate matches.
const SigmaCalibration& sigma_calibration();

/// The calibrated density of the Stieltjes representation of 1/(z^2 H(z)).
double sigma(double t);

struct BreakpointLimits {
  double at = 0.0;
  double left = 0.0;
  double right = 0.0;
};

struct PiecewiseDensity {
  std::string name;
  std::array<double, 2> branch_bounds = kDensityBreakpoints;
  std::function<double(double)> evaluate;
  std::array<BreakpointLimits, 2> limits{};
  // Leading power of t (log factors dropped) as t -> inf and t -> 0+.
  double order_at_infinity = 0.0;
  double order_at_zero = 0.0;
};

PiecewiseDensity rho_piecewise();
PiecewiseDensity g2_piecewise();
PiecewiseDensity varrho_paper_piecewise();
PiecewiseDensity sigma_piecewise();

/// Quadrature-ready densities with breakpoints, tail hints and overflow-safe log forms.
Density rho_density();
Density sigma_density();
Density candidate_density(SigmaCandidate c);

/// int_0^inf u rho(u) e^{-t u} du, to relative tolerance `tol`.
double levy_density_z2H(double t, double tol = 1e-10);
/// int_0^inf u sigma(u) e^{-t u} du, to relative tolerance `tol`.
double levy_density_invzH(double t, double tol = 1e-10);
/// int_0^inf (rho(u)/u) (1 - e^{-t u}) du, to relative tolerance `tol`.
double h_rep_kernel(double t, double tol = 1e-10);

/// m(t) = int_0^inf u base(u) e^{-t u} du as a density; inner integrals use relative `inner_tol`.
Density laplace_moment_density(std::string name, Density base, double inner_tol);

/// The three kernels above wrapped as densities; inner integrals use `inner_tol`.
Density levy_z2H_density(double inner_tol);
Density levy_invzH_density(double inner_tol);
Density h_rep_kernel_density(double inner_tol);

/// Coefficients c_k = f^(k)(t)/k!, k = 0..order, of a Laplace-type kernel
/// int_0^inf u base(u) e^{-t u} du, from moments of base.
std::vector<double> levy_density_jet(const Density& base, double t, int order, double tol);

/// CSV with header t,rho,varrho_paper,g2,sigma.
std::string densities_csv(std::span<const double> ts);

}  // namespace lnratio
