#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lnratio/core_eval.hpp"
#include "lnratio/densities.hpp"
#include "lnratio/quadrature.hpp"

namespace lnratio {

enum class RepresentationId {
  STIELTJES_G,        // zH(z) = int rho(t)/(t+z) dt
  STIELTJES_INV_Z2H,  // 1/(z^2 H(z)) = int sigma(t)/(t+z) dt
  LAPLACE_H,          // H(z) = int h_rep_kernel(t) e^{-zt} dt
  BERNSTEIN_INV_H,    // 1/H(z) = z^2 int sigma(t)/(t+z) dt
  LK_INV_ZH,          // 1/(zH(z)) = int (1 - e^{-zt}) levy_density_invzH(t) dt
  LK_Z2H,             // z^2 H(z) = int (1 - e^{-zt}) levy_density_z2H(t) dt
  STIELTJES_H_SPLIT,  // H(z) = int rho(t)/(z(t+z)) dt
};

std::string_view to_string(RepresentationId rep) noexcept;
std::optional<RepresentationId> parse_representation_id(std::string_view name) noexcept;
const std::vector<RepresentationId>& all_representations();

/// 1e-6, or 1e-5 for the forms built on sigma or on nested Levy integrals.
double default_tolerance(RepresentationId rep) noexcept;

/// {0.1, 0.5, 1, 2, 10, 100, 1+i, 3-2i, 0.5+2i}.
std::vector<CutPlanePoint> default_points(RepresentationId rep);

/// |arg z| <= 3pi/4 and at least 1e-2 away from +-i.
bool in_gated_region(CutPlanePoint z) noexcept;

struct ResidualPoint {
  CutPlanePoint z = CutPlanePoint::make(1.0);
  cplx lhs{};
  cplx rhs{};
  double abs_res = 0.0;
  double rel_res = 0.0;
  double quad_err = 0.0;  // quadrature error estimate relative to |lhs|
  QuadratureStatus status = QuadratureStatus::NotConverged;
  bool pass = false;
};

struct ResidualReport {
  RepresentationId rep = RepresentationId::STIELTJES_G;
  double tol = 1e-6;
  std::vector<ResidualPoint> points;
  double max_rel_res = 0.0;
  bool pass = false;
  /// Index into `points` of the first failing point, if any.
  std::optional<std::size_t> witness;
};

struct RepresentationOptions {
  /// Overrides the calibrated sigma for the sigma-based forms.
  std::optional<SigmaCandidate> sigma;
};

/// Direct left-hand value of the representation at z.
cplx representation_lhs(RepresentationId rep, CutPlanePoint z);

/// Quadrature right-hand side with absolute tolerance `abs_tol`.
ComplexQuadrature representation_rhs(RepresentationId rep, CutPlanePoint z, double abs_tol,
                                     const RepresentationOptions& opt = {});

/// Throws DomainError for points outside the gated region (or Re z <= 0 for the LK forms).
ResidualPoint residual(RepresentationId rep, CutPlanePoint z, double tol,
                       const RepresentationOptions& opt = {});

ResidualReport verify_representation(RepresentationId rep, const std::vector<CutPlanePoint>& points,
                                     double tol, const RepresentationOptions& opt = {});

/// Finite-cutoff evaluation of the split displays whose individual terms diverge.
struct SplitTerm {
  std::string_view name;
  QuadratureStatus full_range_status = QuadratureStatus::NotConverged;
};

struct TruncatedSplit {
  RepresentationId rep = RepresentationId::STIELTJES_H_SPLIT;
  CutPlanePoint z = CutPlanePoint::make(1.0);
  std::vector<double> cutoffs;
  std::vector<cplx> first_term;
  std::vector<cplx> second_term;
  std::vector<cplx> sums;
  cplx combined{};
  std::vector<double> distances;  // |sum(T) - combined|
  std::vector<SplitTerm> terms;
  bool converging = false;        // distances strictly decrease with T
};

/// Supported for STIELTJES_H_SPLIT (cut at [1/T, inf)) and BERNSTEIN_INV_H (cut at [0, T]).
TruncatedSplit truncated_split(RepresentationId rep, CutPlanePoint z,
                               const std::vector<double>& cutoffs = {1e2, 1e3, 1e4},
                               double tol = 1e-9);

}  // namespace lnratio
