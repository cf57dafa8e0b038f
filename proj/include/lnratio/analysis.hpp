#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lnratio/core_eval.hpp"
#include "lnratio/jet.hpp"

namespace lnratio {

/// `log:<lo>:<hi>:<count>` or `lin:<lo>:<hi>:<count>`, bounds positive, count >= 2.
struct GridSpec {
  enum class Scale { Log, Lin };
  Scale scale = Scale::Log;
  double lo = 1e-2;
  double hi = 1e2;
  int count = 50;

  static GridSpec log(double lo, double hi, int count) { return {Scale::Log, lo, hi, count}; }
  static GridSpec lin(double lo, double hi, int count) { return {Scale::Lin, lo, hi, count}; }
  /// Throws DomainError on malformed input.
  static GridSpec parse(std::string_view text);

  std::vector<double> points() const;
  std::string to_string() const;
};

/// A real function of x > 0 together with its Taylor jets.
struct JetTarget {
  std::string name;
  std::function<TaylorJet(double x, int order)> jet;
  /// Value at +inf, subtracted before multiplying by powers of x.
  double value_at_infinity = 0.0;
};

JetTarget jet_target(FunctionId fn);
/// x^alpha (f(x) - f(inf)).
JetTarget power_times(double alpha, const JetTarget& f);
/// The two Levy densities as functions of t, with jets from their moments.
JetTarget levy_z2H_target(double tol = 1e-10);
JetTarget levy_invzH_target(double tol = 1e-10);

enum class PropertyKind { CM, LCM, BERNSTEIN, STIELTJES_GEOMETRIC, IDENTITY, OPERATOR_MONOTONE };

std::string_view to_string(PropertyKind p) noexcept;

struct Witness {
  double x = 0.0;
  /// Imaginary part of the point for complex-plane checks.
  double y = 0.0;
  /// Derivative order, or the identity index for IDENTITY checks; -1 when not applicable.
  int k = -1;
  double value = 0.0;
};

/// A grid point whose usable derivative order was lowered by loss of significance.
struct OrderReduction {
  double x = 0.0;
  int usable_order = 0;
};

struct PropertyReport {
  PropertyKind property = PropertyKind::CM;
  std::string fn;
  std::string grid;
  int max_order = 0;
  bool pass = true;
  /// Largest normalized violation; 0 when every check holds.
  double worst_violation = 0.0;
  std::optional<Witness> witness;
  std::vector<OrderReduction> reductions;
  std::size_t points_checked = 0;
};

inline constexpr double kDefaultSignTol = 1e-9;

/// (-1)^k f^(k)(x) >= -tol (|f^(k)(x)| + k! |f(x)|) for all grid x and k <= max_order.
PropertyReport check_cm(const JetTarget& f, const std::vector<double>& grid, int max_order,
                        double tol = kDefaultSignTol, const std::string& grid_label = "");
PropertyReport check_cm(FunctionId fn, const GridSpec& grid, int max_order,
                        double tol = kDefaultSignTol);

/// check_cm applied to (-1) d/dx ln f, i.e. the orders k >= 1 of ln f.
PropertyReport check_lcm(const JetTarget& f, const std::vector<double>& grid, int max_order,
                         double tol = kDefaultSignTol, const std::string& grid_label = "");
PropertyReport check_lcm(FunctionId fn, const GridSpec& grid, int max_order,
                         double tol = kDefaultSignTol);

/// f >= 0 on the grid and f' completely monotonic to order max_order - 1.
PropertyReport check_bernstein(const JetTarget& f, const std::vector<double>& grid, int max_order,
                               double tol = kDefaultSignTol, const std::string& grid_label = "");
PropertyReport check_bernstein(FunctionId fn, const GridSpec& grid, int max_order,
                               double tol = kDefaultSignTol);

/// -x f'(x) / (f(x) - f(inf)) from jets.
double degree_ratio(const JetTarget& f, double x);
double degree_ratio(FunctionId fn, double x);
/// Closed form of -x H'(x) / H(x); 0/0 at x = 1, so x = 1 is rejected.
double degree_ratio_H_closed_form(double x);

struct DegreeBracket {
  std::string fn;
  std::vector<double> candidates;
  std::vector<bool> candidate_pass;
  /// Largest alpha for which x^alpha (f - f(inf)) is completely monotonic on the grid.
  std::optional<double> largest_passing;
  /// Smallest failing alpha above largest_passing, after bisection refinement.
  std::optional<double> smallest_failing;
  /// Minimum of degree_ratio over the grid and where it occurs.
  double upper_bound = 0.0;
  double upper_bound_at = 0.0;
  /// largest_passing <= upper_bound + consistency_tol.
  bool consistent = true;
  double consistency_tol = 1e-3;
  std::optional<PropertyReport> first_failure;
};

/// Grid used for degree estimation: log:1e-12:1e-1:60.
GridSpec default_degree_grid();

/// Candidates are tested in increasing order; the gap between the largest passing and the
/// smallest failing candidate is bisected down to `refine_width`.
DegreeBracket estimate_cm_degree(const JetTarget& f, std::vector<double> candidates,
                                 const std::vector<double>& grid, int max_order,
                                 double tol = kDefaultSignTol, double refine_width = 0.01);

/// Functions for the half-plane criterion.
struct StieltjesTarget {
  std::string name;
  std::function<cplx(CutPlanePoint)> eval;
};

StieltjesTarget stieltjes_target(FunctionId fn);
/// zH(z) / (eps zH(z) + 1).
StieltjesTarget damped_G_target(double eps);

/// 50 log-spaced radii in [1e-3, 1e3] by 40 angles in (0, 3pi/4], all in the gated region.
std::vector<CutPlanePoint> upper_half_plane_grid(int radii = 50, int angles = 40);

/// Im z * Im f(z) <= tol (1 + |f(z)|) on the grid. Points outside the gated region or
/// with Im z <= 0 are rejected with DomainError.
PropertyReport check_stieltjes_geometric(const StieltjesTarget& f,
                                         const std::vector<CutPlanePoint>& grid,
                                         double tol = 1e-12);

/// H(1/x) H(x) = 1, X2H(x) = x G(x), INV_XH(x) G(x) = 1, each to `tol` relative.
/// Witness k is the identity index (0, 1, 2).
PropertyReport check_closure_identities(const GridSpec& grid, double tol = 1e-10);

}  // namespace lnratio
