#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lnratio {

using cplx = std::complex<double>;

/// Raised for arguments outside an operation's domain (on the cut, t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point of the cut plane C \ (-inf, 0].
class CutPlanePoint {
 public:
  /// Throws DomainError for points on the cut, zero, or non-finite input.
  static CutPlanePoint make(double re, double im = 0.0);
  static CutPlanePoint make(cplx z) { return make(z.real(), z.imag()); }
  static bool admissible(double re, double im) noexcept;

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  cplx value() const noexcept { return {re_, im_}; }
  CutPlanePoint conj() const noexcept { return CutPlanePoint(re_, -im_); }

 private:
  CutPlanePoint(double re, double im) : re_(re), im_(im) {}
  double re_;
  double im_;
};

/// The functions whose structural properties the toolkit checks.
/// Aliases are evaluated from the base evaluators: XH == G, INV_X2H == INV_Z2H,
/// X2H(z) == z G(z), INV_XH == 1/G, INV_H == 1/H.
enum class FunctionId { H, h, G, INV_Z2H, INV_H, INV_XH, X2H, XH, INV_X2H };

std::string_view to_string(FunctionId fn) noexcept;
std::optional<FunctionId> parse_function_id(std::string_view name) noexcept;

/// Radius around z = 1 inside which h and H are evaluated as a ratio of Taylor series.
inline constexpr double kSeriesRadius = 1e-3;
/// Distance to z = +-i below which evaluations carry an accuracy-loss flag.
inline constexpr double kAccuracyLossRadius = 1e-6;

cplx principal_log(CutPlanePoint z);

/// h(z) = ln z / ln((1+z^2)/(1+z)), h(1) = 2.
cplx eval_h(CutPlanePoint z);
/// H(z) = h(z) - 1, H(1) = 1.
cplx eval_H(CutPlanePoint z);
/// G(z) = z H(z).
cplx eval_G(CutPlanePoint z);
/// 1 / (z^2 H(z)).
cplx eval_inv_z2H(CutPlanePoint z);

cplx eval(FunctionId fn, CutPlanePoint z);
/// Real-axis evaluation, x > 0.
double eval_real(FunctionId fn, double x);

struct Evaluation {
  cplx value;
  bool accuracy_loss = false;
};

/// Evaluation with the |1+z^2| < 1e-6 accuracy flag attached.
Evaluation eval_checked(FunctionId fn, CutPlanePoint z);

/// True when |1 + z^2| is below `radius` (z is next to one of the points +-i).
bool near_imaginary_unit(CutPlanePoint z, double radius = kAccuracyLossRadius) noexcept;

/// Both evaluation routes for h, exposed so they can be compared directly.
namespace paths {
cplx h_formula(cplx z);
cplx h_series(cplx z);
cplx H_formula(cplx z);
cplx H_series(cplx z);
}  // namespace paths

/// G at the point -t + i eps just above the cut.
cplx boundary_G(double t, double eps);

enum class BoundaryQuantity { RE_G, IM_G, IM_INV_Z2H };

std::string_view to_string(BoundaryQuantity q) noexcept;

struct BoundaryLimit {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// Richardson-extrapolated eps -> 0+ limit of the chosen boundary quantity,
/// sampled at eps = 2^-k for k = 10..26. Rejects t at the breakpoints 1 and 1+sqrt2.
BoundaryLimit boundary_limit(double t, BoundaryQuantity which, double tol = 1e-10);

}  // namespace lnratio
