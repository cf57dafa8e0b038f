#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lnratio/core_eval.hpp"

namespace lnratio {

enum class QuadratureStatus { Converged, NotConverged, Divergent };

std::string_view to_string(QuadratureStatus s) noexcept;

template <class T>
struct QuadratureResult {
  T value{};
  double abs_error_estimate = 0.0;
  int panels = 0;
  long evals = 0;
  bool converged = false;
  QuadratureStatus status = QuadratureStatus::NotConverged;
};

using RealQuadrature = QuadratureResult<double>;
using ComplexQuadrature = QuadratureResult<cplx>;

/// Asymptotic behavior of an integrand at an infinite or singular end.
struct TailHint {
  enum class Kind { LogSlow, Exponential, Power };
  Kind kind = Kind::LogSlow;
  double exponent = 0.0;  // POWER(p): decay like t^-p

  static TailHint log_slow() { return {Kind::LogSlow, 0.0}; }
  static TailHint exponential() { return {Kind::Exponential, 0.0}; }
  static TailHint power(double p) { return {Kind::Power, p}; }
};

/// f(e^u) = mantissa * exp(exponent * u); lets tails be handled without overflow.
struct LogScaled {
  double mantissa = 0.0;
  int exponent = 0;

  /// e^{p u} f(e^u).
  double scaled(double u, int p) const;
};

/// A non-negative weight function on (0, inf).
///
/// `log_form(u)` describes f(e^u) as mantissa * e^{exponent u} so tails can be
/// integrated in u = ln t without overflow even where f itself over- or underflows.
struct Density {
  std::string name;
  std::function<double(double)> at;
  std::function<LogScaled(double)> log_form;
  std::vector<double> breakpoints;
  TailHint tail = TailHint::log_slow();

  double operator()(double t) const { return at(t); }
  /// e^{p u} f(e^u).
  double scaled_log(double u, int p) const { return log_form(u).scaled(u, p); }

  /// Wraps a plain function; the log form is {f(e^u), 0}.
  static Density from_function(std::string name, std::function<double(double)> f,
                               std::vector<double> breakpoints = {},
                               TailHint tail = TailHint::log_slow());

  /// t^k f(t).
  Density times_power(int k) const;
};

struct Kernel {
  enum class Kind { Stieltjes, Laplace, Levy, Raw };
  Kind kind = Kind::Raw;
  cplx parameter{0.0, 0.0};

  static Kernel stieltjes(cplx z) { return {Kind::Stieltjes, z}; }
  static Kernel laplace(cplx s) { return {Kind::Laplace, s}; }
  static Kernel levy(cplx z) { return {Kind::Levy, z}; }
  static Kernel raw() { return {Kind::Raw, {0.0, 0.0}}; }
};

struct IntegrandSpec {
  Density density;
  Kernel kernel = Kernel::raw();
  std::vector<double> breakpoints;      // strictly increasing, positive
  TailHint tail = TailHint::log_slow();
  std::optional<double> cutoff;         // truncation point for exponential tails
};

namespace quad_detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct RuleResult {
  T value;
  double error;
  double magnitude;  // integral of |f|, for the roundoff floor
};

template <class T, class F>
RuleResult<T> gauss_kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  double magnitude = std::abs(fc) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kKronrodWeights[j];
    magnitude += (std::abs(f1) + std::abs(f2)) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  const double scale = std::abs(half);
  return {kronrod * half, std::abs((kronrod - gauss) * half), magnitude * scale};
}

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  int depth;
};

struct AdaptiveOptions {
  int max_depth = 50;
  int max_panels = 4000;
  double rel_tol = 0.0;  // also stop once error <= rel_tol * |running value|
};

/// Global adaptive bisection driven by the largest panel error estimate.
template <class T, class F>
QuadratureResult<T> adaptive(const F& f, std::span<const double> points, double tol,
                             AdaptiveOptions opt = {}) {
  using P = Panel<T>;
  auto worse = [](const P& x, const P& y) { return x.error < y.error; };
  std::priority_queue<P, std::vector<P>, decltype(worse)> open(worse);
  std::vector<P> done;
  QuadratureResult<T> out;
  double total_error = 0.0;
  T running{};
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  auto push = [&](double a, double b, int depth) {
    const auto r = gauss_kronrod15<T>(f, a, b);
    out.evals += 15;
    P p{a, b, r.value, r.error, depth};
    total_error += r.error;
    running += r.value;
    const bool roundoff_limited = r.error <= 50.0 * kEps * r.magnitude;
    const bool too_deep = depth >= opt.max_depth;
    if (roundoff_limited || too_deep || !std::isfinite(r.error)) {
      if (too_deep && !roundoff_limited) out.status = QuadratureStatus::NotConverged;
      done.push_back(p);
    } else {
      open.push(p);
    }
  };

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] > points[i]) push(points[i], points[i + 1], 0);
  }
  int panel_count = static_cast<int>(open.size() + done.size());
  auto target = [&] { return std::max(tol, opt.rel_tol * std::abs(running)); };
  while (!open.empty() && total_error > target() && panel_count < opt.max_panels) {
    P worst = open.top();
    open.pop();
    total_error -= worst.error;
    running -= worst.value;
    const double mid = 0.5 * (worst.a + worst.b);
    push(worst.a, mid, worst.depth + 1);
    push(mid, worst.b, worst.depth + 1);
    ++panel_count;
  }
  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }
  std::sort(done.begin(), done.end(), [](const P& x, const P& y) { return x.a < y.a; });
  T sum{};
  double err = 0.0;
  for (const auto& p : done) {
    sum += p.value;
    err += p.error;
  }
  out.value = sum;
  out.abs_error_estimate = err;
  out.panels = static_cast<int>(done.size());
  out.converged = std::isfinite(err) && err <= std::max(tol, opt.rel_tol * std::abs(sum));
  out.status = out.converged ? QuadratureStatus::Converged : QuadratureStatus::NotConverged;
  return out;
}

}  // namespace quad_detail

/// Adaptive 7/15 Gauss-Kronrod integration of a real or complex f over [a, b].
template <class F>
auto integrate_panel(const F& f, double a, double b, double tol) {
  using T = std::decay_t<decltype(f(a))>;
  if (!(a < b)) throw DomainError("integrate_panel needs a < b");
  const std::array<double, 2> ends = {a, b};
  return quad_detail::adaptive<T>(f, ends, tol);
}

/// Same, with the panel initially split at the given interior points.
template <class F>
auto integrate_panel(const F& f, std::span<const double> points, double tol) {
  using T = std::decay_t<decltype(f(points.front()))>;
  return quad_detail::adaptive<T>(f, points, tol);
}

/// Thrown by convenience wrappers whose quadrature did not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral over (0, inf) of density(t) * kernel(t). Head and LOG_SLOW/POWER tails are
/// mapped to finite intervals in u = ln t; exponential tails are truncated at the cutoff.
/// Converged means error <= max(tol, rel_tol * |value|).
ComplexQuadrature integrate_semi_infinite(const IntegrandSpec& spec, double tol,
                                          double rel_tol = 0.0);

/// int_0^inf density(t) / (t + z) dt.
ComplexQuadrature stieltjes_transform(const Density& density, CutPlanePoint z, double tol);

/// int_0^inf density(t) e^{-s t} dt; `cutoff` overrides the default truncation 50/Re(s).
RealQuadrature laplace_transform(const Density& density, double s, double tol,
                                 std::optional<double> cutoff = std::nullopt, double rel_tol = 0.0);
ComplexQuadrature laplace_transform(const Density& density, cplx s, double tol,
                                    std::optional<double> cutoff = std::nullopt,
                                    double rel_tol = 0.0);

/// int_0^inf (1 - e^{-z t}) levy_density(t) dt for Re z > 0.
ComplexQuadrature levy_integral(const Density& levy_density, CutPlanePoint z, double tol);

/// e^w - 1 without cancellation for small |w|.
cplx expm1_complex(cplx w);

}  // namespace lnratio
