#include "lnratio/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "lnratio/core_eval.hpp"
#include "lnratio/format.hpp"

namespace lnratio {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
// Beyond |ln t| = 30 the densities switch to their log-domain forms.
constexpr double kLogSwitch = 30.0;
// |ln t| beyond which e^{+-u} over- or underflows.
constexpr double kLogOverflow = 700.0;

enum class Branch { Below, One, Middle, Above };

Branch branch_of(double t) {
  if (!(t > 0.0)) throw DomainError("densities need t > 0");
  if (t < 1.0) return Branch::Below;
  if (t == 1.0) return Branch::One;
  if (t < kSilverRatio) return Branch::Middle;
  return Branch::Above;
}

// ln((1+t^2)/(1-t)), 0 < t < 1.
double log_a(double t) { return std::log1p(t * t) - std::log1p(-t); }

// ln((1+t^2)/(t-1)), t > 1.
double log_l(double t) {
  if (t <= 2.0) return std::log1p(t * t) - std::log(t - 1.0);
  const double q = 1.0 / t;
  return std::log(t) + std::log1p(q * q) - std::log1p(-q);
}

// ln((1+t^2)/(t(t-1))), t > 1.
double log_m(double t) { return std::log1p((1.0 + 1.0 / t) / (t - 1.0)); }

struct UpperLogs {
  double l;  // ln((1+t^2)/(t-1))
  double k;  // ln(t(1+t^2)/(t-1))
  double m;  // ln((1+t^2)/(t(t-1)))
};

UpperLogs upper_logs(double t) {
  const double l = log_l(t);
  return {l, l + std::log(t), log_m(t)};
}

double middle_modulus_factor(const UpperLogs& g) {
  const double a = g.l * g.m + 2.0 * kPi2;
  return a * a + kPi2 * g.k * g.k;
}

double rho_branch(Branch b, double t) {
  switch (b) {
    case Branch::Below: return t / log_a(t);
    case Branch::One: return 0.0;
    case Branch::Middle: {
      const auto g = upper_logs(t);
      return t * g.k / (g.l * g.l + kPi2);
    }
    case Branch::Above: {
      const auto g = upper_logs(t);
      return t * g.m / (g.l * g.l + kPi2);
    }
  }
  return 0.0;
}

double g2_branch(Branch b, double t) {
  switch (b) {
    case Branch::Below: {
      const double a = log_a(t);
      const double bb = a - std::log(t);
      return t * t * (bb * bb + kPi2) / (a * a);
    }
    case Branch::One: return 1.0;
    case Branch::Middle: {
      const auto g = upper_logs(t);
      const double d = g.l * g.l + kPi2;
      return t * t * middle_modulus_factor(g) / (d * d);
    }
    case Branch::Above: {
      const auto g = upper_logs(t);
      return t * t * g.m * g.m / (g.l * g.l + kPi2);
    }
  }
  return 0.0;
}

double varrho_branch(Branch b, double t) {
  switch (b) {
    case Branch::Below: {
      const double a = log_a(t);
      const double bb = std::log((1.0 + t * t) / (t * (1.0 - t)));
      return t * (bb * bb + kPi2) / (a * a);
    }
    case Branch::One: return t;
    case Branch::Middle: {
      const auto g = upper_logs(t);
      const double d = g.l * g.l + kPi2;
      return t * middle_modulus_factor(g) / (d * d);
    }
    case Branch::Above: {
      const auto g = upper_logs(t);
      return t * g.m * g.m / (g.l * g.l + kPi2);
    }
  }
  return 0.0;
}

// rho / (t g2) with the common factors cancelled.
double candidate_b_branch(Branch b, double t) {
  switch (b) {
    case Branch::Below: {
      const double a = log_a(t);
      const double bb = a - std::log(t);
      return a / (t * t * (bb * bb + kPi2));
    }
    case Branch::One: return 0.0;
    case Branch::Middle: {
      const auto g = upper_logs(t);
      return g.k * (g.l * g.l + kPi2) / (t * t * middle_modulus_factor(g));
    }
    case Branch::Above: return 1.0 / (t * t * log_m(t));
  }
  return 0.0;
}

// Large-t pieces with q = 1/t: L and t*M.
struct FarLogs {
  double l;
  double tm;
};

FarLogs far_logs(double u) {
  const double q = std::exp(-u);
  const double x = q * (1.0 + q) / (1.0 - q);
  const double tm = (1.0 + q) / (1.0 - q) * (x == 0.0 ? 1.0 : std::log1p(x) / x);
  return {u + std::log1p(q * q) - std::log1p(-q), tm};
}

double log_range_check(double u) {
  if (std::isnan(u)) throw DomainError("densities need finite ln t");
  return u;
}

BreakpointLimits limits_at(double bp, const std::function<double(Branch, double)>& f) {
  BreakpointLimits out;
  out.at = f(branch_of(bp), bp);
  if (bp == 1.0) {
    // Every density is continuous at 1, but approaches like 1/ln^2|1-t|, too slowly to sample.
    out.left = out.at;
    out.right = out.at;
  } else {
    out.left = f(Branch::Middle, bp);
    out.right = f(Branch::Above, bp);
  }
  return out;
}

PiecewiseDensity make_piecewise(std::string name, std::function<double(double)> eval,
                                std::function<double(Branch, double)> branch, double inf_order,
                                double zero_order) {
  PiecewiseDensity p;
  p.name = std::move(name);
  p.evaluate = std::move(eval);
  p.limits = {limits_at(1.0, branch), limits_at(kSilverRatio, branch)};
  p.order_at_infinity = inf_order;
  p.order_at_zero = zero_order;
  return p;
}

std::vector<double> breakpoints_vector() {
  return {kDensityBreakpoints.begin(), kDensityBreakpoints.end()};
}

// t^{2-shift} m(t) = e^{-shift u} int_0^inf v base(v/t) e^{-v} dv.
double scaled_laplace_moment(const Density& base, double u, int shift, double tol) {
  const double t = std::exp(u);
  Density g;
  g.name = base.name + "-moment";
  // g(e^w) = e^{w - shift u} base(e^{w-u})
  g.log_form = [&base, u, shift](double w) {
    const auto b = base.log_form(w - u);
    if (b.mantissa == 0.0) return LogScaled{};
    return LogScaled{b.mantissa * std::exp(-(b.exponent + shift) * u), b.exponent + 1};
  };
  g.at = [&g](double v) { return g.scaled_log(std::log(v), 0); };
  if (t > 0.0 && std::isfinite(t)) {
    for (double bp : base.breakpoints) {
      const double v = bp * t;
      if (v > 1e-300 && std::isfinite(v)) g.breakpoints.push_back(v);
    }
  }
  constexpr double kMomentCutoff = 60.0;
  std::erase_if(g.breakpoints, [](double v) { return v >= kMomentCutoff; });
  const auto r = laplace_transform(g, 1.0, std::numeric_limits<double>::min(), kMomentCutoff, tol);
  return r.value;
}

}  // namespace

Density laplace_moment_density(std::string name, Density base, double inner_tol) {
  auto shared = std::make_shared<Density>(std::move(base));
  Density d;
  d.name = std::move(name);
  d.log_form = [shared, inner_tol](double u) {
    // t m(t) for large t and t^2 m(t) for small t stay within range.
    const int shift = u >= 0.0 ? 1 : 0;
    return LogScaled{scaled_laplace_moment(*shared, u, shift, inner_tol), shift - 2};
  };
  d.at = [shared, inner_tol](double t) {
    const auto base_u = shared->times_power(1);
    const auto r = laplace_transform(base_u, t, std::numeric_limits<double>::min(),
                                     std::max(50.0 / t, 1e3), inner_tol);
    return r.value;
  };
  d.tail = TailHint::power(2.0);
  return d;
}


double rho(double t) { return rho_branch(branch_of(t), t); }

double g2(double t) { return g2_branch(branch_of(t), t); }

double varrho_paper(double t) { return varrho_branch(branch_of(t), t); }

double sigma_candidate_a(double t) {
  const Branch b = branch_of(t);
  if (b == Branch::One) return 0.0;
  if (t < 1e-100 || t > 1e100) return sigma_candidate_b_log(std::log(t)).scaled(std::log(t), 2);
  return rho_branch(b, t) / varrho_branch(b, t);
}

double sigma_candidate_b(double t) {
  const Branch b = branch_of(t);
  if (t < 1e-100 || t > 1e100) return sigma_candidate_b_log(std::log(t)).scaled(std::log(t), 0);
  return candidate_b_branch(b, t);
}

LogScaled rho_log(double u) {
  log_range_check(u);
  if (u > kLogSwitch) {
    const auto f = far_logs(u);
    return {f.tm / (f.l * f.l + kPi2), 0};
  }
  if (u < -kLogSwitch) {
    const double t = std::exp(u);
    return {1.0 / (1.0 + 1.5 * t), 0};
  }
  return {rho(std::exp(u)), 0};
}

LogScaled sigma_candidate_b_log(double u) {
  log_range_check(u);
  if (u > kLogSwitch) {
    const auto f = far_logs(u);
    return {1.0 / f.tm, -1};
  }
  if (u < -kLogSwitch) {
    const double t = std::exp(u);
    const double a_over_t = 1.0 + 1.5 * t;
    const double b = -u + t * a_over_t;
    return {a_over_t / (b * b + kPi2), -1};
  }
  const double t = std::exp(u);
  return {candidate_b_branch(branch_of(t), t) * t, -1};
}

std::string_view to_string(SigmaCandidate c) noexcept {
  return c == SigmaCandidate::A ? "A" : "B";
}

std::vector<double> calibration_grid() {
  constexpr int kCount = 40;
  std::vector<double> grid;
  for (int i = 0; i < kCount; ++i) {
    double t = std::pow(10.0, -3.0 + 6.0 * i / (kCount - 1));
    for (double bp : kDensityBreakpoints) {
      if (std::abs(t - bp) < 1e-9) t = bp + 1e-9;
    }
    grid.push_back(t);
  }
  return grid;
}

const SigmaCalibration& sigma_calibration() {
  static const SigmaCalibration cal = [] {
    SigmaCalibration c;
    c.grid = calibration_grid();
    for (double t : c.grid) {
      const auto lim = boundary_limit(t, BoundaryQuantity::IM_INV_Z2H);
      const double oracle = -lim.value / kPi;
      const double a = sigma_candidate_a(t);
      const double b = sigma_candidate_b(t);
      c.oracle.push_back(oracle);
      c.candidate_a.push_back(a);
      c.candidate_b.push_back(b);
      c.max_dev_a = std::max(c.max_dev_a, std::abs(a - oracle));
      c.max_dev_b = std::max(c.max_dev_b, std::abs(b - oracle));
    }
    c.a_matches = c.max_dev_a <= c.tolerance;
    c.b_matches = c.max_dev_b <= c.tolerance;
    c.selected = (c.a_matches && !c.b_matches) ? SigmaCandidate::A : SigmaCandidate::B;
    return c;
  }();
  if (!cal.a_matches && !cal.b_matches) {
    throw DomainError("sigma calibration failed: no candidate matches the boundary oracle");
  }
  return cal;
}

double sigma(double t) {
  return sigma_calibration().selected == SigmaCandidate::A ? sigma_candidate_a(t)
                                                           : sigma_candidate_b(t);
}

PiecewiseDensity rho_piecewise() {
  return make_piecewise("rho", [](double t) { return rho(t); }, rho_branch, 0.0, 0.0);
}

PiecewiseDensity g2_piecewise() {
  return make_piecewise("g2", [](double t) { return g2(t); }, g2_branch, 0.0, 0.0);
}

PiecewiseDensity varrho_paper_piecewise() {
  return make_piecewise("varrho_paper", [](double t) { return varrho_paper(t); }, varrho_branch,
                        -1.0, -1.0);
}

PiecewiseDensity sigma_piecewise() {
  const bool a = sigma_calibration().selected == SigmaCandidate::A;
  auto branch = [a](Branch b, double t) {
    return a ? (b == Branch::One ? 0.0 : rho_branch(b, t) / varrho_branch(b, t))
             : candidate_b_branch(b, t);
  };
  return make_piecewise("sigma", [](double t) { return sigma(t); }, branch, a ? 1.0 : -1.0,
                        a ? 1.0 : -1.0);
}

Density rho_density() {
  Density d;
  d.name = "rho";
  d.at = [](double t) { return rho(t); };
  d.log_form = rho_log;
  d.breakpoints = breakpoints_vector();
  d.tail = TailHint::log_slow();
  return d;
}

Density candidate_density(SigmaCandidate c) {
  Density d;
  d.breakpoints = breakpoints_vector();
  if (c == SigmaCandidate::A) {
    d.name = "sigma_candidate_a";
    d.at = [](double t) { return sigma_candidate_a(t); };
    d.log_form = [](double u) {
      auto l = sigma_candidate_b_log(u);
      l.exponent += 2;
      return l;
    };
    d.tail = TailHint::power(-1.0);
  } else {
    d.name = "sigma_candidate_b";
    d.at = [](double t) { return sigma_candidate_b(t); };
    d.log_form = sigma_candidate_b_log;
    d.tail = TailHint::power(1.0);
  }
  return d;
}

Density sigma_density() {
  Density d = candidate_density(sigma_calibration().selected);
  d.name = "sigma";
  return d;
}

Density levy_z2H_density(double inner_tol) {
  return laplace_moment_density("levy_density_z2H", rho_density(), inner_tol);
}

Density levy_invzH_density(double inner_tol) {
  return laplace_moment_density("levy_density_invzH", sigma_density(), inner_tol);
}

namespace {

ComplexQuadrature h_rep_kernel_quad(double t, double tol) {
  const Density r = rho_density();
  IntegrandSpec spec;
  spec.density.name = "h_rep_integrand";
  spec.density.at = [t](double x) {
    const double v = rho(x);
    return v == 0.0 ? 0.0 : v * -std::expm1(-t * x) / x;
  };
  spec.density.log_form = [r, t](double u) {
    auto l = r.log_form(u);
    l.mantissa *= -std::expm1(-t * std::exp(u));
    l.exponent -= 1;
    return l;
  };
  spec.breakpoints = breakpoints_vector();
  spec.breakpoints.push_back(1.0 / t);
  spec.tail = TailHint::log_slow();
  return integrate_semi_infinite(spec, std::numeric_limits<double>::min(), tol);
}

void require(const ComplexQuadrature& q, const char* what) {
  if (q.status == QuadratureStatus::Divergent) {
    throw ConvergenceError(std::string(what) + ": integral diverges");
  }
  if (!q.converged) throw ConvergenceError(std::string(what) + ": quadrature did not converge");
}

}  // namespace

Density h_rep_kernel_density(double inner_tol) {
  Density d;
  d.name = "h_rep_kernel";
  d.at = [inner_tol](double t) { return h_rep_kernel_quad(t, inner_tol).value.real(); };
  d.log_form = [inner_tol](double u) {
    if (u < -kLogOverflow || u > kLogOverflow) return LogScaled{};
    return LogScaled{h_rep_kernel_quad(std::exp(u), inner_tol).value.real(), 0};
  };
  d.tail = TailHint::exponential();
  return d;
}

double h_rep_kernel(double t, double tol) {
  if (!(t > 0.0)) throw DomainError("h_rep_kernel needs t > 0");
  const auto q = h_rep_kernel_quad(t, tol);
  require(q, "h_rep_kernel");
  return q.value.real();
}

namespace {

double moment(const Density& base, double t, int power, double tol) {
  if (!(t > 0.0)) throw DomainError("Laplace-type kernels need t > 0");
  const auto q = laplace_transform(base.times_power(power), cplx(t, 0.0),
                                   std::numeric_limits<double>::min(), std::max(50.0 / t, 1e3),
                                   tol);
  require(q, "Laplace-type kernel");
  return q.value.real();
}

}  // namespace

double levy_density_z2H(double t, double tol) { return moment(rho_density(), t, 1, tol); }

double levy_density_invzH(double t, double tol) { return moment(sigma_density(), t, 1, tol); }

std::vector<double> levy_density_jet(const Density& base, double t, int order, double tol) {
  std::vector<double> c;
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c.push_back(sign * moment(base, t, k + 1, tol) / factorial);
  }
  return c;
}

std::string densities_csv(std::span<const double> ts) {
  std::ostringstream out;
  out << "t,rho,varrho_paper,g2,sigma\n";
  for (double t : ts) {
    out << format_double(t) << ',' << format_double(rho(t)) << ','
        << format_double(varrho_paper(t)) << ',' << format_double(g2(t)) << ','
        << format_double(sigma(t)) << '\n';
  }
  return out.str();
}

}  // namespace lnratio
