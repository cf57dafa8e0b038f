#include "lnratio/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace lnratio {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLn4 = 2.0 * std::numbers::ln2;
constexpr double kExpOverflow = 700.0;
constexpr int kProbePanels = 12;
constexpr int kProbeRun = 10;

// Integrand in u = ln t, including the Jacobian dt = e^u du.
cplx kernel_in_log(const Density& d, const Kernel& k, double u) {
  const cplx z = k.parameter;
  switch (k.kind) {
    case Kernel::Kind::Raw:
      return d.scaled_log(u, 1);
    case Kernel::Kind::Stieltjes: {
      if (u >= 0.0) {
        const double f = d.scaled_log(u, 0);
        if (f == 0.0) return 0.0;
        return f / (1.0 + z * std::exp(-u));
      }
      const double f = d.scaled_log(u, 1);
      if (f == 0.0) return 0.0;
      return f / (std::exp(u) + z);
    }
    case Kernel::Kind::Laplace: {
      const double t = std::exp(u);
      if (z.real() * t > kExpOverflow) return 0.0;
      const double f = d.scaled_log(u, 1);
      if (f == 0.0) return 0.0;
      return f * std::exp(-z * t);
    }
    case Kernel::Kind::Levy: {
      const double t = std::exp(u);
      if (u >= 0.0) {
        const double f = d.scaled_log(u, 1);
        if (f == 0.0) return 0.0;
        if (z.real() * t > kExpOverflow) return f;
        return f * -expm1_complex(-z * t);
      }
      const double f = d.scaled_log(u, 2);
      if (f == 0.0) return 0.0;
      const cplx ratio = t > 0.0 ? -expm1_complex(-z * t) / t : z;
      return f * ratio;
    }
  }
  return 0.0;
}

cplx kernel_direct(const Density& d, const Kernel& k, double t) {
  const cplx z = k.parameter;
  const double f = d.at(t);
  if (f == 0.0) return 0.0;
  switch (k.kind) {
    case Kernel::Kind::Raw: return f;
    case Kernel::Kind::Stieltjes: return f / (t + z);
    case Kernel::Kind::Laplace:
      if (z.real() * t > kExpOverflow) return 0.0;
      return f * std::exp(-z * t);
    case Kernel::Kind::Levy: return f * -expm1_complex(-z * t);
  }
  return 0.0;
}

double kernel_scale(const Kernel& k) {
  const double m = std::abs(k.parameter);
  switch (k.kind) {
    case Kernel::Kind::Stieltjes: return m;
    case Kernel::Kind::Laplace:
    case Kernel::Kind::Levy: return m > 0.0 ? 1.0 / m : 0.0;
    case Kernel::Kind::Raw: return 0.0;
  }
  return 0.0;
}

// Integrand over s in (0, 1] for u = anchor + direction * (1 - s) / s.
template <class F>
auto mapped(const F& g, double anchor, double direction) {
  return [g, anchor, direction](double s) -> cplx {
    const double u = anchor + direction * (1.0 - s) / s;
    const cplx v = g(u);
    if (v == cplx(0.0, 0.0)) return v;
    return v / (s * s);
  };
}

std::vector<double> mapped_points() {
  // s-images of u offsets 0, ln4, ..., 10 ln4 (geometric ratio 1/4 in t) and a few far ones.
  std::vector<double> offsets;
  for (int j = 0; j <= 10; ++j) offsets.push_back(j * kLn4);
  for (double far : {32.0, 128.0, 1024.0}) offsets.push_back(far);
  std::vector<double> s{0.0};
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) s.push_back(1.0 / (1.0 + *it));
  return s;
}

// Successive ln2-wide slabs that fail to shrink signal a divergent end.
template <class F>
bool looks_divergent(const F& g, double anchor, double direction, double tol) {
  std::vector<double> mags;
  double total = 0.0;
  for (int k = 0; k < kProbePanels; ++k) {
    const double a = anchor + direction * k * kLn2;
    const double b = anchor + direction * (k + 1) * kLn2;
    const auto r = quad_detail::gauss_kronrod15<cplx>(g, std::min(a, b), std::max(a, b));
    mags.push_back(std::abs(r.value));
    total += std::abs(r.value);
  }
  int run = 0;
  int best = 0;
  for (std::size_t k = 1; k < mags.size(); ++k) {
    run = (mags[k] >= 0.999 * mags[k - 1] && mags[k] > 0.0) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best >= kProbeRun && total > 10.0 * tol;
}

void accumulate(ComplexQuadrature& total, const ComplexQuadrature& part) {
  total.value += part.value;
  total.abs_error_estimate += part.abs_error_estimate;
  total.panels += part.panels;
  total.evals += part.evals;
}

}  // namespace

std::string_view to_string(QuadratureStatus s) noexcept {
  switch (s) {
    case QuadratureStatus::Converged: return "CONVERGED";
    case QuadratureStatus::NotConverged: return "NOT_CONVERGED";
    case QuadratureStatus::Divergent: return "DIVERGENT";
  }
  return "?";
}

cplx expm1_complex(cplx w) {
  const double x = w.real();
  const double y = w.imag();
  if (y == 0.0) return std::expm1(x);
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

double LogScaled::scaled(double u, int p) const {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp((exponent + p) * u);
}

Density Density::from_function(std::string name, std::function<double(double)> f,
                               std::vector<double> breakpoints, TailHint tail) {
  Density d;
  d.name = std::move(name);
  d.at = f;
  d.log_form = [f](double u) {
    const double t = std::exp(u);
    if (t == 0.0 || !std::isfinite(t)) return LogScaled{};
    return LogScaled{f(t), 0};
  };
  d.breakpoints = std::move(breakpoints);
  d.tail = tail;
  return d;
}

Density Density::times_power(int k) const {
  Density d;
  d.name = name + "*t^" + std::to_string(k);
  auto base_at = at;
  auto base_log = log_form;
  d.at = [base_at, k](double t) { return std::pow(t, k) * base_at(t); };
  d.log_form = [base_log, k](double u) {
    auto l = base_log(u);
    l.exponent += k;
    return l;
  };
  d.breakpoints = breakpoints;
  d.tail = tail;
  return d;
}

ComplexQuadrature integrate_semi_infinite(const IntegrandSpec& spec, double tol, double rel_tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_semi_infinite needs tol > 0");
  const Density& d = spec.density;
  const Kernel& k = spec.kernel;

  std::vector<double> points = spec.breakpoints;
  points.insert(points.end(), d.breakpoints.begin(), d.breakpoints.end());
  const double scale = kernel_scale(k);
  if (scale > 0.0 && std::isfinite(scale)) points.push_back(scale);
  std::erase_if(points, [](double p) { return !(p > 0.0) || !std::isfinite(p); });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const bool truncated = spec.tail.kind == TailHint::Kind::Exponential;
  double cutoff = std::numeric_limits<double>::infinity();
  if (truncated) {
    if (spec.cutoff) {
      cutoff = *spec.cutoff;
    } else if (k.kind == Kernel::Kind::Laplace && k.parameter.real() > 0.0) {
      cutoff = 50.0 / k.parameter.real();
    } else {
      throw DomainError("exponential tail needs a cutoff or a Laplace kernel with Re s > 0");
    }
    std::erase_if(points, [cutoff](double p) { return p >= cutoff; });
  }

  const double min_point = points.empty() ? 1.0 : points.front();
  const double t_lo = std::min({0.1, min_point / 4.0, truncated ? cutoff / 4.0 : 0.1});
  const double max_point = points.empty() ? 1.0 : points.back();
  const double t_hi = truncated ? cutoff : std::max(10.0, 10.0 * max_point);

  auto in_log = [&d, &k](double u) { return kernel_in_log(d, k, u); };
  auto direct = [&d, &k](double t) { return kernel_direct(d, k, t); };

  ComplexQuadrature total;
  total.value = 0.0;

  const double u_lo = std::log(t_lo);
  const double u_hi = std::log(t_hi);
  if (looks_divergent(in_log, u_lo, -1.0, tol) ||
      (!truncated && looks_divergent(in_log, u_hi, 1.0, tol))) {
    total.status = QuadratureStatus::Divergent;
    total.converged = false;
    total.value = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    total.abs_error_estimate = std::numeric_limits<double>::infinity();
    return total;
  }

  quad_detail::AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  const auto s_points = mapped_points();
  accumulate(total,
             quad_detail::adaptive<cplx>(mapped(in_log, u_lo, -1.0), s_points, tol / 4.0, opt));

  std::vector<double> middle{t_lo};
  for (double p : points) {
    if (p > t_lo && p < t_hi) middle.push_back(p);
  }
  middle.push_back(t_hi);
  std::vector<double> refined;
  for (std::size_t i = 0; i + 1 < middle.size(); ++i) {
    refined.push_back(middle[i]);
    for (double t = middle[i] * 10.0; t < middle[i + 1] * 0.999; t *= 10.0) refined.push_back(t);
  }
  refined.push_back(t_hi);
  accumulate(total, quad_detail::adaptive<cplx>(direct, refined, tol / 2.0, opt));

  if (!truncated) {
    accumulate(total,
               quad_detail::adaptive<cplx>(mapped(in_log, u_hi, 1.0), s_points, tol / 4.0, opt));
  }

  const double target = std::max(tol, rel_tol * std::abs(total.value));
  total.converged = std::isfinite(total.abs_error_estimate) && total.abs_error_estimate <= target &&
                    std::isfinite(total.value.real()) && std::isfinite(total.value.imag());
  total.status = total.converged ? QuadratureStatus::Converged : QuadratureStatus::NotConverged;
  return total;
}

ComplexQuadrature stieltjes_transform(const Density& density, CutPlanePoint z, double tol) {
  IntegrandSpec spec;
  spec.density = density;
  spec.kernel = Kernel::stieltjes(z.value());
  spec.tail = density.tail;
  return integrate_semi_infinite(spec, tol);
}

ComplexQuadrature laplace_transform(const Density& density, cplx s, double tol,
                                    std::optional<double> cutoff, double rel_tol) {
  if (!(s.real() > 0.0)) throw DomainError("laplace_transform needs Re s > 0");
  IntegrandSpec spec;
  spec.density = density;
  spec.kernel = Kernel::laplace(s);
  spec.tail = TailHint::exponential();
  spec.cutoff = cutoff ? *cutoff : 50.0 / s.real();
  return integrate_semi_infinite(spec, tol, rel_tol);
}

RealQuadrature laplace_transform(const Density& density, double s, double tol,
                                 std::optional<double> cutoff, double rel_tol) {
  const auto c = laplace_transform(density, cplx(s, 0.0), tol, cutoff, rel_tol);
  RealQuadrature r;
  r.value = c.value.real();
  r.abs_error_estimate = c.abs_error_estimate;
  r.panels = c.panels;
  r.evals = c.evals;
  r.converged = c.converged;
  r.status = c.status;
  return r;
}

ComplexQuadrature levy_integral(const Density& levy_density, CutPlanePoint z, double tol) {
  if (!(z.re() > 0.0)) throw DomainError("levy_integral needs Re z > 0");
  IntegrandSpec spec;
  spec.density = levy_density;
  spec.kernel = Kernel::levy(z.value());
  spec.tail = levy_density.tail;
  return integrate_semi_infinite(spec, tol);
}

}  // namespace lnratio
