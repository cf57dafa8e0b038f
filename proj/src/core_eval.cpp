#include "lnratio/core_eval.hpp"

#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <vector>

#include "lnratio/series.hpp"

namespace lnratio {

namespace {

constexpr double kPi = std::numbers::pi;

// Series order of the z = 1 path.
constexpr std::size_t kSeriesOrder = 8;

struct SeriesCoefficients {
  std::array<double, kSeriesOrder> log_over_w{};  // ln z / (z-1)
  std::array<double, kSeriesOrder> den_over_w{};  // ln((1+z^2)/(1+z)) / (z-1)
};

const SeriesCoefficients& series_coefficients() {
  static const SeriesCoefficients coeffs = [] {
    SeriesCoefficients c;
    const auto num = series::log_ratio_numerator(kSeriesOrder);
    const auto den = series::log_ratio_denominator(kSeriesOrder);
    for (std::size_t i = 0; i < kSeriesOrder; ++i) {
      c.log_over_w[i] = num[i];
      c.den_over_w[i] = den[i];
    }
    return c;
  }();
  return coeffs;
}

cplx horner(const std::array<double, kSeriesOrder>& c, cplx w) {
  cplx acc = 0.0;
  for (std::size_t i = kSeriesOrder; i-- > 0;) {
    acc = acc * w + c[i];
  }
  return acc;
}

// ln(1 + w) without the cancellation of forming 1 + w for small |w|.
cplx log1p_complex(cplx w) {
  if (std::abs(w) < 0.5) {
    const double a = w.real();
    const double b = w.imag();
    return {0.5 * std::log1p(a * (2.0 + a) + b * b), std::atan2(b, 1.0 + a)};
  }
  return std::log(1.0 + w);
}

// (1+z^2)/(1+z) - 1 = z(z-1)/(1+z), arranged so large |z| does not overflow.
cplx denominator_offset(cplx z) {
  if (std::abs(z) >= 1.0) {
    return (z - 1.0) / (1.0 + 1.0 / z);
  }
  return z * (z - 1.0) / (1.0 + z);
}

// z(1+z)/(1+z^2) - 1 = (z-1)/(1+z^2).
cplx numerator_offset(cplx z) {
  if (std::abs(z) >= 1.0) {
    return (1.0 - 1.0 / z) / (z + 1.0 / z);
  }
  return (z - 1.0) / (1.0 + z * z);
}

struct LogParts {
  cplx log_z;
  cplx den;  // principal ln((1+z^2)/(1+z))
  cplx num;  // ln(z(1+z)/(1+z^2)) on the branch that makes num = log_z - den
};

LogParts log_parts(cplx z) {
  LogParts p;
  p.log_z = std::log(z);
  p.den = log1p_complex(denominator_offset(z));
  const cplx reference = p.log_z - p.den;
  cplx num = log1p_complex(numerator_offset(z));
  const double turns = std::round((reference.imag() - num.imag()) / (2.0 * kPi));
  num += cplx(0.0, 2.0 * kPi * turns);
  p.num = num;
  return p;
}

void reject_imaginary_unit(cplx z) {
  if (1.0 + z * z == cplx(0.0, 0.0)) {
    throw DomainError("h and H are undefined at z = +-i");
  }
}

}  // namespace

bool CutPlanePoint::admissible(double re, double im) noexcept {
  if (!std::isfinite(re) || !std::isfinite(im)) return false;
  if (im == 0.0 && re <= 0.0) return false;
  return true;
}

CutPlanePoint CutPlanePoint::make(double re, double im) {
  if (!admissible(re, im)) {
    throw DomainError("point is not in the cut plane C \\ (-inf, 0]");
  }
  return CutPlanePoint(re, im);
}

std::string_view to_string(FunctionId fn) noexcept {
  switch (fn) {
    case FunctionId::H: return "H";
    case FunctionId::h: return "h";
    case FunctionId::G: return "G";
    case FunctionId::INV_Z2H: return "INV_Z2H";
    case FunctionId::INV_H: return "INV_H";
    case FunctionId::INV_XH: return "INV_XH";
    case FunctionId::X2H: return "X2H";
    case FunctionId::XH: return "XH";
    case FunctionId::INV_X2H: return "INV_X2H";
  }
  return "?";
}

std::optional<FunctionId> parse_function_id(std::string_view name) noexcept {
  static constexpr std::array all = {FunctionId::H,      FunctionId::h,      FunctionId::G,
                                     FunctionId::INV_Z2H, FunctionId::INV_H,  FunctionId::INV_XH,
                                     FunctionId::X2H,    FunctionId::XH,     FunctionId::INV_X2H};
  for (auto fn : all) {
    if (to_string(fn) == name) return fn;
  }
  return std::nullopt;
}

bool near_imaginary_unit(CutPlanePoint z, double radius) noexcept {
  const cplx w = z.value();
  return std::abs(1.0 + w * w) < radius;
}

cplx principal_log(CutPlanePoint z) { return std::log(z.value()); }

namespace paths {

cplx h_formula(cplx z) {
  const auto p = log_parts(z);
  return p.log_z / p.den;
}

cplx H_formula(cplx z) {
  const auto p = log_parts(z);
  return p.num / p.den;
}

cplx h_series(cplx z) {
  const auto& c = series_coefficients();
  const cplx w = z - 1.0;
  return horner(c.log_over_w, w) / horner(c.den_over_w, w);
}

cplx H_series(cplx z) {
  const auto& c = series_coefficients();
  const cplx w = z - 1.0;
  const cplx den = horner(c.den_over_w, w);
  return (horner(c.log_over_w, w) - den) / den;
}

}  // namespace paths

cplx eval_h(CutPlanePoint z) {
  const cplx w = z.value();
  if (w == cplx(1.0, 0.0)) return 2.0;
  reject_imaginary_unit(w);
  if (std::abs(w - 1.0) < kSeriesRadius) return paths::h_series(w);
  return paths::h_formula(w);
}

cplx eval_H(CutPlanePoint z) {
  const cplx w = z.value();
  if (w == cplx(1.0, 0.0)) return 1.0;
  reject_imaginary_unit(w);
  if (std::abs(w - 1.0) < kSeriesRadius) return paths::H_series(w);
  return paths::H_formula(w);
}

cplx eval_G(CutPlanePoint z) {
  const cplx w = z.value();
  if (w == cplx(1.0, 0.0)) return 1.0;
  return w * eval_H(z);
}

cplx eval_inv_z2H(CutPlanePoint z) {
  const cplx w = z.value();
  if (w == cplx(1.0, 0.0)) return 1.0;
  return 1.0 / (w * eval_G(z));
}

cplx eval(FunctionId fn, CutPlanePoint z) {
  const cplx w = z.value();
  switch (fn) {
    case FunctionId::H: return eval_H(z);
    case FunctionId::h: return eval_h(z);
    case FunctionId::G:
    case FunctionId::XH: return eval_G(z);
    case FunctionId::INV_Z2H:
    case FunctionId::INV_X2H: return eval_inv_z2H(z);
    case FunctionId::INV_H: return 1.0 / eval_H(z);
    case FunctionId::INV_XH: return 1.0 / eval_G(z);
    case FunctionId::X2H: return w * eval_G(z);
  }
  throw DomainError("unknown function id");
}

double eval_real(FunctionId fn, double x) {
  if (!(x > 0.0)) throw DomainError("real evaluation needs x > 0");
  return eval(fn, CutPlanePoint::make(x, 0.0)).real();
}

Evaluation eval_checked(FunctionId fn, CutPlanePoint z) {
  return {eval(fn, z), near_imaginary_unit(z)};
}

cplx boundary_G(double t, double eps) {
  if (!(t > 0.0)) throw DomainError("boundary_G needs t > 0");
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("boundary_G needs 0 < eps <= 1");
  return eval_G(CutPlanePoint::make(-t, eps));
}

std::string_view to_string(BoundaryQuantity q) noexcept {
  switch (q) {
    case BoundaryQuantity::RE_G: return "RE_G";
    case BoundaryQuantity::IM_G: return "IM_G";
    case BoundaryQuantity::IM_INV_Z2H: return "IM_INV_Z2H";
  }
  return "?";
}

BoundaryLimit boundary_limit(double t, BoundaryQuantity which, double tol) {
  if (!(t > 0.0)) throw DomainError("boundary_limit needs t > 0");
  if (t == 1.0 || t == 1.0 + std::numbers::sqrt2) {
    throw DomainError("boundary_limit is one-sided at the breakpoints; offset t");
  }
  auto sample = [&](double eps) {
    const auto z = CutPlanePoint::make(-t, eps);
    switch (which) {
      case BoundaryQuantity::RE_G: return eval_G(z).real();
      case BoundaryQuantity::IM_G: return eval_G(z).imag();
      case BoundaryQuantity::IM_INV_Z2H: return eval_inv_z2H(z).imag();
    }
    return 0.0;
  };

  constexpr int kFirst = 10;
  constexpr int kLast = 26;
  constexpr int kRows = kLast - kFirst + 1;
  constexpr int kMaxColumn = 8;

  // Neville tableau for an expansion in integer powers of eps with ratio 2.
  std::vector<std::vector<double>> table(kRows);
  BoundaryLimit best;
  best.value = sample(std::ldexp(1.0, -kFirst));
  best.error_estimate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRows; ++i) {
    table[i].resize(std::min(i, kMaxColumn) + 1);
    table[i][0] = sample(std::ldexp(1.0, -(kFirst + i)));
    double factor = 1.0;
    for (int j = 1; j < static_cast<int>(table[i].size()); ++j) {
      factor *= 2.0;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
      const double err = std::max(std::abs(table[i][j] - table[i][j - 1]),
                                  std::abs(table[i][j] - table[i - 1][j - 1]));
      if (err <= best.error_estimate) {
        best.error_estimate = err;
        best.value = table[i][j];
      }
    }
  }
  best.converged = best.error_estimate <= 10.0 * tol;
  return best;
}

}  // namespace lnratio
