#include "lnratio/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "lnratio/densities.hpp"
#include "lnratio/format.hpp"
#include "lnratio/representations.hpp"

namespace lnratio {

namespace {

constexpr double kAmplificationLimit = 1e12;

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("grid: cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

// Highest order k such that every |c_j| x^j, j <= k, stays within the amplification limit.
int usable_order(const TaylorJet& jet, double x) {
  const double c0 = std::abs(jet[0]);
  for (int k = 1; k <= jet.order(); ++k) {
    if (std::abs(jet[k]) * std::pow(x, k) > kAmplificationLimit * c0) return k - 1;
  }
  return jet.order();
}

// Sign test (-1)^k g^(k)(x) >= -tol (|g^(k)| + k! |g(x)|) for k in [first, last].
void check_signs(PropertyReport& r, double x, const std::vector<double>& c, int first, int last,
                 double tol) {
  double factorial = 1.0;
  for (int k = 1; k < first; ++k) factorial *= k;
  for (int k = first; k <= last; ++k) {
    if (k > 0) factorial *= k;
    const double deriv = factorial * c[static_cast<std::size_t>(k)];
    const double signed_deriv = (k % 2 == 0) ? deriv : -deriv;
    const double scale = std::abs(deriv) + factorial * std::abs(c[0]);
    if (signed_deriv >= 0.0) continue;
    const double violation = scale > 0.0 ? -signed_deriv / scale : 0.0;
    if (violation > tol) {
      r.pass = false;
      if (violation > r.worst_violation) {
        r.worst_violation = violation;
        r.witness = Witness{x, 0.0, k, signed_deriv};
      }
    }
  }
}

PropertyReport new_report(PropertyKind kind, std::string fn, std::string grid, int order) {
  PropertyReport r;
  r.property = kind;
  r.fn = std::move(fn);
  r.grid = std::move(grid);
  r.max_order = order;
  return r;
}

void check_order(int max_order) {
  if (max_order < 0 || max_order > kMaxJetOrder) {
    throw DomainError("derivative order must be in [0, 12]");
  }
}

JetTarget levy_target(std::string name, Density base, double tol) {
  JetTarget t;
  t.name = std::move(name);
  t.jet = [base = std::move(base), tol](double x, int order) {
    return TaylorJet(x, levy_density_jet(base, x, order, tol));
  };
  return t;
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4) throw DomainError("grid must look like log:<lo>:<hi>:<count>");
  GridSpec g;
  if (parts[0] == "log") {
    g.scale = Scale::Log;
  } else if (parts[0] == "lin") {
    g.scale = Scale::Lin;
  } else {
    throw DomainError("grid scale must be 'log' or 'lin'");
  }
  g.lo = parse_number(parts[1]);
  g.hi = parse_number(parts[2]);
  int count = 0;
  const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
  if (ec != std::errc() || ptr != parts[3].data() + parts[3].size()) {
    throw DomainError("grid count must be an integer");
  }
  g.count = count;
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || !std::isfinite(g.hi)) {
    throw DomainError("grid bounds must satisfy 0 < lo < hi");
  }
  if (g.count < 2) throw DomainError("grid count must be at least 2");
  return g;
}

std::vector<double> GridSpec::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        scale == Scale::Log ? std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo)))
                            : lo + s * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string GridSpec::to_string() const {
  return std::string(scale == Scale::Log ? "log:" : "lin:") + format_double(lo) + ":" +
         format_double(hi) + ":" + std::to_string(count);
}

JetTarget jet_target(FunctionId fn) {
  JetTarget t;
  t.name = std::string(lnratio::to_string(fn));
  t.jet = [fn](double x, int order) { return taylor_jet(fn, x, order); };
  t.value_at_infinity = fn == FunctionId::h ? 1.0 : 0.0;
  return t;
}

JetTarget power_times(double alpha, const JetTarget& f) {
  JetTarget t;
  t.name = "x^" + format_double(alpha) + "*" + f.name;
  t.jet = [alpha, f](double x, int order) {
    TaylorJet base = f.jet(x, order) + (-f.value_at_infinity);
    if (alpha == 0.0) return base;
    return pow(TaylorJet::variable(x, order), alpha) * base;
  };
  return t;
}

JetTarget levy_z2H_target(double tol) { return levy_target("levy_density_z2H", rho_density(), tol); }

JetTarget levy_invzH_target(double tol) {
  return levy_target("levy_density_invzH", sigma_density(), tol);
}

std::string_view to_string(PropertyKind p) noexcept {
  switch (p) {
    case PropertyKind::CM: return "CM";
    case PropertyKind::LCM: return "LCM";
    case PropertyKind::BERNSTEIN: return "BERNSTEIN";
    case PropertyKind::STIELTJES_GEOMETRIC: return "STIELTJES_GEOMETRIC";
    case PropertyKind::IDENTITY: return "IDENTITY";
    case PropertyKind::OPERATOR_MONOTONE: return "OPERATOR_MONOTONE";
  }
  return "?";
}

PropertyReport check_cm(const JetTarget& f, const std::vector<double>& grid, int max_order,
                        double tol, const std::string& grid_label) {
  check_order(max_order);
  auto r = new_report(PropertyKind::CM, f.name, grid_label, max_order);
  for (double x : grid) {
    const TaylorJet jet = f.jet(x, max_order);
    int usable = max_order;
    if (jet.loss_of_significance) {
      usable = usable_order(jet, x);
      r.reductions.push_back({x, usable});
    }
    check_signs(r, x, jet.coeffs(), 0, usable, tol);
    ++r.points_checked;
  }
  return r;
}

PropertyReport check_cm(FunctionId fn, const GridSpec& grid, int max_order, double tol) {
  return check_cm(jet_target(fn), grid.points(), max_order, tol, grid.to_string());
}

PropertyReport check_lcm(const JetTarget& f, const std::vector<double>& grid, int max_order,
                         double tol, const std::string& grid_label) {
  check_order(max_order);
  auto r = new_report(PropertyKind::LCM, f.name, grid_label, max_order);
  for (double x : grid) {
    const TaylorJet jet = f.jet(x, max_order);
    ++r.points_checked;
    if (!(jet[0] > 0.0)) {
      r.pass = false;
      r.worst_violation = std::numeric_limits<double>::infinity();
      if (!r.witness) r.witness = Witness{x, 0.0, 0, jet[0]};
      continue;
    }
    int usable = max_order;
    if (jet.loss_of_significance) {
      usable = usable_order(jet, x);
      r.reductions.push_back({x, usable});
    }
    check_signs(r, x, log(jet).coeffs(), 1, usable, tol);
  }
  return r;
}

PropertyReport check_lcm(FunctionId fn, const GridSpec& grid, int max_order, double tol) {
  return check_lcm(jet_target(fn), grid.points(), max_order, tol, grid.to_string());
}

PropertyReport check_bernstein(const JetTarget& f, const std::vector<double>& grid, int max_order,
                               double tol, const std::string& grid_label) {
  check_order(max_order);
  if (max_order < 1) throw DomainError("the Bernstein check needs order >= 1");
  auto r = new_report(PropertyKind::BERNSTEIN, f.name, grid_label, max_order);
  for (double x : grid) {
    const TaylorJet jet = f.jet(x, max_order);
    ++r.points_checked;
    if (jet[0] < 0.0) {
      const double violation = 1.0;
      r.pass = false;
      if (violation > r.worst_violation || !r.witness) {
        r.worst_violation = std::max(r.worst_violation, violation);
        r.witness = Witness{x, 0.0, 0, jet[0]};
      }
      continue;
    }
    int usable = max_order;
    if (jet.loss_of_significance) {
      usable = usable_order(jet, x);
      r.reductions.push_back({x, usable});
    }
    if (usable < 1) continue;
    const TaylorJet d = jet.derivative_jet();
    // The witness order refers to f' here.
    check_signs(r, x, d.coeffs(), 0, usable - 1, tol);
  }
  return r;
}

PropertyReport check_bernstein(FunctionId fn, const GridSpec& grid, int max_order, double tol) {
  return check_bernstein(jet_target(fn), grid.points(), max_order, tol, grid.to_string());
}

double degree_ratio(const JetTarget& f, double x) {
  if (!(x > 0.0)) throw DomainError("degree_ratio needs x > 0");
  const TaylorJet jet = f.jet(x, 1);
  return -x * jet[1] / (jet[0] - f.value_at_infinity);
}

double degree_ratio(FunctionId fn, double x) { return degree_ratio(jet_target(fn), x); }

double degree_ratio_H_closed_form(double x) {
  if (!(x > 0.0) || x == 1.0) throw DomainError("the closed form needs x > 0, x != 1");
  // num = ln(x(x+1)/(x^2+1)), den = ln((x^2+1)/(x+1)), both formed without cancellation.
  const double num = std::log1p((x - 1.0) / (x * x + 1.0));
  const double den = std::log1p(x * (x - 1.0) / (x + 1.0));
  const double top = x * (x * x + 2.0 * x - 1.0) * num + (x * x - 2.0 * x - 1.0) * den;
  const double bottom = (x + 1.0) * (x * x + 1.0) * num * den;
  return top / bottom;
}

GridSpec default_degree_grid() { return GridSpec::log(1e-12, 1e-1, 60); }

DegreeBracket estimate_cm_degree(const JetTarget& f, std::vector<double> candidates,
                                 const std::vector<double>& grid, int max_order, double tol,
                                 double refine_width) {
  if (candidates.empty()) throw DomainError("estimate_cm_degree needs candidates");
  if (grid.empty()) throw DomainError("estimate_cm_degree needs grid points");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  DegreeBracket b;
  b.fn = f.name;
  b.candidates = candidates;
  // first_failure keeps the report of the smallest failing alpha seen so far.
  double failure_alpha = std::numeric_limits<double>::infinity();
  auto passes = [&](double alpha) {
    auto rep = check_cm(power_times(alpha, f), grid, max_order, tol);
    if (!rep.pass && alpha < failure_alpha) {
      failure_alpha = alpha;
      b.first_failure = rep;
    }
    return rep.pass;
  };
  for (double a : candidates) {
    const bool ok = passes(a);
    b.candidate_pass.push_back(ok);
    if (ok) b.largest_passing = a;
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!b.candidate_pass[i] && (!b.largest_passing || candidates[i] > *b.largest_passing)) {
      b.smallest_failing = candidates[i];
      break;
    }
  }
  if (b.largest_passing && b.smallest_failing) {
    double lo = *b.largest_passing;
    double hi = *b.smallest_failing;
    while (hi - lo > refine_width) {
      const double mid = 0.5 * (lo + hi);
      if (passes(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    b.largest_passing = lo;
    b.smallest_failing = hi;
  }
  b.upper_bound = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double r = degree_ratio(f, x);
    if (r < b.upper_bound) {
      b.upper_bound = r;
      b.upper_bound_at = x;
    }
  }
  b.consistent = !b.largest_passing || *b.largest_passing <= b.upper_bound + b.consistency_tol;
  return b;
}

StieltjesTarget stieltjes_target(FunctionId fn) {
  return {std::string(lnratio::to_string(fn)), [fn](CutPlanePoint z) { return eval(fn, z); }};
}

StieltjesTarget damped_G_target(double eps) {
  return {"G/(" + format_double(eps) + "*G+1)", [eps](CutPlanePoint z) {
            const cplx g = eval_G(z);
            return g / (eps * g + 1.0);
          }};
}

std::vector<CutPlanePoint> upper_half_plane_grid(int radii, int angles) {
  if (radii < 2 || angles < 1) throw DomainError("grid needs at least 2 radii and 1 angle");
  std::vector<CutPlanePoint> out;
  const double max_angle = 0.75 * std::numbers::pi;
  for (int i = 0; i < radii; ++i) {
    const double r = std::pow(10.0, -3.0 + 6.0 * i / (radii - 1));
    for (int j = 1; j <= angles; ++j) {
      const double theta = max_angle * j / angles;
      const auto z = CutPlanePoint::make(std::polar(r, theta));
      if (in_gated_region(z)) out.push_back(z);
    }
  }
  return out;
}

PropertyReport check_stieltjes_geometric(const StieltjesTarget& f,
                                         const std::vector<CutPlanePoint>& grid, double tol) {
  auto r = new_report(PropertyKind::STIELTJES_GEOMETRIC, f.name,
                      "upper-half-plane:" + std::to_string(grid.size()), 0);
  for (const auto& z : grid) {
    if (!(z.im() > 0.0)) throw DomainError("geometric check needs Im z > 0");
    if (!in_gated_region(z)) throw DomainError("geometric check point outside the gated region");
    const cplx v = f.eval(z);
    const double product = z.im() * v.imag();
    const double violation = product / (1.0 + std::abs(v));
    ++r.points_checked;
    if (violation > tol) {
      r.pass = false;
      if (violation > r.worst_violation) {
        r.worst_violation = violation;
        r.witness = Witness{z.re(), z.im(), -1, product};
      }
    }
  }
  return r;
}

PropertyReport check_closure_identities(const GridSpec& grid, double tol) {
  auto r = new_report(PropertyKind::IDENTITY, "H", grid.to_string(), 0);
  for (double x : grid.points()) {
    const double g = eval_real(FunctionId::G, x);
    const double residuals[3] = {
        std::abs(eval_real(FunctionId::H, 1.0 / x) * eval_real(FunctionId::H, x) - 1.0),
        std::abs(eval_real(FunctionId::X2H, x) - x * g) / std::abs(x * g),
        std::abs(eval_real(FunctionId::INV_XH, x) * g - 1.0),
    };
    ++r.points_checked;
    for (int k = 0; k < 3; ++k) {
      if (residuals[k] > tol) r.pass = false;
      if (residuals[k] > r.worst_violation) {
        r.worst_violation = residuals[k];
        if (residuals[k] > tol) r.witness = Witness{x, 0.0, k, residuals[k]};
      }
    }
  }
  return r;
}

}  // namespace lnratio
