#include "lnratio/representations.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

namespace lnratio {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

Density sigma_for(const RepresentationOptions& opt) {
  return opt.sigma ? candidate_density(*opt.sigma) : sigma_density();
}

bool needs_right_half_plane(RepresentationId rep) {
  return rep == RepresentationId::LK_INV_ZH || rep == RepresentationId::LK_Z2H ||
         rep == RepresentationId::LAPLACE_H;
}

ComplexQuadrature scaled(ComplexQuadrature q, cplx factor) {
  q.value *= factor;
  q.abs_error_estimate *= std::abs(factor);
  return q;
}

// The density on [lo, hi], zero elsewhere.
Density restricted(const Density& d, double lo, double hi) {
  Density r;
  r.name = d.name + "|restricted";
  r.at = [d, lo, hi](double t) { return (t >= lo && t <= hi) ? d.at(t) : 0.0; };
  const double ulo = lo > 0.0 ? std::log(lo) : -std::numeric_limits<double>::infinity();
  const double uhi = std::log(hi);
  r.log_form = [d, ulo, uhi](double u) { return (u >= ulo && u <= uhi) ? d.log_form(u) : LogScaled{}; };
  r.breakpoints = d.breakpoints;
  if (lo > 0.0) r.breakpoints.push_back(lo);
  if (std::isfinite(hi)) r.breakpoints.push_back(hi);
  r.tail = d.tail;
  return r;
}

ComplexQuadrature raw_integral(const Density& d, double tol) {
  IntegrandSpec spec;
  spec.density = d;
  spec.tail = TailHint::log_slow();
  return integrate_semi_infinite(spec, tol);
}

ComplexQuadrature stieltjes_integral(const Density& d, cplx z, double tol) {
  IntegrandSpec spec;
  spec.density = d;
  spec.kernel = Kernel::stieltjes(z);
  spec.tail = TailHint::log_slow();
  return integrate_semi_infinite(spec, tol);
}

}  // namespace

std::string_view to_string(RepresentationId rep) noexcept {
  switch (rep) {
    case RepresentationId::STIELTJES_G: return "STIELTJES_G";
    case RepresentationId::STIELTJES_INV_Z2H: return "STIELTJES_INV_Z2H";
    case RepresentationId::LAPLACE_H: return "LAPLACE_H";
    case RepresentationId::BERNSTEIN_INV_H: return "BERNSTEIN_INV_H";
    case RepresentationId::LK_INV_ZH: return "LK_INV_ZH";
    case RepresentationId::LK_Z2H: return "LK_Z2H";
    case RepresentationId::STIELTJES_H_SPLIT: return "STIELTJES_H_SPLIT";
  }
  return "?";
}

const std::vector<RepresentationId>& all_representations() {
  static const std::vector<RepresentationId> all = {
      RepresentationId::STIELTJES_G,     RepresentationId::STIELTJES_INV_Z2H,
      RepresentationId::LAPLACE_H,       RepresentationId::BERNSTEIN_INV_H,
      RepresentationId::LK_INV_ZH,       RepresentationId::LK_Z2H,
      RepresentationId::STIELTJES_H_SPLIT};
  return all;
}

std::optional<RepresentationId> parse_representation_id(std::string_view name) noexcept {
  for (auto rep : all_representations()) {
    if (to_string(rep) == name) return rep;
  }
  return std::nullopt;
}

double default_tolerance(RepresentationId rep) noexcept {
  switch (rep) {
    case RepresentationId::STIELTJES_INV_Z2H:
    case RepresentationId::BERNSTEIN_INV_H:
    case RepresentationId::LK_INV_ZH: return 1e-5;
    default: return 1e-6;
  }
}

std::vector<CutPlanePoint> default_points(RepresentationId rep) {
  std::vector<CutPlanePoint> pts;
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) pts.push_back(CutPlanePoint::make(x));
  for (cplx z : {cplx(1, 1), cplx(3, -2), cplx(0.5, 2)}) pts.push_back(CutPlanePoint::make(z));
  if (needs_right_half_plane(rep)) {
    std::erase_if(pts, [](const CutPlanePoint& z) { return !(z.re() > 0.0); });
  }
  return pts;
}

bool in_gated_region(CutPlanePoint z) noexcept {
  const cplx w = z.value();
  if (std::abs(std::arg(w)) > 0.75 * std::numbers::pi + 1e-15) return false;
  return std::abs(w - cplx(0, 1)) >= 1e-2 && std::abs(w + cplx(0, 1)) >= 1e-2;
}

cplx representation_lhs(RepresentationId rep, CutPlanePoint z) {
  const cplx w = z.value();
  switch (rep) {
    case RepresentationId::STIELTJES_G: return eval_G(z);
    case RepresentationId::STIELTJES_INV_Z2H: return eval_inv_z2H(z);
    case RepresentationId::LAPLACE_H:
    case RepresentationId::STIELTJES_H_SPLIT: return eval_H(z);
    case RepresentationId::BERNSTEIN_INV_H: return 1.0 / eval_H(z);
    case RepresentationId::LK_INV_ZH: return 1.0 / eval_G(z);
    case RepresentationId::LK_Z2H: return w * eval_G(z);
  }
  return 0.0;
}

ComplexQuadrature representation_rhs(RepresentationId rep, CutPlanePoint z, double abs_tol,
                                     const RepresentationOptions& opt) {
  const cplx w = z.value();
  switch (rep) {
    case RepresentationId::STIELTJES_G: return stieltjes_transform(rho_density(), z, abs_tol);
    case RepresentationId::STIELTJES_H_SPLIT:
      return scaled(stieltjes_transform(rho_density(), z, abs_tol * std::abs(w)), 1.0 / w);
    case RepresentationId::STIELTJES_INV_Z2H:
      return stieltjes_transform(sigma_for(opt), z, abs_tol);
    case RepresentationId::BERNSTEIN_INV_H:
      return scaled(stieltjes_transform(sigma_for(opt), z, abs_tol / std::norm(w)), w * w);
    case RepresentationId::LAPLACE_H: {
      const double rel = abs_tol / std::max(std::abs(representation_lhs(rep, z)), kTiny);
      return laplace_transform(h_rep_kernel_density(rel / 10.0), w, abs_tol);
    }
    case RepresentationId::LK_INV_ZH: {
      // Nested integrals: the inner ones run at a tenth of the outer relative tolerance.
      const double rel = abs_tol / std::max(std::abs(representation_lhs(rep, z)), kTiny);
      const auto m = laplace_moment_density("levy_density_invzH", sigma_for(opt), rel / 10.0);
      return levy_integral(m, z, abs_tol);
    }
    case RepresentationId::LK_Z2H: {
      const double rel = abs_tol / std::max(std::abs(representation_lhs(rep, z)), kTiny);
      return levy_integral(levy_z2H_density(rel / 10.0), z, abs_tol);
    }
  }
  return {};
}

ResidualPoint residual(RepresentationId rep, CutPlanePoint z, double tol,
                       const RepresentationOptions& opt) {
  if (!in_gated_region(z)) {
    throw DomainError("representation point outside the verified region");
  }
  if (needs_right_half_plane(rep) && !(z.re() > 0.0)) {
    throw DomainError(std::string(to_string(rep)) + " needs Re z > 0");
  }
  ResidualPoint p;
  p.z = z;
  p.lhs = representation_lhs(rep, z);
  const double scale = std::max(std::abs(p.lhs), kTiny);
  const auto q = representation_rhs(rep, z, tol * scale / 20.0, opt);
  p.rhs = q.value;
  p.status = q.status;
  p.abs_res = std::abs(p.rhs - p.lhs);
  p.rel_res = p.abs_res / scale;
  p.quad_err = q.abs_error_estimate / scale;
  if (q.status == QuadratureStatus::Divergent) {
    p.abs_res = p.rel_res = std::numeric_limits<double>::infinity();
  }
  p.pass = q.converged && p.rel_res <= std::max(tol, 10.0 * p.quad_err);
  return p;
}

ResidualReport verify_representation(RepresentationId rep, const std::vector<CutPlanePoint>& points,
                                     double tol, const RepresentationOptions& opt) {
  if (points.empty()) throw DomainError("verify_representation needs at least one point");
  ResidualReport r;
  r.rep = rep;
  r.tol = tol;
  r.pass = true;
  for (const auto& z : points) {
    r.points.push_back(residual(rep, z, tol, opt));
    const auto& p = r.points.back();
    r.max_rel_res = std::max(r.max_rel_res, p.rel_res);
    if (!p.pass && !r.witness) r.witness = r.points.size() - 1;
    r.pass = r.pass && p.pass;
  }
  return r;
}

TruncatedSplit truncated_split(RepresentationId rep, CutPlanePoint z,
                               const std::vector<double>& cutoffs, double tol) {
  TruncatedSplit out;
  out.rep = rep;
  out.z = z;
  out.cutoffs = cutoffs;
  const cplx w = z.value();
  if (rep == RepresentationId::STIELTJES_H_SPLIT) {
    // H(z) = (1/z) int rho/t - int rho/(t(t+z)); both terms diverge at t = 0.
    const Density rho_over_t = rho_density().times_power(-1);
    out.combined = representation_rhs(rep, z, tol).value;
    for (double T : cutoffs) {
      const Density piece = restricted(rho_over_t, 1.0 / T, std::numeric_limits<double>::infinity());
      out.first_term.push_back(raw_integral(piece, tol).value / w);
      out.second_term.push_back(-stieltjes_integral(piece, w, tol).value);
    }
    out.terms = {{"(1/z) int rho(t)/t dt", raw_integral(rho_over_t, tol).status},
                 {"int rho(t)/(t(t+z)) dt", stieltjes_integral(rho_over_t, w, tol).status}};
  } else if (rep == RepresentationId::BERNSTEIN_INV_H) {
    // 1/H(z) = z int sigma - z int sigma t/(t+z); both terms diverge as t -> inf.
    const Density s = sigma_density();
    const Density s_t = s.times_power(1);
    out.combined = representation_rhs(rep, z, tol).value;
    for (double T : cutoffs) {
      out.first_term.push_back(w * raw_integral(restricted(s, 0.0, T), tol).value);
      out.second_term.push_back(-w * stieltjes_integral(restricted(s_t, 0.0, T), w, tol).value);
    }
    out.terms = {{"z int sigma(t) dt", raw_integral(s, tol).status},
                 {"int sigma(t) t z/(t+z) dt", stieltjes_integral(s_t, w, tol).status}};
  } else {
    throw DomainError("truncated_split applies to STIELTJES_H_SPLIT and BERNSTEIN_INV_H only");
  }
  for (std::size_t i = 0; i < out.first_term.size(); ++i) {
    out.sums.push_back(out.first_term[i] + out.second_term[i]);
  }
  out.converging = !out.sums.empty();
  double prev = std::numeric_limits<double>::infinity();
  for (const cplx& v : out.sums) {
    const double d = std::abs(v - out.combined);
    out.distances.push_back(d);
    if (!(d < prev)) out.converging = false;
    prev = d;
  }
  return out;
}

}  // namespace lnratio
