#include "lnratio/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lnratio/analysis.hpp"
#include "lnratio/densities.hpp"
#include "lnratio/opmon.hpp"
#include "lnratio/reports.hpp"
#include "lnratio/representations.hpp"

namespace lnratio {

namespace {

using Artifacts = std::optional<std::filesystem::path>;

class Detail {
 public:
  template <class... Args>
  Detail& add(const Args&... parts) {
    if (!first_) out_ << "; ";
    first_ = false;
    (out_ << ... << parts);
    return *this;
  }
  std::string str() const { return out_.str(); }

  Detail() { out_.precision(6); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

void save(const Artifacts& dir, const std::string& name, const Json& j) {
  if (dir) write_json(*dir / name, j);
}

bool within_ulp(double value, double target) {
  if (target == 0.0) return value == 0.0;
  const double ulp = std::nextafter(std::abs(target), std::numeric_limits<double>::infinity()) -
                     std::abs(target);
  return std::abs(value - target) <= ulp;
}

bool special_values(Detail& d, const Artifacts&) {
  struct Case {
    const char* name;
    double value;
    double target;
  };
  const Case cases[] = {
      {"H(1)", eval_real(FunctionId::H, 1.0), 1.0},
      {"h(1)", eval_real(FunctionId::h, 1.0), 2.0},
      {"rho(1)", rho(1.0), 0.0},
      {"varrho_paper(1)", varrho_paper(1.0), 1.0},
      {"g2(1)", g2(1.0), 1.0},
  };
  bool ok = true;
  for (const auto& c : cases) {
    const bool good = within_ulp(c.value, c.target);
    ok = ok && good;
    d.add(c.name, "=", c.value, good ? "" : " (off)");
  }
  return ok;
}

bool density_oracle(Detail& d, const Artifacts& dir) {
  double rho_dev = 0.0;
  double g2_dev = 0.0;
  double worst_t = 0.0;
  bool converged = true;
  Json rows = Json::array();
  for (double t : calibration_grid()) {
    const auto re = boundary_limit(t, BoundaryQuantity::RE_G);
    const auto im = boundary_limit(t, BoundaryQuantity::IM_G);
    converged = converged && re.converged && im.converged;
    const double oracle_rho = -im.value / std::numbers::pi;
    const double oracle_g2 = re.value * re.value + im.value * im.value;
    const double dr = std::abs(rho(t) - oracle_rho);
    const double dg = std::abs(g2(t) - oracle_g2) / std::abs(oracle_g2);
    if (dr > rho_dev) {
      rho_dev = dr;
      worst_t = t;
    }
    g2_dev = std::max(g2_dev, dg);
    rows.push_back({{"t", t}, {"rho", rho(t)}, {"rho_oracle", oracle_rho}, {"g2", g2(t)},
                    {"g2_oracle", oracle_g2}});
  }
  save(dir, "density_oracle.json", rows);
  d.add("max |rho - oracle| = ", rho_dev, " at t = ", worst_t, " (limit 1e-7)");
  d.add("max rel g2 deviation = ", g2_dev, " (limit 1e-6)");
  if (!converged) d.add("some eps-extrapolations did not converge");
  return rho_dev <= 1e-7 && g2_dev <= 1e-6;
}

bool representation_residuals(Detail& d, const Artifacts& dir) {
  bool ok = true;
  for (auto rep : all_representations()) {
    const double tol = default_tolerance(rep);
    const auto r = verify_representation(rep, default_points(rep), tol);
    ok = ok && r.pass;
    d.add(to_string(rep), r.pass ? " pass" : " FAIL", " max_rel_res=", r.max_rel_res, " tol=", tol);
    save(dir, "verify_" + std::string(to_string(rep)) + ".json", to_json(r));
  }
  if (dir) {
    const auto z = CutPlanePoint::make(2.0);
    save(dir, "split_STIELTJES_H_SPLIT.json",
         to_json(truncated_split(RepresentationId::STIELTJES_H_SPLIT, z)));
    save(dir, "split_BERNSTEIN_INV_H.json",
         to_json(truncated_split(RepresentationId::BERNSTEIN_INV_H, z)));
  }
  return ok;
}

bool sigma_selection(Detail& d, const Artifacts& dir) {
  const auto& cal = sigma_calibration();
  save(dir, "sigma_discrepancy.json", to_json(cal));
  d.add("max dev A = ", cal.max_dev_a, ", B = ", cal.max_dev_b, ", selected ", to_string(cal.selected));
  const SigmaCandidate other = cal.selected == SigmaCandidate::A ? SigmaCandidate::B : SigmaCandidate::A;
  RepresentationOptions opt;
  opt.sigma = other;
  const auto r = verify_representation(RepresentationId::STIELTJES_INV_Z2H,
                                       default_points(RepresentationId::STIELTJES_INV_Z2H), 1e-5, opt);
  const bool divergent = std::any_of(r.points.begin(), r.points.end(), [](const ResidualPoint& p) {
    return p.status == QuadratureStatus::Divergent;
  });
  d.add("rejected candidate ", to_string(other), divergent ? " DIVERGENT" : " not flagged divergent");
  return cal.decisive() && divergent;
}

bool complete_monotonicity(Detail& d, const Artifacts& dir) {
  const auto grid = GridSpec::log(1e-2, 1e2, 50);
  bool ok = true;
  auto record = [&](const PropertyReport& r, const std::string& label) {
    ok = ok && r.pass;
    d.add(label, " ", r.fn, r.pass ? " pass" : " FAIL");
    if (!r.pass && r.witness) {
      d.add("  witness x=", r.witness->x, " k=", r.witness->k, " value=", r.witness->value);
    }
    save(dir, "property_" + label + "_" + r.fn + ".json", to_json(r));
  };
  for (auto fn : {FunctionId::H, FunctionId::h}) record(check_cm(fn, grid, 10), "CM");
  for (auto fn : {FunctionId::H, FunctionId::XH, FunctionId::INV_X2H}) {
    record(check_lcm(fn, grid, 10), "LCM");
  }
  record(check_bernstein(FunctionId::INV_H, grid, 10), "BERNSTEIN");
  return ok;
}

bool degree_of_H(Detail& d, const Artifacts& dir) {
  const double ratio = degree_ratio(FunctionId::H, 1e-6);
  const bool ratio_ok = std::abs(ratio - 1.0) <= 1e-3;
  d.add("degree_ratio(H, 1e-6) = ", ratio, ratio_ok ? "" : " (outside 1 +- 1e-3)");

  const auto grid = GridSpec::log(1e-2, 1e2, 50).points();
  const auto H = jet_target(FunctionId::H);
  const auto one = check_cm(power_times(1.0, H), grid, 8);
  const auto over = check_cm(power_times(1.5, H), grid, 2);
  d.add("x H CM to order 8 ", one.pass ? "pass" : "FAIL");
  const bool over_ok = !over.pass && over.witness.has_value();
  if (over.witness) {
    d.add("x^1.5 H fails at x=", over.witness->x, " k=", over.witness->k);
  } else {
    d.add("x^1.5 H not rejected");
  }
  save(dir, "degree_xH.json", to_json(one));
  save(dir, "degree_x1.5H.json", to_json(over));

  bool levy_ok = true;
  for (const auto& target : {levy_z2H_target(), levy_invzH_target()}) {
    const double r = degree_ratio(target, 1e-3);
    const bool good = std::abs(r) <= 0.05;
    levy_ok = levy_ok && good;
    d.add(target.name, " ratio(1e-3) = ", r, good ? "" : " (not within 0.05 of 0)");
  }
  const auto bracket = estimate_cm_degree(H, {0.5, 0.9, 1.0, 1.1, 1.5},
                                          default_degree_grid().points(), 10);
  save(dir, "degree_bracket_H.json", to_json(bracket));
  return ratio_ok && one.pass && over_ok && levy_ok;
}

bool stieltjes_geometric(Detail& d, const Artifacts& dir) {
  const auto grid = upper_half_plane_grid();
  bool ok = grid.size() == 2000;
  d.add(grid.size(), " grid points");
  const std::vector<StieltjesTarget> targets = {
      stieltjes_target(FunctionId::G), stieltjes_target(FunctionId::INV_Z2H), damped_G_target(0.1),
      damped_G_target(1.0), damped_G_target(10.0)};
  Json all = Json::array();
  for (const auto& t : targets) {
    const auto r = check_stieltjes_geometric(t, grid, 1e-12);
    ok = ok && r.pass;
    d.add(t.name, r.pass ? " pass" : " FAIL");
    all.push_back(to_json(r));
  }
  save(dir, "stieltjes_geometric.json", all);
  return ok;
}

bool decay_limits(Detail& d, const Artifacts&) {
  double max_g = 0.0;
  for (int j = 0; j < 37; ++j) {
    const double theta = (-0.9 + 0.05 * j) * std::numbers::pi;
    max_g = std::max(max_g, std::abs(eval_G(CutPlanePoint::make(std::polar(1e8, theta)))));
  }
  double max_z2h = 0.0;
  for (int j = 0; j < 37; ++j) {
    const double theta = (-0.5 + j / 36.0) * std::numbers::pi;
    const auto z = CutPlanePoint::make(std::polar(1e-6, theta));
    max_z2h = std::max(max_z2h, std::abs(z.value() * eval_G(z)));
  }
  d.add("max |G(1e8 e^{i theta})| = ", max_g, " (limit 0.06)");
  d.add("max |z^2 H(z)| at r=1e-6 = ", max_z2h, " (limit 1e-4)");
  return max_g <= 0.06 && max_z2h <= 1e-4;
}

bool tail_law(Detail& d, const Artifacts&) {
  const double t = 1e8;
  const double l = std::log(t);
  const double v = rho(t) * l * l;
  d.add("rho(1e8) ln^2(1e8) = ", v, " (range [0.9, 1.05])");
  return v >= 0.9 && v <= 1.05;
}

bool operator_monotonicity(Detail& d, const Artifacts& dir) {
  bool ok = true;
  Json all = Json::array();
  for (auto fn : {FunctionId::INV_XH, FunctionId::X2H}) {
    std::size_t failures = 0;
    for (int n = 2; n <= 6; ++n) {
      const auto r = check_operator_monotone(scalar_function(fn), n, 200, 20260101);
      for (const auto& t : r.trials) failures += t.pass ? 0 : 1;
      all.push_back(to_json(r));
    }
    ok = ok && failures == 0;
    d.add(to_string(fn), " failures = ", failures, " of 1000");
  }
  auto control = check_operator_monotone(square_function(), 2, 200, 20260101);
  if (control.summary.pass) control = check_operator_monotone(square_function(), 2, 2000, 20260101);
  all.push_back(to_json(control));
  save(dir, "opmon.json", all);
  d.add("square at n=2 ", control.summary.pass ? "not rejected" : "rejected", " in ",
        control.trials.size(), " trials");
  return ok && !control.summary.pass;
}

bool closure_identities(Detail& d, const Artifacts& dir) {
  const auto r = check_closure_identities(GridSpec::log(1e-3, 1e3, 200), 1e-10);
  save(dir, "closure_identities.json", to_json(r));
  d.add(r.points_checked, " points, worst residual ", r.worst_violation);
  return r.pass;
}

}  // namespace

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "special values";
    case 2: return "density oracle agreement";
    case 3: return "representation residuals";
    case 4: return "sigma selection";
    case 5: return "complete monotonicity";
    case 6: return "degree of H";
    case 7: return "Stieltjes geometric criterion";
    case 8: return "decay limits";
    case 9: return "tail law";
    case 10: return "operator monotonicity";
    case 11: return "closure identities";
    default: return "unknown";
  }
}

CriterionResult run_criterion(int id, const Artifacts& artifacts) {
  using Check = bool (*)(Detail&, const Artifacts&);
  static constexpr Check checks[] = {special_values,        density_oracle,
                                     representation_residuals, sigma_selection,
                                     complete_monotonicity, degree_of_H,
                                     stieltjes_geometric,   decay_limits,
                                     tail_law,              operator_monotonicity,
                                     closure_identities};
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be in [1, 11]");
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  Detail d;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = checks[id - 1](d, artifacts);
  } catch (const std::exception& e) {
    r.pass = false;
    d.add("error: ", e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.detail = d.str();
  return r;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream out;
  out.precision(3);
  out << "criterion " << r.id << " [" << r.title << "]: " << (r.pass ? "PASS" : "FAIL") << " ("
      << std::fixed << r.seconds << "s) " << r.detail;
  return out.str();
}

}  // namespace lnratio
