#include "lnratio/reports.hpp"

#include <fstream>
#include <stdexcept>

namespace lnratio {

namespace {

Json complex_pair(cplx z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const ResidualReport& r) {
  Json j;
  j["rep"] = std::string(to_string(r.rep));
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json e;
    e["z_re"] = p.z.re();
    e["z_im"] = p.z.im();
    e["lhs_re"] = p.lhs.real();
    e["lhs_im"] = p.lhs.imag();
    e["rhs_re"] = p.rhs.real();
    e["rhs_im"] = p.rhs.imag();
    e["abs_res"] = p.abs_res;
    e["rel_res"] = p.rel_res;
    e["quad_err"] = p.quad_err;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["max_rel_res"] = r.max_rel_res;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["property"] = std::string(to_string(r.property));
  j["fn"] = r.fn;
  j["grid"] = r.grid;
  j["max_order"] = r.max_order;
  j["pass"] = r.pass;
  j["worst_violation"] = r.worst_violation;
  if (r.witness) {
    Json w;
    w["x"] = r.witness->x;
    if (r.property == PropertyKind::STIELTJES_GEOMETRIC) w["y"] = r.witness->y;
    w["k"] = r.witness->k;
    w["value"] = r.witness->value;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const SigmaCalibration& c) {
  Json j;
  j["oracle"] = "-(1/pi) lim Im 1/(z^2 H(z)) at z = -t + i eps";
  j["candidate_a"] = "rho(t)/varrho_paper(t)";
  j["candidate_b"] = "rho(t)/(t g2(t))";
  j["tolerance"] = c.tolerance;
  j["max_dev_a"] = c.max_dev_a;
  j["max_dev_b"] = c.max_dev_b;
  j["a_matches"] = c.a_matches;
  j["b_matches"] = c.b_matches;
  j["decisive"] = c.decisive();
  j["selected"] = std::string(to_string(c.selected));
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    rows.push_back({{"t", c.grid[i]},
                    {"oracle", c.oracle[i]},
                    {"candidate_a", c.candidate_a[i]},
                    {"candidate_b", c.candidate_b[i]}});
  }
  j["grid"] = std::move(rows);
  return j;
}

Json to_json(const DegreeBracket& b) {
  Json j;
  j["fn"] = b.fn;
  Json cands = Json::array();
  for (std::size_t i = 0; i < b.candidates.size(); ++i) {
    cands.push_back({{"alpha", b.candidates[i]}, {"pass", static_cast<bool>(b.candidate_pass[i])}});
  }
  j["candidates"] = std::move(cands);
  j["largest_passing"] = b.largest_passing ? Json(*b.largest_passing) : Json(nullptr);
  j["smallest_failing"] = b.smallest_failing ? Json(*b.smallest_failing) : Json(nullptr);
  j["upper_bound"] = b.upper_bound;
  j["upper_bound_at"] = b.upper_bound_at;
  j["consistent"] = b.consistent;
  j["first_failure"] = b.first_failure ? to_json(*b.first_failure) : Json(nullptr);
  return j;
}

Json to_json(const OperatorMonotoneReport& r) {
  Json j = to_json(r.summary);
  j["seed"] = r.seed;
  j["trials"] = r.trials.size();
  std::size_t failures = 0;
  Json failed = Json::array();
  for (const auto& t : r.trials) {
    if (t.pass) continue;
    ++failures;
    Json e{{"trial", t.index}, {"dim", t.dim}, {"seed", t.seed}, {"clustered", t.clustered},
           {"min_eig", t.min_eig}, {"norm_fB", t.norm_fB}};
    if (!t.error.empty()) e["error"] = t.error;
    failed.push_back(std::move(e));
  }
  j["failures"] = failures;
  j["failed_trials"] = std::move(failed);
  return j;
}

Json to_json(const TruncatedSplit& s) {
  Json j;
  j["rep"] = std::string(to_string(s.rep));
  j["z"] = complex_pair(s.z.value());
  j["combined"] = complex_pair(s.combined);
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.cutoffs.size(); ++i) {
    rows.push_back({{"cutoff", s.cutoffs[i]},
                    {"first_term", complex_pair(s.first_term[i])},
                    {"second_term", complex_pair(s.second_term[i])},
                    {"sum", complex_pair(s.sums[i])},
                    {"distance", s.distances[i]}});
  }
  j["truncations"] = std::move(rows);
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back({{"term", std::string(t.name)},
                     {"full_range_status", std::string(to_string(t.full_range_status))}});
  }
  j["terms"] = std::move(terms);
  j["converging"] = s.converging;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace lnratio
