#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "lnratio/acceptance.hpp"
#include "lnratio/analysis.hpp"
#include "lnratio/densities.hpp"
#include "lnratio/format.hpp"
#include "lnratio/opmon.hpp"
#include "lnratio/reports.hpp"
#include "lnratio/representations.hpp"

namespace lnratio::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FunctionId function_or_usage(const std::string& name) {
  if (auto fn = parse_function_id(name)) return *fn;
  throw UsageError("unknown function id '" + name + "'");
}

GridSpec grid_or_usage(const std::string& text) {
  try {
    return GridSpec::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void emit_json(const fs::path& path, const Json& j) {
  try {
    write_json(path, j);
  } catch (const std::exception& e) {
    throw OutputError(e.what());
  }
}

void emit_text(const fs::path& path, const std::string& text) {
  try {
    write_text(path, text);
  } catch (const std::exception& e) {
    throw OutputError(e.what());
  }
}

// Accepts "re im" or "re,im" per line; blank lines and lines starting with '#' are skipped.
std::vector<CutPlanePoint> read_points(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read points file " + path.string());
  std::vector<CutPlanePoint> pts;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream s(line);
    double re = 0.0;
    double im = 0.0;
    if (!(s >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
      throw UsageError("malformed points line: " + line);
    }
    s >> im;
    if (!CutPlanePoint::admissible(re, im)) throw UsageError("point on the cut: " + line);
    pts.push_back(CutPlanePoint::make(re, im));
  }
  if (pts.empty()) throw UsageError("points file has no points");
  return pts;
}

JetTarget jet_target_or_usage(const std::string& name) {
  if (name == "levy_density_z2H") return levy_z2H_target();
  if (name == "levy_density_invzH") return levy_invzH_target();
  return jet_target(function_or_usage(name));
}

fs::path sibling_csv(const fs::path& out) {
  fs::path csv = out;
  if (csv.extension() == ".json") {
    csv.replace_extension(".csv");
  } else {
    csv += ".csv";
  }
  return csv;
}

struct Options {
  std::string fn = "H";
  double x = 1.0;
  double im = 0.0;
  std::string grid;
  std::string out;
  std::string rep = "all";
  std::string points;
  std::optional<double> tol;
  int order = 10;
  double alpha = 0.0;
  std::optional<double> eps;
  int dim = 4;
  int trials = 200;
  std::uint64_t seed = 42;
  std::string candidates = "0.5,0.9,1,1.1,1.5";
};

int cmd_eval(const Options& o, std::ostream& out) {
  const FunctionId fn = function_or_usage(o.fn);
  if (!CutPlanePoint::admissible(o.x, o.im)) throw UsageError("point lies on the cut (-inf, 0]");
  const cplx v = eval(fn, CutPlanePoint::make(o.x, o.im));
  out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
  return kPass;
}

int cmd_density(const Options& o) {
  const auto ts = grid_or_usage(o.grid).points();
  emit_text(o.out, densities_csv(ts));
  return kPass;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<RepresentationId> reps;
  if (o.rep == "all") {
    reps = all_representations();
  } else if (auto rep = parse_representation_id(o.rep)) {
    reps.push_back(*rep);
  } else {
    throw UsageError("unknown representation '" + o.rep + "'");
  }
  bool pass = true;
  bool converged = true;
  Json reports = Json::array();
  for (auto rep : reps) {
    const auto pts = o.points.empty() ? default_points(rep) : read_points(o.points);
    const auto r = verify_representation(rep, pts, o.tol.value_or(default_tolerance(rep)));
    pass = pass && r.pass;
    for (const auto& p : r.points) converged = converged && p.status != QuadratureStatus::NotConverged;
    out << to_string(rep) << ": " << (r.pass ? "pass" : "FAIL")
        << " max_rel_res=" << format_double(r.max_rel_res) << '\n';
    reports.push_back(to_json(r));
  }
  if (!o.out.empty()) emit_json(o.out, reports.size() == 1 ? reports[0] : reports);
  if (!converged) return kNumerical;
  return pass ? kPass : kCheckFailed;
}

int cmd_check(const std::string& kind, const Options& o, std::ostream& out) {
  PropertyReport r;
  if (kind == "stieltjes") {
    const StieltjesTarget t = o.eps ? damped_G_target(*o.eps) : stieltjes_target(function_or_usage(o.fn));
    r = check_stieltjes_geometric(t, upper_half_plane_grid(), o.tol.value_or(1e-12));
  } else {
    const GridSpec grid = o.grid.empty() ? GridSpec::log(1e-2, 1e2, 50) : grid_or_usage(o.grid);
    if (o.order < 0 || o.order > kMaxJetOrder) throw UsageError("--order must be in [0, 12]");
    JetTarget f = jet_target_or_usage(o.fn);
    if (o.alpha != 0.0) f = power_times(o.alpha, f);
    const double tol = o.tol.value_or(kDefaultSignTol);
    const auto pts = grid.points();
    const auto label = grid.to_string();
    if (kind == "cm") {
      r = check_cm(f, pts, o.order, tol, label);
    } else if (kind == "lcm") {
      r = check_lcm(f, pts, o.order, tol, label);
    } else {
      if (o.order < 1) throw UsageError("the Bernstein check needs --order >= 1");
      r = check_bernstein(f, pts, o.order, tol, label);
    }
  }
  out << to_string(r.property) << ' ' << r.fn << ": " << (r.pass ? "pass" : "FAIL") << '\n';
  if (!o.out.empty()) emit_json(o.out, to_json(r));
  return r.pass ? kPass : kCheckFailed;
}

int cmd_opmon(const Options& o, std::ostream& out) {
  ScalarFunction fn;
  try {
    fn = parse_scalar_function(o.fn);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (o.dim < 1 || o.dim > kMaxMatrixDim) throw UsageError("--dim must be in [1, 8]");
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  const auto r = check_operator_monotone(fn, o.dim, o.trials, o.seed, o.tol.value_or(kLoewnerTol));
  out << "OPERATOR_MONOTONE " << fn.name << " n=" << o.dim << ": " << (r.summary.pass ? "pass" : "FAIL")
      << '\n';
  if (!o.out.empty()) {
    emit_json(o.out, to_json(r));
    emit_text(sibling_csv(o.out), trials_csv(r));
  }
  return r.summary.pass ? kPass : kCheckFailed;
}

int cmd_degree(const Options& o, std::ostream& out) {
  std::vector<double> cands;
  std::string item;
  std::istringstream list(o.candidates);
  while (std::getline(list, item, ',')) {
    try {
      std::size_t used = 0;
      cands.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad candidate '" + item + "'");
    }
  }
  if (cands.empty()) throw UsageError("--candidates needs at least one value");
  const GridSpec grid = o.grid.empty() ? default_degree_grid() : grid_or_usage(o.grid);
  const auto b = estimate_cm_degree(jet_target_or_usage(o.fn), cands, grid.points(), o.order,
                                    o.tol.value_or(kDefaultSignTol));
  Json j = to_json(b);
  j["grid"] = grid.to_string();
  out << "degree bracket " << b.fn << ": ["
      << (b.largest_passing ? format_double(*b.largest_passing) : "none") << ", "
      << format_double(b.upper_bound) << "]" << (b.consistent ? "" : " inconsistent") << '\n';
  if (!o.out.empty()) emit_json(o.out, j);
  return b.consistent ? kPass : kCheckFailed;
}

int cmd_report_all(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw UsageError("report all needs --out <dir>");
  const fs::path dir = o.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());
  Json summary = Json::array();
  std::string text;
  bool pass = true;
  double total = 0.0;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const auto r = run_criterion(id, dir);
    pass = pass && r.pass;
    total += r.seconds;
    const auto line = format_line(r);
    out << line << '\n' << std::flush;
    text += line + "\n";
    summary.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass},
                       {"seconds", r.seconds}, {"detail", r.detail}});
  }
  emit_json(dir / "summary.json", {{"criteria", summary}, {"pass", pass}, {"total_seconds", total}});
  emit_text(dir / "summary.txt", text);
  return pass ? kPass : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for ln z / ln((1+z^2)/(1+z)) and related functions", "lnratio"};
  app.require_subcommand(1);
  Options o;
  auto positive_tol = CLI::Range(std::numeric_limits<double>::min(), 1e-2);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a function at a point of the cut plane");
  eval_cmd->add_option("--fn", o.fn, "Function id")->required();
  eval_cmd->add_option("--x", o.x, "Real part")->required();
  eval_cmd->add_option("--im", o.im, "Imaginary part");

  auto* density_cmd = app.add_subcommand("density", "Tabulate the densities as CSV");
  density_cmd->add_option("--grid", o.grid, "log:<lo>:<hi>:<count> or lin:<lo>:<hi>:<count>")->required();
  density_cmd->add_option("--out", o.out, "Output CSV path")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check integral representations by quadrature");
  verify_cmd->add_option("--rep", o.rep, "Representation id or 'all'");
  verify_cmd->add_option("--points", o.points, "File with one 're im' point per line");
  verify_cmd->add_option("--tol", o.tol, "Relative tolerance")->check(positive_tol);
  verify_cmd->add_option("--out", o.out, "Output JSON path");

  auto* check_cmd = app.add_subcommand("check", "Run a property check");
  check_cmd->require_subcommand(1);
  for (const char* kind : {"cm", "lcm", "bernstein", "stieltjes"}) {
    auto* sub = check_cmd->add_subcommand(kind, std::string("Check the ") + kind + " property");
    sub->add_option("--fn", o.fn, "Function id (or levy_density_z2H / levy_density_invzH)");
    sub->add_option("--order", o.order, "Highest derivative order (<= 12)");
    sub->add_option("--grid", o.grid, "Grid spec");
    sub->add_option("--tol", o.tol, "Normalized tolerance")->check(positive_tol);
    sub->add_option("--alpha", o.alpha, "Check x^alpha (f - f(inf)) instead of f");
    sub->add_option("--eps", o.eps, "stieltjes only: check zH/(eps zH + 1)");
    sub->add_option("--out", o.out, "Output JSON path");
  }
  auto* opmon_cmd = check_cmd->add_subcommand("opmon", "Randomized Loewner-order trials");
  opmon_cmd->add_option("--fn", o.fn, "Function id or 'square'")->required();
  opmon_cmd->add_option("--dim", o.dim, "Matrix dimension (<= 8)")->required();
  opmon_cmd->add_option("--trials", o.trials, "Number of trials")->required();
  opmon_cmd->add_option("--seed", o.seed, "Random seed")->required();
  opmon_cmd->add_option("--tol", o.tol, "Tolerance relative to norm f(B)")->check(positive_tol);
  opmon_cmd->add_option("--out", o.out, "Report JSON path; trials go to the sibling .csv");

  auto* degree_cmd = app.add_subcommand("degree", "Bracket the completely monotonic degree");
  degree_cmd->add_option("--fn", o.fn, "Function id (or levy_density_z2H / levy_density_invzH)")->required();
  degree_cmd->add_option("--candidates", o.candidates, "Comma-separated exponents")->required();
  degree_cmd->add_option("--grid", o.grid, "Grid spec");
  degree_cmd->add_option("--order", o.order, "Highest derivative order (<= 12)");
  degree_cmd->add_option("--tol", o.tol, "Normalized tolerance")->check(positive_tol);
  degree_cmd->add_option("--out", o.out, "Output JSON path");

  auto* report_cmd = app.add_subcommand("report", "Run the acceptance suite");
  report_cmd->require_subcommand(1);
  auto* report_all = report_cmd->add_subcommand("all", "All acceptance criteria");
  report_all->add_option("--out", o.out, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  }

  try {
    if (*eval_cmd) return cmd_eval(o, out);
    if (*density_cmd) return cmd_density(o);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*check_cmd) {
      for (auto* sub : check_cmd->get_subcommands()) {
        if (sub == opmon_cmd) return cmd_opmon(o, out);
        return cmd_check(sub->get_name(), o, out);
      }
    }
    if (*degree_cmd) return cmd_degree(o, out);
    if (*report_all) return cmd_report_all(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  err << app.help();
  return kUsage;
}

}  // namespace lnratio::cli
