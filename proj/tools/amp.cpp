// Command-line front-end: every subcommand reads one JSON document (file
// argument or standard input), runs the requested pipelines, and emits one
// JSON report on standard output.  Exit codes: 0 success/agreement, 2 bad
// input or violated precondition, 3 cross-pipeline disagreement or failed
// verification, 4 internal fault.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amp/amplitude.hpp"
#include "amp/arrangement.hpp"
#include "amp/cayley.hpp"
#include "amp/critpoints.hpp"
#include "amp/error.hpp"
#include "amp/gamma_series.hpp"
#include "amp/json_io.hpp"
#include "amp/polytope.hpp"
#include "amp/quadrature.hpp"
#include "amp/triangulate.hpp"

namespace {

using amp::json;
using amp::Rat;
using amp::RatVec;

struct Flags {
  std::string file;
  std::string eps;
  std::string pipelines;
  std::string lift;
  long long seed = -1;
  int order = -1;
  double radius = 0.0;
  bool pretty = false;
};

json read_input(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) amp::fail("ParseError", "cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) amp::fail("ParseError", "input is not valid JSON");
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_flag_double(const std::string& tok, const char* flag) {
  try {
    size_t used = 0;
    double x = std::stod(tok, &used);
    amp::require(used == tok.size(), "ParseError", std::string(flag) + ": bad number " + tok);
    return x;
  } catch (const std::logic_error&) {
    amp::fail("ParseError", std::string(flag) + ": bad number " + tok);
  }
}

long parse_flag_long(const std::string& tok, const char* flag) {
  try {
    size_t used = 0;
    long x = std::stol(tok, &used);
    amp::require(used == tok.size(), "ParseError", std::string(flag) + ": bad integer " + tok);
    return x;
  } catch (const std::logic_error&) {
    amp::fail("ParseError", std::string(flag) + ": bad integer " + tok);
  }
}

amp::RunOptions merge_options(amp::RunOptions o, const Flags& f) {
  if (f.seed >= 0) {
    o.seed = static_cast<std::uint64_t>(f.seed);
    o.seed_set = true;
  }
  if (!f.eps.empty()) {
    o.eps.clear();
    for (const std::string& tok : split_list(f.eps))
      o.eps.push_back(parse_flag_double(tok, "--eps"));
  }
  if (f.order >= 0) o.order = f.order;
  if (f.radius > 0.0) o.radius = f.radius;
  if (!f.lift.empty()) {
    std::vector<long> lift;
    for (const std::string& tok : split_list(f.lift))
      lift.push_back(parse_flag_long(tok, "--lift"));
    o.lift = std::move(lift);
  }
  return o;
}

amp::Triangulation make_triangulation(const amp::Configuration& c,
                                      const amp::RunOptions& o) {
  if (o.lift) return amp::regular_triangulation(c, *o.lift);
  return amp::random_regular_triangulation(c, o.seed);
}

void print_pretty(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  for (const auto& [key, val] : j.items()) {
    if (val.is_object()) {
      os << pad << key << ":\n";
      print_pretty(val, os, indent + 2);
    } else {
      os << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
         << "\n";
    }
  }
}

int emit(const json& report, bool pretty, int code) {
  if (pretty)
    print_pretty(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return code;
}

json quad_report_json(const amp::QuadratureReport& rep) {
  json j;
  j["epsilon_schedule"] = rep.epsilon_schedule;
  j["values"] = rep.values;
  j["extrapolated"] = rep.extrapolated;
  j["error_estimate"] = rep.error_estimate;
  j["evaluations"] = rep.evaluations;
  return j;
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

double rel_against(double value, double reference) {
  double denom = std::fabs(reference) > 0.0 ? std::fabs(reference) : 1.0;
  return std::fabs(value - reference) / denom;
}

int cmd_amplitude(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  const auto& [qs, v, u] = pp.problem;
  const int n = qs.front().dim;

  std::vector<std::string> ps = split_list(
      f.pipelines.empty() ? std::string("triangulation,dual_volume,grothendieck")
                          : f.pipelines);
  auto wants = [&](const std::string& name) {
    return std::find(ps.begin(), ps.end(), name) != ps.end();
  };

  // Uniform boundary diagnosis before any pipeline runs.
  {
    std::vector<amp::Polytope> parts;
    for (const auto& q : qs) parts.push_back(amp::newton_polytope(q));
    amp::Polytope P = amp::weighted_minkowski(parts, v);
    amp::require(amp::contains_interior(P, u), "NotInterior",
                 "u must lie in the interior of the weighted Newton polytope");
  }
  amp::CayleyConfig cfg = amp::build_cayley(qs);
  RatVec delta = amp::assemble_delta(v, u);

  json pipes = json::object();
  json provenance = json::object();
  provenance["seed"] = opt.seed;
  std::optional<Rat> exact;
  bool agreement = true;

  if (wants("triangulation")) {
    amp::Triangulation tri = make_triangulation(cfg.config, opt);
    amp::AmplitudeResult res = amp::amplitude_triangulation(cfg, delta, tri);
    json p;
    p["exact"] = amp::rat_to_string(res.value);
    p["float"] = amp::to_double(res.value);
    p["simplices"] = amp::simplices_to_json(tri.simplices);
    p["lift"] = tri.lift;
    p["normalized_volume"] = amp::rat_to_string(Rat(amp::volume_check(tri)));
    pipes["triangulation"] = p;
    provenance["lift"] = tri.lift;
    exact = res.value;
  }
  if (wants("dual_volume")) {
    amp::AmplitudeResult res = amp::amplitude_dual_volume(qs, v, u);
    pipes["dual_volume"] = {{"exact", amp::rat_to_string(res.value)},
                            {"float", amp::to_double(res.value)}};
    if (exact && *exact != res.value) agreement = false;
    if (!exact) exact = res.value;
  }
  if (wants("grothendieck") && n <= 2) {
    Rat reference = exact ? *exact : amp::amplitude_dual_volume(qs, v, u).value;
    if (!exact) exact = reference;
    amp::LogLikelihood L(qs, v, u);
    std::vector<amp::CriticalPoint> pts =
        amp::solve_critical_certified(L, reference, opt.seed);
    amp::Cplx s = amp::stationary_sum(L, pts);
    double rel = rel_against(s.real(), amp::to_double(reference));
    json p;
    p["float"] = s.real();
    p["imag"] = s.imag();
    p["points"] = static_cast<int>(pts.size());
    p["expected"] = amp::rat_to_string(Rat(amp::expected_critical_count(L)));
    p["rel_err"] = rel;
    pipes["grothendieck"] = p;
    if (rel > 1e-6) agreement = false;
  }
  if (wants("quadrature") && n <= 3) {
    Rat reference = exact ? *exact : amp::amplitude_dual_volume(qs, v, u).value;
    if (!exact) exact = reference;
    std::vector<double> schedule =
        opt.eps.empty() ? std::vector<double>{0.1, 0.05, 0.025} : opt.eps;
    amp::QuadOptions qo;
    qo.seed = opt.seed;
    amp::QuadratureReport rep = amp::extrapolate_amplitude(qs, v, u, schedule, qo);
    json p = quad_report_json(rep);
    double rel = rel_against(rep.extrapolated, amp::to_double(reference));
    p["rel_err"] = rel;
    pipes["quadrature"] = p;
    if (rel > 1e-2) agreement = false;
  }
  amp::require(exact.has_value(), "ParseError", "no pipeline selected");

  json report;
  report["exact"] = amp::rat_to_string(*exact);
  report["float"] = amp::to_double(*exact);
  report["pipelines"] = pipes;
  report["agreement"] = agreement;
  report["provenance"] = provenance;
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, agreement ? 0 : 3);
}

int cmd_dual_volume(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  const auto& [qs, v, u] = pp.problem;
  amp::AmplitudeResult res = amp::amplitude_dual_volume(qs, v, u);
  json report;
  report["exact"] = amp::rat_to_string(res.value);
  report["float"] = amp::to_double(res.value);
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, 0);
}

int cmd_triangulate(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  amp::CayleyConfig cfg = amp::build_cayley(pp.problem.qs);
  amp::Triangulation tri = make_triangulation(cfg.config, opt);
  json report;
  report["simplices"] = amp::simplices_to_json(tri.simplices);
  report["lift"] = tri.lift;
  json dets = json::array();
  for (const auto& sigma : tri.simplices) {
    amp::Int d = amp::det_int(cfg.config.submatrix(sigma));
    dets.push_back(amp::rat_to_string(Rat(abs(d))));
  }
  report["dets"] = dets;
  report["normalized_volume"] = amp::rat_to_string(Rat(amp::volume_check(tri)));
  report["provenance"] = {{"seed", opt.seed}};
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, 0);
}

int cmd_crit(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  const auto& [qs, v, u] = pp.problem;
  Rat exact = amp::amplitude_dual_volume(qs, v, u).value;
  amp::LogLikelihood L(qs, v, u);
  std::vector<amp::CriticalPoint> pts = amp::solve_critical_certified(L, exact, opt.seed);
  amp::Cplx s = amp::stationary_sum(L, pts);
  json report;
  json points = json::array();
  for (const auto& p : pts) {
    json jp;
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back({c.real(), c.imag()});
    jp["coords"] = coords;
    jp["hessian_det"] = {p.hessian_det.real(), p.hessian_det.imag()};
    jp["residual"] = p.newton_residual;
    points.push_back(jp);
  }
  report["points"] = points;
  report["count"] = static_cast<int>(pts.size());
  report["expected"] = amp::rat_to_string(Rat(amp::expected_critical_count(L)));
  report["stationary_sum"] = {s.real(), s.imag()};
  report["exact"] = amp::rat_to_string(exact);
  report["rel_err"] = rel_against(s.real(), amp::to_double(exact));
  report["provenance"] = {{"seed", opt.seed}};
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, 0);
}

int cmd_arrangement(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedArrangement pa = amp::parse_arrangement(read_input(f.file));
  std::vector<std::vector<int>> basis = pa.basis;
  if (basis.empty()) {
    amp::require(pa.arrangement.n == 1, "ParseError",
                 "arrangement.basis is required for n > 1");
    for (int h = 0; h < static_cast<int>(pa.arrangement.hyps.size()); ++h)
      if (h != pa.arrangement.infinity) basis.push_back({h});
  }
  std::vector<amp::ArrVertex> vertices = amp::arrangement_vertices(pa.arrangement);
  amp::RatMat m = amp::intersection_matrix(pa.arrangement, basis);
  json report;
  report["matrix"] = amp::matrix_to_json(m);
  json verts = json::array();
  for (const auto& vx : vertices) {
    json jv;
    json subset = json::array();
    for (int h : vx.subset) subset.push_back(h + 1);
    jv["subset"] = subset;
    json pt = json::array();
    for (const auto& c : vx.point) pt.push_back(amp::rat_to_string(Rat(c)));
    jv["point"] = pt;
    verts.push_back(jv);
  }
  report["vertices"] = verts;
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, 0);
}

int cmd_stringy(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  const auto& [qs, v, u] = pp.problem;
  std::vector<double> schedule =
      opt.eps.empty() ? std::vector<double>{0.1, 0.05, 0.025} : opt.eps;
  amp::QuadOptions qo;
  qo.seed = opt.seed;
  amp::QuadratureReport rep = amp::extrapolate_amplitude(qs, v, u, schedule, qo);
  Rat exact = amp::amplitude_dual_volume(qs, v, u).value;
  double rel = rel_against(rep.extrapolated, amp::to_double(exact));
  json report = quad_report_json(rep);
  report["exact"] = amp::rat_to_string(exact);
  report["rel_err"] = rel;
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, rel <= 1e-2 ? 0 : 3);
}

int cmd_exp_volume(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  amp::require(pp.problem.qs.size() == 1, "ParseError",
               "exponential volume expects exactly one polynomial");
  const amp::LaurentPoly& p = pp.problem.qs.front();
  const RatVec& X = pp.problem.u;

  // Exact limit oracle: e^{-constant term} times the dual-cone volume at X.
  Rat c0 = 0;
  std::vector<amp::IntVec> cone_cols;
  for (const auto& [e, c] : p.terms) {
    bool zero = true;
    for (long x : e) zero = zero && x == 0;
    if (zero)
      c0 = c;
    else
      cone_cols.emplace_back(e.begin(), e.end());
  }
  amp::require(!cone_cols.empty(), "NotPointed", "no nonconstant exponents: cone is trivial");
  amp::Configuration cone_cfg(p.dim, cone_cols);
  amp::Triangulation tri = amp::random_regular_triangulation(cone_cfg, opt.seed);
  Rat cone_volume = amp::dual_cone_volume(tri, X);
  double expected = std::exp(-amp::to_double(c0)) * amp::to_double(cone_volume);

  std::vector<double> schedule =
      opt.eps.empty() ? std::vector<double>{0.2, 0.1, 0.05} : opt.eps;
  amp::QuadOptions qo;
  qo.seed = opt.seed;
  amp::QuadratureReport rep = amp::extrapolate_exponential(p, X, schedule, qo);
  double rel = rel_against(rep.extrapolated, expected);

  json report = quad_report_json(rep);
  report["expected_limit"] = expected;
  report["exact_cone_volume"] = amp::rat_to_string(cone_volume);
  report["rel_err"] = rel;
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, rel <= 1e-2 ? 0 : 3);
}

int cmd_gamma_series(const Flags& f) {
  auto t0 = std::chrono::steady_clock::now();
  amp::ParsedProblem pp = amp::parse_problem(read_input(f.file));
  amp::RunOptions opt = merge_options(pp.options, f);
  const auto& [qs, v, u] = pp.problem;
  amp::CayleyConfig cfg = amp::build_cayley(qs);
  amp::require(static_cast<int>(opt.z.size()) == cfg.config.count(), "ParseError",
               "options.z must list one value per Cayley column");
  std::vector<amp::Cplx> z;
  for (double x : opt.z) z.emplace_back(x, 0.0);
  amp::Triangulation tri = make_triangulation(cfg.config, opt);
  amp::GhmResult res =
      amp::ghm_identity_check(qs, v, u, z, tri, opt.order, opt.radius);
  json report;
  report["lhs"] = amp::rat_to_string(res.lhs);
  report["rhs_re"] = res.rhs.real();
  report["rhs_im"] = res.rhs.imag();
  report["rel_err"] = res.rel_err;
  report["order"] = opt.order;
  report["R"] = opt.radius;
  report["provenance"] = {{"seed", opt.seed}};
  report["timings"] = {{"total_ms", elapsed_ms(t0)}};
  return emit(report, f.pretty, 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stringy-integral amplitude and intersection-number toolkit"};
  app.require_subcommand(1);

  Flags f;
  std::string cmd;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", f.file, "input JSON file (default: standard input)");
    sub->add_option("--seed", f.seed, "random seed for lifts and solvers");
    sub->add_option("--eps", f.eps, "comma-separated epsilon/alpha schedule");
    sub->add_option("--order", f.order, "series truncation order");
    sub->add_option("--lift", f.lift, "comma-separated integer lift (forces triangulation)");
    sub->add_option("--radius", f.radius, "series domain radius R");
    sub->add_flag("--pretty", f.pretty, "human-readable output");
  };
  for (const char* name : {"amplitude", "dual-volume", "triangulate", "crit", "arrangement",
                           "stringy", "exp-volume", "gamma-series"}) {
    CLI::App* sub = app.add_subcommand(name, "");
    add_common(sub);
    if (std::string(name) == "amplitude")
      sub->add_option("--pipelines", f.pipelines,
                      "comma list: triangulation,dual_volume,grothendieck,quadrature");
    sub->callback([&cmd, name] { cmd = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd == "amplitude") return cmd_amplitude(f);
    if (cmd == "dual-volume") return cmd_dual_volume(f);
    if (cmd == "triangulate") return cmd_triangulate(f);
    if (cmd == "crit") return cmd_crit(f);
    if (cmd == "arrangement") return cmd_arrangement(f);
    if (cmd == "stringy") return cmd_stringy(f);
    if (cmd == "exp-volume") return cmd_exp_volume(f);
    if (cmd == "gamma-series") return cmd_gamma_series(f);
    std::cerr << "unknown subcommand\n";
    return 4;
  } catch (const amp::Error& e) {
    json err;
    err["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return e.kind() == "IncompleteRootSet" ? 3 : 2;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"kind", "Internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 4;
  }
}
