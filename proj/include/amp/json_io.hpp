#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amp/arrangement.hpp"
#include "amp/cayley.hpp"
#include "amp/error.hpp"
#include "amp/laurent.hpp"
#include "amp/rational.hpp"

namespace amp {

using nlohmann::json;

// Exact values cross the wire as "p/q" strings (or JSON integers); floats are
// rejected for exact fields so nothing silently loses precision.
inline Rat parse_rat(const json& j, const std::string& where) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(j.get<long>()));
  fail("ParseError", where + ": expected a \"p/q\" string or integer");
}

inline double parse_double(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(rat_from_string(j.get<std::string>()));
  fail("ParseError", where + ": expected a number");
}

// Options shared by the CLI subcommands; file values, overridable by flags.
struct RunOptions {
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::vector<double> eps;
  int order = 10;
  double radius = 0.25;
  std::vector<double> z;
  std::optional<std::vector<long>> lift;
};

struct ParsedProblem {
  Problem problem;
  RunOptions options;
};

inline RunOptions parse_options(const json& j) {
  RunOptions o;
  if (!j.is_object()) return o;
  if (j.contains("seed")) {
    require(j["seed"].is_number_integer(), "ParseError", "options.seed: expected an integer");
    o.seed = j["seed"].get<std::uint64_t>();
    o.seed_set = true;
  }
  if (j.contains("eps")) {
    require(j["eps"].is_array(), "ParseError", "options.eps: expected an array");
    for (const auto& e : j["eps"]) o.eps.push_back(parse_double(e, "options.eps"));
  }
  if (j.contains("order")) {
    require(j["order"].is_number_integer(), "ParseError", "options.order: expected an integer");
    o.order = j["order"].get<int>();
  }
  if (j.contains("R")) o.radius = parse_double(j["R"], "options.R");
  if (j.contains("z")) {
    require(j["z"].is_array(), "ParseError", "options.z: expected an array");
    for (const auto& e : j["z"]) o.z.push_back(parse_double(e, "options.z"));
  }
  if (j.contains("lift")) {
    require(j["lift"].is_array(), "ParseError", "options.lift: expected an array");
    std::vector<long> lift;
    for (const auto& e : j["lift"]) {
      require(e.is_number_integer(), "ParseError", "options.lift: expected integers");
      lift.push_back(e.get<long>());
    }
    o.lift = std::move(lift);
  }
  return o;
}

inline ParsedProblem parse_problem(const json& j) {
  require(j.is_object(), "ParseError", "problem: expected a JSON object");
  require(j.contains("n") && j["n"].is_number_integer(), "ParseError",
          "problem.n: expected an integer");
  const int n = j["n"].get<int>();
  require(n >= 1, "ParseError", "problem.n must be at least 1");
  require(j.contains("polys") && j["polys"].is_array() && !j["polys"].empty(), "ParseError",
          "problem.polys: expected a nonempty array");

  ParsedProblem out;
  for (size_t p = 0; p < j["polys"].size(); ++p) {
    const json& jp = j["polys"][p];
    std::string where = "polys[" + std::to_string(p + 1) + "]";
    require(jp.is_object() && jp.contains("terms") && jp["terms"].is_array() &&
                !jp["terms"].empty(),
            "ParseError", where + ".terms: expected a nonempty array");
    out.problem.v.push_back(parse_rat(jp.value("weight", json("1")), where + ".weight"));
    LaurentPoly q(n);
    for (size_t t = 0; t < jp["terms"].size(); ++t) {
      const json& jt = jp["terms"][t];
      std::string tw = where + ".terms[" + std::to_string(t + 1) + "]";
      require(jt.is_object() && jt.contains("exp") && jt["exp"].is_array() &&
                  static_cast<int>(jt["exp"].size()) == n,
              "ParseError", tw + ".exp: expected an array of length n");
      Expo e;
      for (const auto& x : jt["exp"]) {
        require(x.is_number_integer(), "ParseError", tw + ".exp: expected integers");
        e.push_back(x.get<long>());
      }
      q.add_term(e, parse_rat(jt.value("coef", json("1")), tw + ".coef"));
    }
    require(!q.empty(), "ParseError", where + ": terms cancel to the zero polynomial");
    out.problem.qs.push_back(std::move(q));
  }

  require(j.contains("u") && j["u"].is_array() && static_cast<int>(j["u"].size()) == n,
          "ParseError", "problem.u: expected an array of length n");
  for (const auto& x : j["u"]) out.problem.u.push_back(parse_rat(x, "problem.u"));

  out.options = parse_options(j.value("options", json::object()));
  return out;
}

struct ParsedArrangement {
  Arrangement arrangement;
  std::vector<std::vector<int>> basis;  // 0-based after parsing
  RunOptions options;
};

// Hyperplane indices are 1-based on the wire (matching the human-readable
// reports) and 0-based in memory.
inline ParsedArrangement parse_arrangement(const json& j) {
  require(j.is_object(), "ParseError", "arrangement: expected a JSON object");
  require(j.contains("n") && j["n"].is_number_integer(), "ParseError",
          "arrangement.n: expected an integer");
  ParsedArrangement out;
  out.arrangement.n = j["n"].get<int>();
  require(j.contains("hyperplanes") && j["hyperplanes"].is_array(), "ParseError",
          "arrangement.hyperplanes: expected an array");
  for (size_t h = 0; h < j["hyperplanes"].size(); ++h) {
    const json& jh = j["hyperplanes"][h];
    std::string where = "hyperplanes[" + std::to_string(h + 1) + "]";
    require(jh.is_object() && jh.contains("coeffs") && jh["coeffs"].is_array(), "ParseError",
            where + ".coeffs: expected an array");
    Hyperplane hp;
    for (const auto& c : jh["coeffs"]) hp.coeffs.push_back(parse_rat(c, where + ".coeffs"));
    require(jh.contains("alpha"), "ParseError", where + ".alpha: missing");
    hp.alpha = parse_rat(jh["alpha"], where + ".alpha");
    out.arrangement.hyps.push_back(std::move(hp));
  }
  require(j.contains("infinity") && j["infinity"].is_number_integer(), "ParseError",
          "arrangement.infinity: expected a 1-based index");
  out.arrangement.infinity = j["infinity"].get<int>() - 1;
  if (j.contains("basis")) {
    require(j["basis"].is_array(), "ParseError", "arrangement.basis: expected an array");
    for (const auto& jb : j["basis"]) {
      require(jb.is_array(), "ParseError", "arrangement.basis: expected arrays of indices");
      std::vector<int> form;
      for (const auto& x : jb) {
        require(x.is_number_integer(), "ParseError", "arrangement.basis: expected integers");
        form.push_back(x.get<int>() - 1);
      }
      out.basis.push_back(std::move(form));
    }
  }
  out.options = parse_options(j.value("options", json::object()));
  return out;
}

inline json rat_to_json(const Rat& r) { return json(rat_to_string(r)); }

inline json ratvec_to_json(const RatVec& v) {
  json a = json::array();
  for (const Rat& x : v) a.push_back(rat_to_json(x));
  return a;
}

// 0-based simplices in memory, 1-based on the wire.
inline json simplices_to_json(const std::vector<std::vector<int>>& simplices) {
  json a = json::array();
  for (const auto& s : simplices) {
    json row = json::array();
    for (int i : s) row.push_back(i + 1);
    a.push_back(row);
  }
  return a;
}

inline json matrix_to_json(const RatMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace amp
