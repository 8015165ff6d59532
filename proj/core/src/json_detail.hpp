#pragma once

// Internal JSON glue shared by the parser and the artifact builders. Not
// installed; keeps the vendored header out of the public API.

#include <json.hpp>

#include "lowmode/harness.hpp"

namespace lowmode::detail {

using nlohmann::json;

inline json jbasis(const FrequencyBasis& b) {
  return json{{"lambda1", b.lambda1}, {"lambda2", b.lambda2}};
}

inline FrequencyBasis parse_basis(const json& j) {
  FrequencyBasis b;
  if (j.contains("lambda1")) b.lambda1 = j.at("lambda1").get<double>();
  if (j.contains("lambda2")) b.lambda2 = j.at("lambda2").get<double>();
  return b;
}

inline json jpoly(const TrigPoly& p) {
  json terms = json::array();
  for (const auto& [f, c] : p.terms())
    terms.push_back(
        json{{"n1", f.n1}, {"n2", f.n2}, {"cos", c.c}, {"sin", c.s}});
  return terms;
}

inline TrigPoly parse_poly(const json& j, const FrequencyBasis& b) {
  TrigPoly p(b);
  for (const auto& t : j) {
    p.add_term(LatticeFrequency{t.at("n1").get<int>(), t.at("n2").get<int>()},
               t.value("cos", 0.0), t.value("sin", 0.0));
  }
  p.canonicalize();
  return p;
}

inline json jgrid(const Grid& g) {
  return json{{"half_length", g.half_length}, {"n", g.n}};
}

inline Grid parse_grid(const json& j, Grid fallback) {
  if (j.contains("half_length"))
    fallback.half_length = j.at("half_length").get<double>();
  if (j.contains("n")) fallback.n = j.at("n").get<int>();
  return fallback;
}

inline json jcheck(const CheckReport& c) {
  return json{{"name", c.name},   {"lhs", c.lhs},
              {"rhs", c.rhs},     {"slack", c.slack},
              {"pass", c.pass},   {"provenance", c.provenance}};
}

inline json jchecks(const std::vector<CheckReport>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(jcheck(c));
  return arr;
}

}  // namespace lowmode::detail
