#include "doctest.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lowmode/csv.hpp"
#include "lowmode/errors.hpp"
#include "lowmode/harness.hpp"
#include "lowmode/io.hpp"
#include "lowmode/lattice.hpp"
#include "lowmode/norms.hpp"
#include "lowmode/rng.hpp"
#include "lowmode/trig_poly.hpp"

using namespace lowmode;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kPi = 3.14159265358979323846;

FrequencyBasis default_basis() { return FrequencyBasis{1.0, kSqrt2}; }

GridFunction sample(const Grid& g, double (*f)(double)) {
  GridFunction u{g, std::vector<double>(g.n)};
  const auto xs = g.nodes();
  for (int i = 0; i < g.n; ++i) u.values[i] = f(xs[i]);
  return u;
}

}  // namespace

TEST_SUITE("harness_io") {

TEST_CASE("check records compare lhs against rhs plus slack and reject NaN") {
  const auto pass = make_check("c", 1.0, 0.9, 0.1, "h");
  CHECK(pass.pass);
  CHECK(pass.name == "c");
  CHECK(pass.lhs == 1.0);
  CHECK(pass.rhs == 0.9);
  CHECK(pass.provenance == "h");

  CHECK_FALSE(make_check("c", 1.0 + 1e-12, 0.9, 0.1, "h").pass);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(make_check("c", nan, 1.0, 0.0, "h").pass);
  CHECK_FALSE(make_check("c", 0.0, nan, 0.0, "h").pass);

  CHECK(all_pass({pass}));
  CHECK_FALSE(all_pass({pass, make_check("d", 2.0, 1.0, 0.0, "h")}));
  CHECK(all_pass({}));
}

TEST_CASE("target scoring reports the windowed distance and the sup bound") {
  Grid g{8.0, 256};  // dx = 1/16, so [-1, 1) is node-aligned
  GridFunction u{g, std::vector<double>(g.n, 0.5)};
  const auto checks = check_targets(u, TrigPoly(default_basis()), 0.1, 1.0, 2.0, "h");
  REQUIRE(checks.size() == 2);
  CHECK(checks[0].name == "terminal-sup-bound");
  CHECK(checks[0].lhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(checks[0].pass);
  CHECK(checks[1].name == "terminal-l2-error");
  // constant 0.5 over a width-2 window: sqrt(0.25 * 2) exactly on this grid
  CHECK(checks[1].lhs == doctest::Approx(0.70710678118654752).epsilon(1e-13));
  CHECK_FALSE(checks[1].pass);
}

TEST_CASE("interval norms reproduce closed-form integrals of sin") {
  Grid g{kPi, 256};
  const auto u = sample(g, [](double x) { return std::sin(x); });

  // sqrt(pi), sqrt(pi/2), sqrt(2 pi): exact for a full-period tone.
  CHECK(l2_interval(u, -kPi, kPi) ==
        doctest::Approx(1.7724538509055160273).epsilon(1e-13));
  CHECK(l2_interval(u, 0.0, kPi) ==
        doctest::Approx(1.2533141373155002512).epsilon(1e-13));
  CHECK(hs_interval(u, 1, -kPi, kPi) ==
        doctest::Approx(2.5066282746310005024).epsilon(1e-13));
  CHECK(sup_norm(u.values) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(l2_interval(u, -4.0, 4.0), IntervalOutOfWindowError);

  // Exponentially weighted distance, centre 0: continuum value 0.8748879...
  CHECK(weighted_l2(u, 0.0) ==
        doctest::Approx(0.87488791590064964171).epsilon(2e-3));
  CHECK(weighted_l2(u, 0.0) <= l2_interval(u, -kPi, kPi));
}

TEST_CASE("uniformly local norms scan node-aligned unit windows") {
  Grid g{8.0, 256};
  const auto gauss = sample(g, [](double x) { return std::exp(-x * x); });
  // Best window [-1/2, 1/2): sqrt(int exp(-2 x^2)) = 0.9249996712...
  CHECK(hs_ul(gauss, 0) ==
        doctest::Approx(0.92499967129299500264).epsilon(5e-3));

  const auto tone = sample(g, [](double x) { return std::sin(kPi * x / 4.0); });
  // Best window [3/2, 5/2) around the crest; order 1 adds the derivative.
  CHECK(hs_ul(tone, 1) ==
        doctest::Approx(0.99040552905246727584).epsilon(5e-3));
  CHECK(hs_ul(tone, 1) >= hs_ul(tone, 0));
  CHECK(hs_ul(tone, 0) <= l2_interval(tone, -8.0, 8.0));

  // Dispatch through the tagged norm spec agrees with the direct calls.
  CHECK(norm_value(gauss, NormSpec::hs_ul(0)) == hs_ul(gauss, 0));
  CHECK(norm_value(tone, NormSpec::l2(-8.0, 8.0)) ==
        l2_interval(tone, -8.0, 8.0));
  CHECK(norm_name(NormSpec::sup()) != norm_name(NormSpec::hs_ul(1)));

  GridTrajectory traj;
  traj.grid = g;
  traj.times = {0.0, 1.0};
  traj.states = {std::vector<double>(g.n, 0.5), std::vector<double>(g.n, 0.25)};
  CHECK(trajectory_max_norm(traj, NormSpec::sup()) == doctest::Approx(0.5));
}

TEST_CASE("csv output is RFC 4180 with full-precision numbers") {
  CsvBuilder csv;
  csv.row({"plain", "with,comma", "with\"quote", "with\r\nnewline"});
  csv.row({CsvBuilder::num(0.1), CsvBuilder::num(1.0), CsvBuilder::num(42LL)});
  const std::string expect =
      "plain,\"with,comma\",\"with\"\"quote\",\"with\r\nnewline\"\r\n"
      "0.10000000000000001,1,42\r\n";
  CHECK(csv.str() == expect);
}

TEST_CASE("counter generator reproduces its frozen draws in any order") {
  CounterRng rng(42);
  // Draw out of order first: each draw is a pure function of (seed, counter).
  CHECK(rng.bits(2) == 0x47526757130f9f52ull);
  CHECK(rng.bits(0) == 0xbdd732262feb6e95ull);
  CHECK(rng.bits(1) == 0x28efe333b266f103ull);
  CHECK(rng.uniform01(0) == doctest::Approx(0.7415648787718233).epsilon(1e-15));
  CHECK(rng.uniform01(1) == doctest::Approx(0.1599103928769201).epsilon(1e-15));

  CounterRng seeded(0x5EED);
  CHECK(seeded.bits(0) == 0x09f1fd9d03f0a9b4ull);

  for (std::uint64_t c = 0; c < 64; ++c) {
    const double u = rng.uniform01(c);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double s = rng.symmetric(c);
    CHECK(s == doctest::Approx(2.0 * u - 1.0).epsilon(1e-15));
  }
}

TEST_CASE("experiment specs parse, reserialize canonically, and hash stably") {
  const std::string text = R"({
    "kind": "simulate",
    "basis": {"lambda1": 1.0, "lambda2": 1.4142135623730951},
    "grid": {"half_length": 3.141592653589793, "n": 64},
    "solver": {"mu": 0.25, "dt": 0.01, "t_final": 0.5, "snapshot_stride": 8},
    "u0": [{"n1": 1, "n2": 0, "sin": 0.1}],
    "compare_cole_hopf": false
  })";
  const auto spec = parse_experiment(text);
  CHECK(spec.kind == "simulate");
  CHECK(spec.grid.n == 64);
  CHECK(spec.mu == doctest::Approx(0.25));
  CHECK(spec.dt == doctest::Approx(0.01));
  CHECK(spec.t_final == doctest::Approx(0.5));
  CHECK(spec.snapshot_stride == 8);
  CHECK_FALSE(spec.compare_cole_hopf);

  // Canonical serialization is a fixpoint of parse -> serialize.
  const auto canon = experiment_to_json(spec);
  const auto respec = parse_experiment(canon);
  CHECK(experiment_to_json(respec) == canon);

  const auto hash = config_hash(spec);
  CHECK(hash.size() == 16);
  CHECK(std::all_of(hash.begin(), hash.end(), [](char c) {
    return std::isxdigit(static_cast<unsigned char>(c));
  }));

  auto other = spec;
  other.mu = 0.26;
  CHECK(config_hash(other) != hash);
  CHECK(config_hash(spec) == hash);  // hashing is a pure function

  CHECK_THROWS_AS(parse_experiment("{not json"), ConfigParseError);
  CHECK_THROWS_AS(parse_experiment(R"({"kind": "unheard-of"})"),
                  ConfigParseError);
  CHECK_THROWS_AS(parse_experiment(R"({"basis": {}})"), ConfigParseError);
}

TEST_CASE("runs are deterministic down to artifact bytes") {
  const std::string text = R"({
    "kind": "locality_study",
    "basis": {"lambda1": 1.0, "lambda2": 0.625},
    "seed": 24301,
    "locality": {
      "grid": {"half_length": 25.132741228718345, "n": 256},
      "mu": 0.5, "dt": 0.004, "t_final": 0.5,
      "rho_list": [3.141592653589793, 6.283185307179586],
      "r": 1.0, "amplitude": 1.0, "delta": 0.001
    }
  })";
  const auto spec = parse_experiment(text);
  const auto first = run(spec);
  const auto second = run(spec);

  CHECK(first.pass);
  REQUIRE(first.artifacts.size() == second.artifacts.size());
  CHECK(first.artifacts.size() >= 2);  // a csv table and a json report
  for (std::size_t i = 0; i < first.artifacts.size(); ++i) {
    CHECK(first.artifacts[i].filename == second.artifacts[i].filename);
    CHECK(first.artifacts[i].content == second.artifacts[i].content);
  }

  bool has_csv = false, has_json = false;
  for (const auto& a : first.artifacts) {
    if (a.filename.size() > 4 &&
        a.filename.substr(a.filename.size() - 4) == ".csv") {
      has_csv = true;
      // RFC 4180 line endings throughout.
      CHECK(a.content.find("\r\n") != std::string::npos);
    }
    if (a.filename.size() > 5 &&
        a.filename.substr(a.filename.size() - 5) == ".json")
      has_json = true;
  }
  CHECK(has_csv);
  CHECK(has_json);
}

TEST_CASE("algebraic battery: ladder, identities, and density gap") {
  const auto b = default_basis();

  const auto ladder = span_ladder_checks(b, 5, "h");
  CHECK(ladder.size() >= 5);
  for (const auto& c : ladder) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }

  const auto ids = identity_residual_checks(b, 6, 1e-12, "h");
  CHECK(!ids.empty());
  for (const auto& c : ids) {
    CAPTURE(c.name);
    CHECK(c.pass);
    if (c.name.find("residual") != std::string::npos) CHECK(c.lhs <= 1e-12);
  }

  // Max spacing of order-30 frequencies in [0, 5] is 5 sqrt(2) - 7.
  const auto gap = lattice_gap_check(b, 30, 5.0, 0.1, "h");
  CHECK(gap.pass);
  CHECK(gap.lhs == doctest::Approx(0.071067811865475244).epsilon(1e-12));
}

}  // TEST_SUITE
