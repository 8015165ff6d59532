#include "doctest.h"

#include <cmath>
#include <vector>

#include "lowmode/errors.hpp"
#include "lowmode/lattice.hpp"
#include "lowmode/saturation.hpp"
#include "lowmode/trig_poly.hpp"

using namespace lowmode;

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

FrequencyBasis default_basis() { return FrequencyBasis{1.0, kSqrt2}; }

const std::vector<double> kSampleX = {-2.9, -1.7, -0.8, -0.3, 0.0,
                                      0.41, 1.1,  1.9,  2.6};

}  // namespace

TEST_SUITE("saturation") {

TEST_CASE("generator rays are the four unit base harmonics") {
  const auto b = default_basis();
  const auto gens = saturation_generators(b);
  REQUIRE(gens.size() == 4);

  struct Expected {
    LatticeFrequency f;
    double c, s;
  };
  const std::vector<Expected> want = {
      {{1, 0}, 0.0, 1.0},  // sin(l1 x)
      {{1, 0}, 1.0, 0.0},  // cos(l1 x)
      {{0, 1}, 0.0, 1.0},  // sin(l2 x)
      {{0, 1}, 1.0, 0.0},  // cos(l2 x)
  };
  for (std::size_t i = 0; i < want.size(); ++i) {
    REQUIRE(gens[i].terms().size() == 1);
    const auto t = gens[i].coeff(want[i].f);
    CHECK(t.c == doctest::Approx(want[i].c).epsilon(1e-15));
    CHECK(t.s == doctest::Approx(want[i].s).epsilon(1e-15));
  }

  const auto g = make_control_space(b);
  for (const auto& ray : gens) {
    CHECK(ray.supported_in(g));
    CHECK(burgers_bilinear(ray).supported_in(g));
  }
}

TEST_CASE("one span extension step reaches the order-2 shell") {
  const auto b = default_basis();
  const auto gens = saturation_generators(b);
  const auto g = make_control_space(b);

  const auto e1 = convexification_span(gens, g);
  CHECK(e1.contains_all(g));
  CHECK(e1.contains_all(enumerate_lattice(2, b)));
  CHECK(e1.contains({-1, 1}));  // difference tone, absent from the seed space

  const auto e2 = convexification_span(gens, e1);
  CHECK(e2.contains_all(e1));
  CHECK(e2.contains_all(enumerate_lattice(3, b)));
}

TEST_CASE("span extension requires the seed space to hold the rays") {
  const auto b = default_basis();
  const auto gens = saturation_generators(b);
  // Order-1 shell holds the rays but not their quadratic images (2,0), (0,2).
  const auto too_small = enumerate_lattice(1, b);
  CHECK_THROWS_AS(convexification_span(gens, too_small),
                  SaturationPreconditionError);
}

TEST_CASE("ladder step for (2,1) shifts along the first base frequency") {
  const auto b = default_basis();
  const auto id = saturation_decompose({2, 1}, b);
  CHECK(id.lambda == LatticeFrequency{2, 1});
  CHECK(id.shift == LatticeFrequency{1, 0});
  CHECK(id.lambda_prime == LatticeFrequency{1, 1});
  CHECK(id.lambda_dprime == LatticeFrequency{0, 1});
}

TEST_CASE("ladder step for a pure octave uses the same-axis shift") {
  const auto b = default_basis();
  const auto id = saturation_decompose({3, 0}, b);
  CHECK(id.shift == LatticeFrequency{1, 0});
  CHECK(id.lambda_prime == LatticeFrequency{2, 0});
  CHECK(id.lambda_dprime == LatticeFrequency{1, 0});
}

TEST_CASE("identities reproduce the target harmonics pointwise") {
  const auto b = default_basis();
  int covered = 0;
  for (const auto& lambda : enumerate_lattice(4, b).sorted_by_value()) {
    if (lambda.order() < 2) continue;
    try {
      const SaturationIdentity id = saturation_decompose(lambda, b);
      const double lam = lambda.value(b);
      ++covered;
      for (double x : kSampleX) {
        CHECK(id.sin_rhs.evaluate(x) ==
              doctest::Approx(std::sin(lam * x)).epsilon(1e-12));
        CHECK(id.cos_rhs.evaluate(x) ==
              doctest::Approx(std::cos(lam * x)).epsilon(1e-12));
      }
    } catch (const NotDecomposableError&) {
      // inadmissible corner of the shell; covered by the ladder checks
    } catch (const DivisionByZeroError&) {
    }
  }
  CHECK(covered >= 5);  // the order-4 shell offers plenty of admissible targets
}

TEST_CASE("degenerate ladder requests are rejected") {
  const auto b = default_basis();
  CHECK_THROWS_AS(saturation_decompose({0, 0}, b), DivisionByZeroError);
  // Order-1 targets have no shift keeping both reduced orders below 1.
  CHECK_THROWS_AS(saturation_decompose({1, 0}, b), NotDecomposableError);
  CHECK_THROWS_AS(saturation_decompose({0, 1}, b), NotDecomposableError);
}

}  // TEST_SUITE
