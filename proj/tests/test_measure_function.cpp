#include "doctest.h"

#include <cmath>

#include "qgls/function.hpp"

using namespace qgls;

TEST_CASE("power-log evaluation at interior points") {
  const FunctionRep f = FunctionRep::power_log({2.0, 0.0});
  CHECK(f.evaluate(0.5) == doctest::Approx(4.0).epsilon(1e-14));  // 0.5^-2
  CHECK(f.evaluate(0.1) == doctest::Approx(100.0).epsilon(1e-12));

  const FunctionRep g = FunctionRep::power_log({2.0, 1.0});
  const double t = -std::log(0.25);
  CHECK(g.evaluate(0.25) == doctest::Approx(16.0 * t).epsilon(1e-13));

  CHECK_THROWS_AS(f.evaluate(0.0), DomainError);
  CHECK_THROWS_AS(f.evaluate(1.0), DomainError);
  CHECK_THROWS_AS(f.evaluate(2.0), DomainError);
}

TEST_CASE("indicator evaluation is 0/1") {
  const FunctionRep f = FunctionRep::indicator({{0.0, 0.25}});
  CHECK(f.evaluate(0.1) == 1.0);
  CHECK(f.evaluate(0.3) == 0.0);
  CHECK(f.evaluate(0.25) == 0.0);  // right-open pieces
}

TEST_CASE("sampled evaluation uses left-closed pieces") {
  const FunctionRep f = FunctionRep::sampled({0.25, 0.75}, {3.0, 7.0});
  CHECK(f.evaluate(0.5) == 3.0);
  CHECK(f.evaluate(0.25) == 3.0);
  CHECK(f.evaluate(0.75) == 7.0);
  CHECK(f.evaluate(0.9) == 7.0);   // last value extends to the domain end
  CHECK(f.evaluate(0.1) == 0.0);   // zero before the first grid point
}

TEST_CASE("tail-defined representations refuse pointwise evaluation") {
  TailFunction::Analytic params;
  params.scale = 1.0;
  params.exponent = 0.5;
  const FunctionRep f = FunctionRep::tail_defined(TailFunction::analytic(params));
  CHECK_THROWS_AS(f.evaluate(0.5), EvaluationUnsupported);
}

TEST_CASE("representation validation") {
  CHECK_THROWS_AS(FunctionRep::sampled({0.5}, {1.0}), DomainError);
  CHECK_THROWS_AS(FunctionRep::sampled({0.5, 0.4}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(FunctionRep::sampled({0.5, 1.5}, {1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(FunctionRep::indicator({{0.3, 0.2}}), DomainError);
  CHECK_THROWS_AS(FunctionRep::indicator({{0.0, 0.5}, {0.4, 0.6}}), DomainError);
  CHECK_THROWS_AS(FunctionRep::power_log({0.5, 0.0}), DomainError);   // Delta <= 1
  CHECK_THROWS_AS(FunctionRep::power_log({2.0, -1.0}), DomainError);  // delta < 0
  CHECK_THROWS_AS(
      MeasureSpace::finite_discrete({1.0, 2.0}, {0.5, 0.0}), DomainError);
}

TEST_CASE("pieces cover the domain") {
  const FunctionRep f = FunctionRep::sampled({0.25, 0.75}, {3.0, 7.0});
  const std::vector<Piece> ps = f.pieces();
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].measure == doctest::Approx(0.5));
  CHECK(ps[0].value == 3.0);
  CHECK(ps[1].measure == doctest::Approx(0.25));
  CHECK(ps[1].value == 7.0);
}

TEST_CASE("piecewise sums are exact") {
  const FunctionRep f = FunctionRep::indicator({{0.0, 0.5}});
  const FunctionRep g = FunctionRep::indicator({{0.25, 1.0}});
  const FunctionRep sum = FunctionRep::piecewise_sum(f, g);
  CHECK(sum.evaluate(0.1) == 1.0);
  CHECK(sum.evaluate(0.3) == 2.0);
  CHECK(sum.evaluate(0.7) == 1.0);
}

TEST_CASE("scaling representations") {
  const FunctionRep f = FunctionRep::indicator({{0.2, 0.4}});
  const FunctionRep g = f.scaled(-3.0);
  CHECK(g.evaluate(0.3) == -3.0);
  CHECK(g.evaluate(0.5) == 0.0);
  CHECK(g.evaluate(0.1) == 0.0);

  const FunctionRep h = FunctionRep::power_log({2.0, 0.0}).scaled(2.0);
  CHECK(h.evaluate(0.5) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("finite discrete spaces") {
  const MeasureSpace space = MeasureSpace::finite_discrete({1.0, 2.0, 5.0},
                                                           {0.5, 0.25, 0.25});
  CHECK(space.total_mass() == doctest::Approx(1.0));
  const FunctionRep f = FunctionRep::sampled({1.0, 2.0, 5.0}, {3.0, 0.0, 1.0}, space);
  CHECK(f.evaluate(1.0) == 3.0);
  CHECK(f.evaluate(5.0) == 1.0);
  const std::vector<Piece> ps = f.pieces();
  REQUIRE(ps.size() == 3);
  CHECK(ps[0].measure == 0.5);
}

TEST_CASE("slow variation: L(ty)/L(y) -> 1 with shrinking deviation") {
  for (double kappa : {0.5, 1.0, 2.0}) {
    const SlowlyVarying L = SlowlyVarying::log_power(kappa);
    double prev = kInf;
    for (double y : {1e40, 1e70, 1e100}) {
      const double dev = std::abs(L(2.0 * y) / L(y) - 1.0);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev <= 0.01);  // 1% at the largest grid point
  }
}
