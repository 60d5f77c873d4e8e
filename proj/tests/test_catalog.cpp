#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kt/catalog.hpp"

using namespace kt;

TEST_CASE("every catalog expectation passes") {
  for (const auto& entry : catalog_entries()) {
    CAPTURE(entry.name);
    MetricLieAlgebra alg = entry.build(entry.default_params);
    AlgebraContext ctx(alg);
    for (const auto& expectation : entry.expectations) {
      CAPTURE(expectation.check);
      CHECK(expectation.run(ctx));
    }
  }
}

TEST_CASE("catalog lookup and parameter parsing") {
  CHECK(build_catalog("abelian(4)").dim() == 4);
  CHECK(build_catalog("milnor(1,1/2,-3)").name() == "milnor(1,1/2,-3)");
  CHECK(build_catalog("milnor").dim() == 3);  // defaults
  CHECK(build_catalog("heisenberg-h3").dim() == 3);
  CHECK_THROWS_AS(build_catalog("no-such-algebra"), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog("milnor(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog("milnor(0,1,1)"), std::invalid_argument);
}

TEST_CASE("solvable4-dimg1 rejects parameters violating Jacobi") {
  CHECK_THROWS_AS(solvable4_dimg1(1, 1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(solvable4_dimg1(0, 0, 0, 0), std::invalid_argument);
}
