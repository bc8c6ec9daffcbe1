#include <doctest.h>

#include <cmath>

#include "cmbvs/special_functions.hpp"

using cmbvs::digamma;

TEST_CASE("digamma matches reference values") {
  // mpmath, 30 digits
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214234794).epsilon(1e-13));
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015328606).epsilon(1e-13));
  CHECK(digamma(3.7) == doctest::Approx(1.1671535393615114409).epsilon(1e-13));
  CHECK(digamma(42.123) == doctest::Approx(3.7286769470527747990).epsilon(1e-13));
  CHECK(digamma(0.05) == doctest::Approx(-20.497844991299869257).epsilon(1e-13));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
  for (double x : {0.1, 0.9, 2.5, 7.99, 123.4}) {
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(digamma(0.0), cmbvs::DomainError);
  CHECK_THROWS_AS(digamma(-1.5), cmbvs::DomainError);
}
