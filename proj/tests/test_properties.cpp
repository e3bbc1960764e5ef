#include <doctest.h>

#include "property_suites.hpp"

namespace ps = property_suites;

TEST_CASE("data processing under partial trace and mixed-unitary channels") {
  const auto r = ps::data_processing();
  CAPTURE(r.worst);
  CHECK(r.failures == 0);
}

TEST_CASE("monotone in the second argument") {
  const auto r = ps::second_argument_monotone();
  CAPTURE(r.worst);
  CHECK(r.failures == 0);
}

TEST_CASE("additive under tensor products") {
  const auto r = ps::tensor_additivity();
  CAPTURE(r.worst);
  CHECK(r.failures == 0);
}

TEST_CASE("generalized inverse algebra") {
  const auto r = ps::generalized_inverse();
  CAPTURE(r.worst);
  CHECK(r.failures == 0);
}

TEST_CASE("partial transpose is an involution") {
  const auto r = ps::partial_transpose_involution();
  CAPTURE(r.worst);
  CHECK(r.failures == 0);
}
