#include <doctest.h>

#include <cmath>
#include <vector>

#include "renyi/divergences.hpp"
#include "test_support.hpp"

using namespace renyi;
namespace ts = testing_support;

namespace {

HermitianOperator diag(std::vector<double> v) {
  return HermitianOperator::diagonal(v, Partition({static_cast<int>(v.size())}));
}

// Classical Renyi divergence for commuting arguments.
double classical(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  return std::log2(s) / (alpha - 1.0);
}

}  // namespace

TEST_CASE("region classification") {
  CHECK(AlphaZ(0.5, 0.5).in_dpi_region());
  CHECK(AlphaZ(0.5, 0.5).on_reverse_line());
  CHECK(AlphaZ(2.0, 1.0).on_lower_line());
  CHECK(AlphaZ(2.0, 1.0).in_dpi_region());
  CHECK(AlphaZ(1.0, 7.0).on_umegaki_line());
  CHECK_FALSE(AlphaZ(3.0, 1.0).in_dpi_region());
  CHECK_FALSE(AlphaZ(0.3, 0.5).in_dpi_region());
  CHECK(AlphaZ(0.3, 0.7).in_dpi_region());
  CHECK_FALSE(AlphaZ(1.5, 2.0).in_dpi_region());
  CHECK_THROWS_AS(AlphaZ(0.0, 1.0), InvariantError);
  CHECK_THROWS_AS(AlphaZ(1.0, -1.0), InvariantError);
  CHECK(AlphaZ(2.0, 4.0).beta() == doctest::Approx(-0.25));
}

TEST_CASE("extended reals") {
  CHECK(ExtendedReal::infinity().is_infinite());
  CHECK_THROWS_AS(ExtendedReal(-INFINITY), InvariantError);
  CHECK_THROWS_AS(ExtendedReal(NAN), InvariantError);
}

TEST_CASE("commuting arguments reduce to the classical divergence") {
  const std::vector<double> p{0.5, 0.3, 0.2}, q{0.2, 0.2, 0.6};
  for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {0.7, 0.4}, {2.0, 2.0}, {3.0, 2.5}}) {
    CAPTURE(a);
    CAPTURE(z);
    CHECK(d_alpha_z(diag(p), diag(q), AlphaZ(a, z)).value() == doctest::Approx(classical(p, q, a)).epsilon(1e-12));
  }
}

TEST_CASE("general arguments match the direct oracle") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = random_density(3, 3, 100 + s), sigma = random_density(3, 3, 200 + s);
    for (auto [a, z] : std::vector<std::pair<double, double>>{{0.3, 0.8}, {0.5, 0.5}, {1.5, 1.0}, {2.0, 2.0}}) {
      const AlphaZ p(a, z);
      CHECK(q_alpha_z(rho, sigma, p).value() == doctest::Approx(ts::q_direct(rho.matrix(), sigma.matrix(), a, z)).epsilon(1e-10));
      CHECK(d_alpha_z(rho, sigma, p).value() == doctest::Approx(ts::d_direct(rho.matrix(), sigma.matrix(), a, z)).epsilon(1e-10));
    }
    CHECK(d_alpha_z(rho, sigma, AlphaZ(1.0, 1.0)).value() ==
          doctest::Approx(ts::umegaki_direct(rho.matrix(), sigma.matrix())).epsilon(1e-10));
    CHECK(d_umegaki(rho, sigma).value() == doctest::Approx(ts::umegaki_direct(rho.matrix(), sigma.matrix())).epsilon(1e-10));
  }
}

TEST_CASE("support conventions") {
  const auto ket0 = diag({1.0, 0.0}), ket1 = diag({0.0, 1.0}), mixed = diag({0.5, 0.5});
  CHECK(orthogonal_supports(ket0, ket1));
  CHECK(d_alpha_z(ket0, ket1, AlphaZ(2.0, 2.0)).is_infinite());
  CHECK(d_alpha_z(ket0, ket1, AlphaZ(0.5, 1.0)).is_infinite());
  CHECK(d_alpha_z(mixed, ket0, AlphaZ(2.0, 2.0)).is_infinite());
  // alpha < 1 stays finite without support domination
  CHECK(d_alpha_z(mixed, ket0, AlphaZ(0.5, 1.0)).value() == doctest::Approx(classical({0.5, 0.5}, {1.0, 0.0}, 0.5)));
  CHECK(d_umegaki(mixed, ket0).is_infinite());
  CHECK(d_alpha_z(ket0, mixed, AlphaZ(2.0, 2.0)).value() == doctest::Approx(1.0));
}

TEST_CASE("limiting divergences") {
  const std::vector<double> p{0.6, 0.4, 0.0}, q{0.3, 0.3, 0.4};
  CHECK(d_min(diag(p), diag(q)).value() == doctest::Approx(-std::log2(0.6)));
  CHECK(d_max(diag(p), diag(q)).value() == doctest::Approx(std::log2(2.0)));
  CHECK(d_max(diag({0.5, 0.5}), diag({1.0, 0.0})).is_infinite());
}

TEST_CASE("log-domain power sums survive extreme exponents") {
  RealVector w(3);
  w << 1e-3, 0.5, 0.9;
  const double direct = std::log2(std::pow(1e-3, 3.0) + std::pow(0.5, 3.0) + std::pow(0.9, 3.0));
  CHECK(log2_power_sum(w, 3.0) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(std::isfinite(log2_power_sum(w, 2000.0)));
  CHECK(log2_power_sum(w, 2000.0) == doctest::Approx(2000.0 * std::log2(0.9)).epsilon(1e-12));
}
