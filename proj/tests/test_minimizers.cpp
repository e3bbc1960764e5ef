#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "renyi/certificates.hpp"
#include "renyi/minimizers.hpp"
#include "renyi/state_catalog.hpp"
#include "test_support.hpp"

using namespace renyi;
namespace ts = testing_support;

TEST_CASE("simplex projection") {
  const auto p = project_to_simplex({0.5, 0.5, 0.5});
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
  const auto q = project_to_simplex({2.0, -1.0, 0.0});
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(q[1] == 0.0);
  const auto r = project_to_simplex({0.3, 0.1, 0.6});
  CHECK(r[0] == doctest::Approx(0.3));
  CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("projected gradient on a quadratic with an interior and a boundary optimum") {
  const std::vector<double> target{0.2, 0.5, 0.3};
  SimplexProblem prob{[&](const std::vector<double>& x) {
                        double s = 0;
                        for (int i = 0; i < 3; ++i) s += (x[i] - target[i]) * (x[i] - target[i]);
                        return s;
                      },
                      3};
  const auto res = minimize_simplex(prob, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  for (int i = 0; i < 3; ++i) CHECK(res.point[i] == doctest::Approx(target[i]).epsilon(1e-6));

  const std::vector<double> outside{0.9, 0.6, -0.5};
  prob.objective = [&](const std::vector<double>& x) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += (x[i] - outside[i]) * (x[i] - outside[i]);
    return s;
  };
  const auto b = minimize_simplex(prob, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(b.point[0] == doctest::Approx(0.65).epsilon(1e-6));
  CHECK(b.point[1] == doctest::Approx(0.35).epsilon(1e-6));
  CHECK(b.point[2] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("golden section") {
  const auto [x, fx] = golden_section_1d([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, 0.0, 1.0);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(fx == doctest::Approx(1.0));
  const auto [e, fe] = golden_section_1d([](double t) { return t; }, 0.0, 1.0);
  CHECK(e == doctest::Approx(0.0));
  CHECK(fe == doctest::Approx(0.0));
}

TEST_CASE("relative entropy of coherence of a pure state") {
  // D(rho || Delta(rho)) = H(diag rho) for alpha = z = 1
  const Vector v = random_unit_vector(3, 12);
  const DensityMatrix rho(HermitianOperator::projector(v, Partition({3})));
  std::vector<double> diag(3);
  for (int i = 0; i < 3; ++i) diag[i] = std::norm(v(i));
  const auto res = minimize_incoherent(rho, Matrix(), AlphaZ(1.0, 1.0));
  CHECK(res.value == doctest::Approx(alpha_entropy(diag, 1.0)).epsilon(1e-7));
  for (int i = 0; i < 3; ++i) CHECK(res.weights[i] == doctest::Approx(diag[i]).epsilon(1e-5));
}

TEST_CASE("incoherent optimum is certified") {
  for (auto [a, z] : std::vector<std::pair<double, double>>{{0.7, 0.7}, {1.0, 1.0}, {2.0, 2.0}}) {
    const auto rho = random_density(3, 3, 31);
    const AlphaZ p(a, z);
    const auto res = minimize_incoherent(rho, Matrix(), p);
    const auto rep = certify_optimizer(rho, res.sigma, p, FreeSet::incoherent());
    CAPTURE(a);
    CHECK(rep.verdict == Verdict::CertifiedOptimal);
    CHECK(*rep.value == doctest::Approx(res.value).epsilon(1e-10));
  }
}

TEST_CASE("incoherent problem in a rotated basis") {
  const auto rho = random_density(3, 3, 8);
  const Matrix u = random_unitary(3, 9);
  const DensityMatrix rotated(rho.op().conjugate_by(u));
  const AlphaZ p(2.0, 2.0);
  const double plain = minimize_incoherent(rho, Matrix(), p).value;
  CHECK(minimize_incoherent(rotated, u, p).value == doctest::Approx(plain).epsilon(1e-7));
}

TEST_CASE("maximally correlated optimum meets its marginal condition") {
  const auto rho = build(parse_family("mc:seed=4,d=3"));
  for (auto [a, z] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 1.0}, {2.0, 2.0}}) {
    const AlphaZ p(a, z);
    const auto res = minimize_mc(rho, p);
    CAPTURE(a);
    CHECK(marginal_condition_mc(rho, res.sigma, p).verdict == Verdict::CertifiedOptimal);
    CHECK(res.value == doctest::Approx(-conditional_entropy_mc(rho, p)).epsilon(1e-6));
  }
}

TEST_CASE("maximally correlated minimum for a Bell-diagonal MC state") {
  const StateFamily f = MCBD{{0.5, 0.3, 0.2}};
  const AlphaZ p(2.0, 2.0);
  CHECK(minimize_mc(build(f), p).value == doctest::Approx(closed_form_value(f, p).value()).epsilon(1e-7));
}
