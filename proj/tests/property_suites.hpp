#pragma once

// Seeded property checks shared by the unit suite and the acceptance binary.
// Each suite returns the number of failing instances out of `instances`.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "renyi/divergences.hpp"
#include "test_support.hpp"

namespace property_suites {

using namespace renyi;
namespace ts = testing_support;

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation seen; negative means every instance had slack
};

inline constexpr int kInstances = 100;
inline constexpr double kPropertyTol = 1e-9;

// D(Phi(rho) || Phi(sigma)) <= D(rho || sigma) for partial trace and for a random
// mixed-unitary channel, at random points of the region.
inline SuiteResult data_processing(std::uint64_t seed0 = 1000) {
  SuiteResult r{"data processing", kInstances};
  r.worst = -std::numeric_limits<double>::infinity();
  ts::Draw draw(seed0);
  for (int i = 0; i < kInstances; ++i) {
    const auto [a, z] = ts::random_dpi_point(draw);
    const AlphaZ p(a, z);
    const Partition part({2, 2});
    const auto rho = ts::mixed_full_rank(part, 0.05, seed0 + 2 * i);
    const auto sigma = ts::mixed_full_rank(part, 0.05, seed0 + 2 * i + 1);
    const double full = d_alpha_z(rho, sigma, p).value();

    const std::array<std::size_t, 1> keep{static_cast<std::size_t>(i % 2)};
    const double traced = d_alpha_z(partial_trace(rho, keep), partial_trace(sigma, keep), p).value();

    const Matrix u = random_unitary(4, seed0 + 7 * i);
    const double w = draw.uniform(0.1, 0.9);
    auto channel = [&](const HermitianOperator& x) {
      return HermitianOperator::hermitian_part(w * x.matrix() + (1 - w) * u * x.matrix() * u.adjoint(), part);
    };
    const double mixed = d_alpha_z(channel(rho), channel(sigma), p).value();

    const double violation = std::max(traced - full, mixed - full);
    r.worst = std::max(r.worst, violation);
    if (violation > kPropertyTol * std::max(1.0, std::abs(full))) ++r.failures;
  }
  return r;
}

// sigma <= sigma' implies D(rho || sigma) >= D(rho || sigma').
inline SuiteResult second_argument_monotone(std::uint64_t seed0 = 2000) {
  SuiteResult r{"monotone in second argument", kInstances};
  r.worst = -std::numeric_limits<double>::infinity();
  ts::Draw draw(seed0);
  for (int i = 0; i < kInstances; ++i) {
    const auto [a, z] = ts::random_dpi_point(draw);
    const AlphaZ p(a, z);
    const auto rho = ts::mixed_full_rank(Partition({3}), 0.05, seed0 + 3 * i);
    const auto sigma = ts::mixed_full_rank(Partition({3}), 0.05, seed0 + 3 * i + 1);
    const auto extra = random_density(3, 1 + i % 3, seed0 + 3 * i + 2);
    const auto bigger = sigma.op() + extra.op() * draw.uniform(0.01, 1.0);
    const double violation = d_alpha_z(rho, bigger, p).value() - d_alpha_z(rho, sigma, p).value();
    r.worst = std::max(r.worst, violation);
    if (violation > kPropertyTol) ++r.failures;
  }
  return r;
}

// D(rho1 (x) rho2 || sigma1 (x) sigma2) = D(rho1||sigma1) + D(rho2||sigma2).
inline SuiteResult tensor_additivity(std::uint64_t seed0 = 3000) {
  SuiteResult r{"tensor additivity", kInstances};
  ts::Draw draw(seed0);
  for (int i = 0; i < kInstances; ++i) {
    const auto [a, z] = ts::random_dpi_point(draw);
    const AlphaZ p(a, z);
    const int d1 = 2 + i % 2, d2 = 2;
    const auto r1 = random_density(d1, d1, seed0 + 4 * i), s1 = random_density(d1, d1, seed0 + 4 * i + 1);
    const auto r2 = random_density(d2, 1 + i % 2, seed0 + 4 * i + 2), s2 = random_density(d2, d2, seed0 + 4 * i + 3);
    const double joint = d_alpha_z(tensor_product(r1, r2), tensor_product(s1, s2), p).value();
    const double sum = d_alpha_z(r1, s1, p).value() + d_alpha_z(r2, s2, p).value();
    const double err = std::abs(joint - sum);
    r.worst = std::max(r.worst, err);
    if (err > 1e-8 * std::max(1.0, std::abs(sum))) ++r.failures;
  }
  return r;
}

// A^p A^q = A^{p+q} on the support and A^{-1} A = Pi(A) for rank-deficient A.
inline SuiteResult generalized_inverse(std::uint64_t seed0 = 4000) {
  SuiteResult r{"generalized inverse", kInstances};
  ts::Draw draw(seed0);
  for (int i = 0; i < kInstances; ++i) {
    const int d = 2 + i % 4;
    const int rank = 1 + i % d;
    const auto a = ts::mixed_full_rank(Partition({d}), 0.0, seed0 + i);
    const auto lowrank = random_density(d, rank, seed0 + 500 + i);
    const double p = draw.uniform(-2.0, 2.0), q = draw.uniform(-2.0, 2.0);
    const Matrix lhs = matrix_power(lowrank, p).matrix() * matrix_power(lowrank, q).matrix();
    const Matrix rhs = matrix_power(lowrank, p + q).matrix();
    const Matrix proj = support_projector(lowrank).matrix();
    const Matrix inv = matrix_power(lowrank, -1.0).matrix() * lowrank.matrix();
    const double scale = std::max(1.0, std::max(ts::max_entry(lhs), ts::max_entry(rhs)));
    double err = ts::max_entry(lhs - rhs) / scale;
    err = std::max(err, ts::max_entry(inv - proj));
    err = std::max(err, std::abs(proj.trace().real() - rank));
    err = std::max(err, ts::max_entry(matrix_power(a, -1.0).matrix() * a.matrix() - Matrix::Identity(d, d)));
    r.worst = std::max(r.worst, err);
    if (err > 1e-8) ++r.failures;
  }
  return r;
}

// Transposing the same factor twice is the identity; the trace and Hermiticity survive.
inline SuiteResult partial_transpose_involution(std::uint64_t seed0 = 5000) {
  SuiteResult r{"partial transpose involution", kInstances};
  for (int i = 0; i < kInstances; ++i) {
    const Partition part({2 + i % 2, 2 + (i / 2) % 2, 2});
    const auto rho = random_density(part, 1 + i % part.total(), seed0 + i);
    const std::vector<std::size_t> flip = i % 3 == 0 ? std::vector<std::size_t>{0}
                                          : i % 3 == 1 ? std::vector<std::size_t>{1, 2}
                                                       : std::vector<std::size_t>{0, 1, 2};
    const auto once = partial_transpose(rho, flip);
    const auto twice = partial_transpose(once, flip);
    double err = ts::max_entry(twice.matrix() - rho.matrix());
    err = std::max(err, std::abs(once.trace() - 1.0));
    if (flip.size() == 3) err = std::max(err, ts::max_entry(once.matrix() - rho.matrix().transpose()));
    r.worst = std::max(r.worst, err);
    if (err > 1e-14) ++r.failures;
  }
  return r;
}

inline std::vector<SuiteResult> all() {
  return {data_processing(), second_argument_monotone(), tensor_additivity(), generalized_inverse(),
          partial_transpose_involution()};
}

}  // namespace property_suites
