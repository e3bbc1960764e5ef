#include <doctest.h>

#include <array>
#include <cmath>

#include "renyi/hermitian.hpp"
#include "test_support.hpp"

using namespace renyi;
namespace ts = testing_support;

TEST_CASE("partition bookkeeping") {
  const Partition p({2, 3, 4});
  CHECK(p.total() == 24);
  CHECK(p.parties() == 3);
  const std::array<std::size_t, 2> keep{0, 2};
  CHECK(p.restrict_to(keep).dims() == std::vector<int>{2, 4});
  CHECK(p.concat(Partition({5})).total() == 120);
  CHECK_THROWS_AS(Partition({2, 0}), InvariantError);
  CHECK_THROWS_AS(Partition(std::vector<int>{}), InvariantError);
}

TEST_CASE("hermiticity is enforced with a scaled tolerance") {
  Matrix m(2, 2);
  m << 1.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 1.0;
  CHECK_THROWS_AS(HermitianOperator{m}, InvariantError);
  Matrix big = 1e6 * Matrix::Identity(2, 2);
  big(0, 1) = 1e-7;  // 1e-13 relative
  CHECK_NOTHROW(HermitianOperator{big});
  CHECK_THROWS_AS(HermitianOperator(Matrix::Identity(2, 2), Partition({3})), InvariantError);
}

TEST_CASE("density matrices need unit trace and a psd spectrum") {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityMatrix(HermitianOperator(m)));
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(Matrix(m * 2.0))), InvariantError);
  Matrix neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix(HermitianOperator(neg)), InvariantError);
}

TEST_CASE("eigendecomposition reconstructs and is ascending") {
  const auto rho = random_density(5, 5, 11);
  const auto e = eig_hermitian(rho);
  for (int i = 1; i < 5; ++i) CHECK(e.values(i - 1) <= e.values(i));
  const Matrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  CHECK(ts::max_entry(back - rho.matrix()) < 1e-13);
}

TEST_CASE("matrix powers agree with an independent oracle") {
  const auto rho = random_density(4, 4, 3);
  for (double p : {-1.5, -0.5, 0.3, 1.0, 2.7}) {
    CAPTURE(p);
    CHECK(ts::max_entry(matrix_power(rho, p).matrix() - ts::mpow(rho.matrix(), p)) < 1e-10);
  }
  const auto lg = matrix_log2(rho);
  CHECK(ts::max_entry(lg.matrix() - ts::mlog2(rho.matrix())) < 1e-12);
}

TEST_CASE("generalized inverse acts on the support only") {
  const auto rho = random_density(4, 2, 5);
  CHECK(support_rank(rho) == 2);
  const auto inv = matrix_power(rho, -1.0);
  const Matrix prod = inv.matrix() * rho.matrix();
  CHECK(ts::max_entry(prod - support_projector(rho).matrix()) < 1e-10);
  CHECK(std::abs(support_projector(rho).trace() - 2.0) < 1e-12);
  CHECK(ts::max_entry(matrix_power(rho, 0.0).matrix() - support_projector(rho).matrix()) < 1e-12);
}

TEST_CASE("tensor products, permutations and partial traces") {
  const auto a = random_density(2, 2, 1);
  const auto b = random_density(3, 3, 2);
  const auto ab = tensor_product(a, b);
  CHECK(ab.partition().dims() == std::vector<int>{2, 3});

  const std::array<std::size_t, 1> keep_a{0}, keep_b{1};
  CHECK(ts::max_entry(partial_trace(ab, keep_a).matrix() - a.matrix()) < 1e-14);
  CHECK(ts::max_entry(partial_trace(ab, keep_b).matrix() - b.matrix()) < 1e-14);

  const std::array<std::size_t, 2> swap{1, 0};
  const auto ba = permute_factors(ab, swap);
  CHECK(ts::max_entry(ba.matrix() - tensor_product(b, a).matrix()) < 1e-15);

  const std::array<std::size_t, 1> whole{2};
  CHECK(merge_factors(ab, whole).partition().dims() == std::vector<int>{6});
}

TEST_CASE("regrouped tensor product pairs up matching parties") {
  const auto a1 = random_density(2, 2, 1), a2 = random_density(3, 3, 2);
  const auto b1 = random_density(2, 2, 3), b2 = random_density(3, 3, 4);
  const auto x = tensor_product(a1, a2), y = tensor_product(b1, b2);
  const auto xy = tensor_product_regrouped(x.with_partition(Partition({2, 3})), y.with_partition(Partition({2, 3})));
  CHECK(xy.partition().dims() == std::vector<int>{4, 9});
  const auto expected = tensor_product(tensor_product(a1, b1), tensor_product(a2, b2));
  CHECK(ts::max_entry(xy.matrix() - expected.matrix()) < 1e-15);
}

TEST_CASE("partial transpose of a product state and of a Bell state") {
  const auto a = random_density(2, 2, 8), b = random_density(2, 2, 9);
  const std::array<std::size_t, 1> flip{1};
  const auto pt = partial_transpose(tensor_product(a, b), flip);
  const HermitianOperator bt(b.matrix().transpose(), Partition({2}));
  CHECK(ts::max_entry(pt.matrix() - tensor_product(a, bt).matrix()) < 1e-15);

  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const auto bell = HermitianOperator::projector(phi, Partition({2, 2}));
  const auto e = eig_hermitian(partial_transpose(bell, flip));
  CHECK(e.values(0) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("commutator norm and kron") {
  const auto d = HermitianOperator::diagonal(std::vector<double>{0.2, 0.8}, Partition({2}));
  CHECK(commutator_norm(d, HermitianOperator::identity(Partition({2}))) < 1e-15);
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  const Vector ab = kron(a, b);
  CHECK(std::abs(ab(1) - Complex(1.0)) < 1e-15);
  CHECK(ab.norm() == doctest::Approx(1.0));
}

TEST_CASE("random generators are deterministic per seed") {
  CHECK(random_density(3, 2, 42).matrix() == random_density(3, 2, 42).matrix());
  CHECK(random_density(3, 2, 42).matrix() != random_density(3, 2, 43).matrix());
  const Matrix u = random_unitary(4, 7);
  CHECK(ts::max_entry(u * u.adjoint() - Matrix::Identity(4, 4)) < 1e-13);
  CHECK(random_unit_vector(5, 3).norm() == doctest::Approx(1.0).epsilon(1e-14));
}
