#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace renyi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative eigenvalue cutoff below which a spectral value counts as kernel.
inline constexpr double kDefaultRelCut = 1e-10;

/// Thrown whenever a value would violate a type invariant.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local dimensions of the tensor factors of a finite-dimensional space.
class Partition {
 public:
  explicit Partition(std::vector<int> dims);
  static Partition single(int dim) { return Partition({dim}); }

  const std::vector<int>& dims() const { return dims_; }
  std::size_t parties() const { return dims_.size(); }
  int operator[](std::size_t i) const { return dims_.at(i); }
  int total() const { return total_; }

  /// Partition with the factors listed in `keep`, in increasing index order.
  Partition restrict_to(std::span<const std::size_t> keep) const;
  Partition concat(const Partition& other) const;

  bool operator==(const Partition& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

/// Dense Hermitian matrix tagged with the tensor structure it lives on.
///
/// Construction checks Hermiticity (entrywise, 1e-12 scaled by max(1, |H|_max))
/// and then stores the exactly symmetrized matrix.
class HermitianOperator {
 public:
  HermitianOperator(Matrix entries, Partition partition);
  explicit HermitianOperator(Matrix entries);

  static HermitianOperator identity(const Partition& partition);
  static HermitianOperator zero(const Partition& partition);
  static HermitianOperator diagonal(std::span<const double> diag, const Partition& partition);
  static HermitianOperator projector(const Vector& psi, const Partition& partition);
  /// (M + M^dagger) / 2 without the Hermiticity check, for products such as
  /// A B A that are Hermitian in exact arithmetic but carry rounding asymmetry.
  static HermitianOperator hermitian_part(const Matrix& m, const Partition& partition);

  const Matrix& matrix() const { return m_; }
  const Partition& partition() const { return partition_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return m_.trace().real(); }
  double max_abs() const;
  /// Tr(A B) for Hermitian A, B.
  double trace_product(const HermitianOperator& other) const;
  double expectation(const Vector& v) const { return (v.adjoint() * m_ * v)(0, 0).real(); }

  HermitianOperator with_partition(Partition partition) const { return {m_, std::move(partition)}; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;
  /// U H U^dagger; U must be square of matching size (unitarity not checked).
  HermitianOperator conjugate_by(const Matrix& u) const;

 private:
  Matrix m_;
  Partition partition_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Unit-trace positive semidefinite operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Partition& partition() const { return op_.partition(); }
  int dim() const { return op_.dim(); }
  operator const HermitianOperator&() const { return op_; }

 private:
  HermitianOperator op_;
};

struct EigenDecomposition {
  RealVector values;  ///< ascending
  Matrix vectors;     ///< columns are eigenvectors
};

EigenDecomposition eig_hermitian(const HermitianOperator& h);

/// Rebuilds V f(diag) V^dagger with the given partition.
HermitianOperator from_spectrum(const EigenDecomposition& eig, const RealVector& values,
                                const Partition& partition);

/// H^p on the support of H; eigenvalues at or below rel_cut * lambda_max map
/// to zero for every p, so H^0 is the support projector.
HermitianOperator matrix_power(const HermitianOperator& h, double p, double rel_cut = kDefaultRelCut);

/// Same as matrix_power but reuses a precomputed decomposition.
HermitianOperator matrix_power(const EigenDecomposition& eig, const Partition& partition, double p,
                               double rel_cut = kDefaultRelCut);

/// log2 on the support (kernel mapped to zero).
HermitianOperator matrix_log2(const HermitianOperator& h, double rel_cut = kDefaultRelCut);

HermitianOperator support_projector(const HermitianOperator& h, double rel_cut = kDefaultRelCut);

/// Number of eigenvalues strictly above rel_cut * lambda_max.
int support_rank(const HermitianOperator& h, double rel_cut = kDefaultRelCut);

/// Kronecker product; the partition is the concatenation of both partitions.
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

/// Reorders tensor factors: factor i of the result is factor perm[i] of the input.
HermitianOperator permute_factors(const HermitianOperator& a, std::span<const std::size_t> perm);

/// Merges adjacent factors into parties: groups[i] consecutive factors form party i.
HermitianOperator merge_factors(const HermitianOperator& a, std::span<const std::size_t> group_sizes);

/// Tensor product with party-wise merging: party j of the result is A_j A'_j.
/// Both operands must have the same number of parties.
HermitianOperator tensor_product_regrouped(const HermitianOperator& a, const HermitianOperator& b);

/// Product vector in row-major factor order.
Vector kron(const Vector& a, const Vector& b);
Vector kron(std::span<const Vector> factors);

HermitianOperator partial_trace(const HermitianOperator& a, std::span<const std::size_t> keep);
HermitianOperator partial_transpose(const HermitianOperator& a, std::span<const std::size_t> flip);

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

/// Ginibre-style random state G G^dagger / Tr, G of shape d x rank.
DensityMatrix random_density(int d, int rank, std::uint64_t seed);
DensityMatrix random_density(const Partition& partition, int rank, std::uint64_t seed);

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
Matrix random_unitary(int d, std::uint64_t seed);

/// Normalized complex Gaussian vector.
Vector random_unit_vector(int d, std::uint64_t seed);

}  // namespace renyi
