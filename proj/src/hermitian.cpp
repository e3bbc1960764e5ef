#include "renyi/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace renyi {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kTraceTol = 1e-10;

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Index map for a factor permutation: out[in_index] = out_index.
std::vector<int> permutation_map(const std::vector<int>& dims, std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<int> out_dims(n);
  for (std::size_t i = 0; i < n; ++i) out_dims[i] = dims[perm[i]];
  const auto in_strides = strides_of(dims);
  const auto out_strides = strides_of(out_dims);
  // in factor perm[i] sits at out position i
  std::vector<int> out_stride_of_in(n);
  for (std::size_t i = 0; i < n; ++i) out_stride_of_in[perm[i]] = out_strides[i];

  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  std::vector<int> map(total);
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    int out = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const int digit = rest / in_strides[k];
      rest %= in_strides[k];
      out += digit * out_stride_of_in[k];
    }
    map[idx] = out;
  }
  return map;
}

void check_index_set(const Partition& p, std::span<const std::size_t> idx, const char* what) {
  std::vector<std::size_t> sorted(idx.begin(), idx.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument(std::string(what) + ": duplicate party index");
  for (auto i : sorted)
    if (i >= p.parties()) throw std::invalid_argument(std::string(what) + ": party index out of range");
}

std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng) * s, normal(rng) * s);
  return g;
}

}  // namespace

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvariantError("Partition: at least one factor required");
  for (int d : dims_) {
    if (d < 1) throw InvariantError("Partition: local dimensions must be >= 1");
    total_ *= d;
  }
}

Partition Partition::restrict_to(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> d;
  d.reserve(sorted.size());
  for (auto i : sorted) d.push_back(dims_.at(i));
  return Partition(std::move(d));
}

Partition Partition::concat(const Partition& other) const {
  std::vector<int> d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return Partition(std::move(d));
}

// -------------------------------------------------------- HermitianOperator

HermitianOperator::HermitianOperator(Matrix entries, Partition partition)
    : m_(std::move(entries)), partition_(std::move(partition)) {
  if (m_.rows() != m_.cols()) throw InvariantError("HermitianOperator: matrix must be square");
  if (m_.rows() != partition_.total()) {
    std::ostringstream os;
    os << "HermitianOperator: dimension " << m_.rows() << " does not match partition total "
       << partition_.total();
    throw InvariantError(os.str());
  }
  if (!m_.allFinite()) throw InvariantError("HermitianOperator: non-finite entry");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    std::ostringstream os;
    os << "HermitianOperator: not Hermitian (max |H - H^dagger| = " << asym << ")";
    throw InvariantError(os.str());
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianOperator::HermitianOperator(Matrix entries)
    : HermitianOperator(entries, Partition::single(static_cast<int>(entries.rows()))) {}

HermitianOperator HermitianOperator::hermitian_part(const Matrix& m, const Partition& partition) {
  if (m.rows() != m.cols()) throw InvariantError("HermitianOperator: matrix must be square");
  return {0.5 * (m + m.adjoint()), partition};
}

HermitianOperator HermitianOperator::identity(const Partition& partition) {
  return {Matrix::Identity(partition.total(), partition.total()), partition};
}

HermitianOperator HermitianOperator::zero(const Partition& partition) {
  return {Matrix::Zero(partition.total(), partition.total()), partition};
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> diag, const Partition& partition) {
  Matrix m = Matrix::Zero(partition.total(), partition.total());
  if (static_cast<int>(diag.size()) != partition.total())
    throw InvariantError("HermitianOperator::diagonal: length does not match partition");
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return {std::move(m), partition};
}

HermitianOperator HermitianOperator::projector(const Vector& psi, const Partition& partition) {
  return {psi * psi.adjoint(), partition};
}

double HermitianOperator::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

double HermitianOperator::trace_product(const HermitianOperator& other) const {
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
  return (m_.array() * other.m_.array().conjugate()).sum().real();
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (!(partition_ == other.partition_)) throw std::invalid_argument("operator+: partition mismatch");
  return {m_ + other.m_, partition_};
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (!(partition_ == other.partition_)) throw std::invalid_argument("operator-: partition mismatch");
  return {m_ - other.m_, partition_};
}

HermitianOperator HermitianOperator::operator*(double s) const { return {m_ * s, partition_}; }

HermitianOperator HermitianOperator::conjugate_by(const Matrix& u) const {
  return hermitian_part(u * m_ * u.adjoint(), partition_);
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw InvariantError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) < -kPsdTol * std::max(ev(ev.size() - 1), 0.0)) {
    std::ostringstream os;
    os << "DensityMatrix: not positive semidefinite (lambda_min = " << ev(0) << ")";
    throw InvariantError(os.str());
  }
}

// ------------------------------------------------------------ spectral ops

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

HermitianOperator from_spectrum(const EigenDecomposition& eig, const RealVector& values,
                                const Partition& partition) {
  return HermitianOperator::hermitian_part(eig.vectors * values.asDiagonal() * eig.vectors.adjoint(), partition);
}

HermitianOperator matrix_power(const EigenDecomposition& eig, const Partition& partition, double p,
                               double rel_cut) {
  const auto& ev = eig.values;
  const double lmax = ev.size() ? ev(ev.size() - 1) : 0.0;
  RealVector f = RealVector::Zero(ev.size());
  if (lmax > 0.0) {
    const double cut = rel_cut * lmax;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > cut) f(i) = (p == 0.0) ? 1.0 : std::pow(ev(i), p);
  }
  return from_spectrum(eig, f, partition);
}

HermitianOperator matrix_power(const HermitianOperator& h, double p, double rel_cut) {
  return matrix_power(eig_hermitian(h), h.partition(), p, rel_cut);
}

HermitianOperator matrix_log2(const HermitianOperator& h, double rel_cut) {
  const auto eig = eig_hermitian(h);
  const auto& ev = eig.values;
  const double lmax = ev.size() ? ev(ev.size() - 1) : 0.0;
  RealVector f = RealVector::Zero(ev.size());
  if (lmax > 0.0)
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > rel_cut * lmax) f(i) = std::log2(ev(i));
  return from_spectrum(eig, f, h.partition());
}

HermitianOperator support_projector(const HermitianOperator& h, double rel_cut) {
  return matrix_power(h, 0.0, rel_cut);
}

int support_rank(const HermitianOperator& h, double rel_cut) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lmax = ev(ev.size() - 1);
  if (lmax <= 0.0) return 0;
  return static_cast<int>((ev.array() > rel_cut * lmax).count());
}

// ------------------------------------------------------------ tensor ops

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return {std::move(k), a.partition().concat(b.partition())};
}

HermitianOperator permute_factors(const HermitianOperator& a, std::span<const std::size_t> perm) {
  const auto& dims = a.partition().dims();
  if (perm.size() != dims.size()) throw std::invalid_argument("permute_factors: wrong permutation length");
  std::vector<std::size_t> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != i) throw std::invalid_argument("permute_factors: not a permutation");

  const auto map = permutation_map(dims, perm);
  const Matrix& m = a.matrix();
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) out(map[r], map[c]) = m(r, c);
  std::vector<int> out_dims(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) out_dims[i] = dims[perm[i]];
  return {std::move(out), Partition(std::move(out_dims))};
}

HermitianOperator merge_factors(const HermitianOperator& a, std::span<const std::size_t> group_sizes) {
  const auto& dims = a.partition().dims();
  std::vector<int> merged;
  std::size_t pos = 0;
  for (auto g : group_sizes) {
    if (g == 0) throw std::invalid_argument("merge_factors: empty group");
    int d = 1;
    for (std::size_t k = 0; k < g; ++k) {
      if (pos >= dims.size()) throw std::invalid_argument("merge_factors: groups exceed factor count");
      d *= dims[pos++];
    }
    merged.push_back(d);
  }
  if (pos != dims.size()) throw std::invalid_argument("merge_factors: groups do not cover all factors");
  return a.with_partition(Partition(std::move(merged)));
}

HermitianOperator tensor_product_regrouped(const HermitianOperator& a, const HermitianOperator& b) {
  const std::size_t n = a.partition().parties();
  if (n != b.partition().parties())
    throw std::invalid_argument("tensor_product_regrouped: operands have different party counts");
  const auto joint = tensor_product(a, b);
  // factors are A_1..A_n A'_1..A'_n; reorder to A_1 A'_1 A_2 A'_2 ...
  std::vector<std::size_t> perm;
  perm.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    perm.push_back(j);
    perm.push_back(n + j);
  }
  const std::vector<std::size_t> groups(n, 2);
  return merge_factors(permute_factors(joint, perm), groups);
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector kron(std::span<const Vector> factors) {
  if (factors.empty()) throw std::invalid_argument("kron: no factors");
  Vector out = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& a, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  const Partition& p = a.partition();
  check_index_set(p, keep, "partial_trace");

  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<std::size_t> perm = kept;
  for (std::size_t i = 0; i < p.parties(); ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) perm.push_back(i);

  const auto reordered = permute_factors(a, perm);
  const Partition out_part = p.restrict_to(kept);
  const int dk = out_part.total();
  const int dt = p.total() / dk;
  const Matrix& m = reordered.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (int t = 0; t < dt; ++t) s += m(i * dt + t, j * dt + t);
      out(i, j) = s;
    }
  return {std::move(out), out_part};
}

HermitianOperator partial_transpose(const HermitianOperator& a, std::span<const std::size_t> flip) {
  const Partition& p = a.partition();
  check_index_set(p, flip, "partial_transpose");
  const auto& dims = p.dims();
  const auto strides = strides_of(dims);
  std::vector<bool> flipped(dims.size(), false);
  for (auto i : flip) flipped[i] = true;

  const Matrix& m = a.matrix();
  const int n = p.total();
  Matrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int nr = 0, nc = 0, rr = r, cc = c;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        const int dr = rr / strides[k];
        const int dc = cc / strides[k];
        rr %= strides[k];
        cc %= strides[k];
        nr += (flipped[k] ? dc : dr) * strides[k];
        nc += (flipped[k] ? dr : dc) * strides[k];
      }
      out(nr, nc) = m(r, c);
    }
  return {std::move(out), p};
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
  const Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
}

// ------------------------------------------------------------ random states

DensityMatrix random_density(const Partition& partition, int rank, std::uint64_t seed) {
  const int d = partition.total();
  if (rank < 1 || rank > d) throw std::invalid_argument("random_density: rank must satisfy 1 <= rank <= d");
  auto rng = make_rng(seed);
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(HermitianOperator(std::move(rho), partition));
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
  return random_density(Partition::single(d), rank, seed);
}

Matrix random_unitary(int d, std::uint64_t seed) {
  auto rng = make_rng(seed ^ 0x9e3779b97f4a7c15ull);
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

Vector random_unit_vector(int d, std::uint64_t seed) {
  auto rng = make_rng(seed ^ 0xabcdef12345ull);
  Vector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace renyi
