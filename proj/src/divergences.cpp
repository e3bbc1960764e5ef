#include "renyi/divergences.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace renyi {

namespace {

constexpr double kLineTol = 1e-12;
constexpr double kOrthTol = 1e-10;
constexpr double kDominanceTol = 1e-10;

bool near(double a, double b) { return std::abs(a - b) <= kLineTol; }

}  // namespace

AlphaZ::AlphaZ(double alpha, double z) : alpha_(alpha), z_(z) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvariantError("AlphaZ: alpha must be positive and finite");
  if (!(z > 0.0) || !std::isfinite(z)) throw InvariantError("AlphaZ: z must be positive and finite");
  umegaki_ = near(alpha, 1.0);
  reverse_ = near(z, 1.0 - alpha);
  lower_ = near(z, alpha - 1.0);
  const double a = alpha;
  in_dpi_ = (a > 0.0 && a < 1.0 && z >= std::max(a, 1.0 - a) - kLineTol) ||
            (a > 1.0 && a <= 2.0 && z >= a / 2.0 - kLineTol && z <= a + kLineTol) ||
            (a >= 2.0 && z >= a - 1.0 - kLineTol && z <= a + kLineTol) || umegaki_;
}

std::ostream& operator<<(std::ostream& os, const AlphaZ& p) {
  return os << "(alpha=" << p.alpha() << ", z=" << p.z() << ")";
}

bool dpi_region_contains(const AlphaZ& p) { return p.in_dpi_region(); }

ExtendedReal::ExtendedReal(double v) : v_(v) {
  if (std::isnan(v)) throw InvariantError("ExtendedReal: NaN");
  if (std::isinf(v) && v < 0) throw InvariantError("ExtendedReal: -inf is not representable");
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
  if (x.is_infinite()) return os << "+inf";
  return os << x.value();
}

bool orthogonal_supports(const HermitianOperator& rho, const HermitianOperator& sigma) {
  return support_projector(rho).trace_product(support_projector(sigma)) < kOrthTol;
}

bool support_dominated(const HermitianOperator& rho, const HermitianOperator& sigma) {
  const int d = rho.dim();
  const Matrix comp = Matrix::Identity(d, d) - support_projector(sigma).matrix();
  const Matrix outside = comp * rho.matrix() * comp;
  const double lmax = eig_hermitian(rho).values.maxCoeff();
  if (lmax <= 0.0) return true;
  return outside.cwiseAbs().maxCoeff() < kDominanceTol * lmax;
}

double log2_power_sum(const RealVector& spectrum, double z, double rel_cut) {
  const double mmax = spectrum.size() ? spectrum.maxCoeff() : 0.0;
  if (mmax <= 0.0) return -std::numeric_limits<double>::infinity();
  const double cut = rel_cut * mmax;
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (spectrum(i) > cut) s += std::pow(spectrum(i) / mmax, z);
  return z * std::log2(mmax) + std::log2(s);
}

double log2_q_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p) {
  if (p.on_umegaki_line()) throw std::invalid_argument("Q_{alpha,z} is undefined at alpha = 1; use d_umegaki");
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("q_alpha_z: dimension mismatch");
  const double alpha = p.alpha();
  if (alpha > 1.0 && !support_dominated(rho, sigma)) return std::numeric_limits<double>::infinity();
  if (alpha < 1.0 && orthogonal_supports(rho, sigma)) return -std::numeric_limits<double>::infinity();

  const auto r = matrix_power(rho, alpha / (2.0 * p.z()));
  const auto s = matrix_power(sigma, p.beta());
  const Matrix m = r.matrix() * s.matrix() * r.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return log2_power_sum(es.eigenvalues(), p.z());
}

ExtendedReal q_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p) {
  const double lq = log2_q_alpha_z(rho, sigma, p);
  if (std::isinf(lq)) return lq > 0 ? ExtendedReal::infinity() : ExtendedReal(0.0);
  return ExtendedReal(std::exp2(lq));
}

ExtendedReal d_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p) {
  if (p.on_umegaki_line()) return d_umegaki(rho, sigma);
  const double lq = log2_q_alpha_z(rho, sigma, p);
  if (std::isinf(lq)) return ExtendedReal::infinity();
  return ExtendedReal(lq / (p.alpha() - 1.0));
}

ExtendedReal d_min(const HermitianOperator& rho, const HermitianOperator& sigma) {
  const double overlap = support_projector(rho).trace_product(sigma);
  if (!(overlap > 0.0)) return ExtendedReal::infinity();
  return ExtendedReal(-std::log2(overlap));
}

ExtendedReal d_umegaki(const HermitianOperator& rho, const HermitianOperator& sigma) {
  if (!support_dominated(rho, sigma)) return ExtendedReal::infinity();
  const auto eig = eig_hermitian(rho);
  const auto log_sigma = matrix_log2(sigma);
  const double lmax = eig.values.maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double r = eig.values(i);
    if (r <= kDefaultRelCut * lmax) continue;
    const Vector v = eig.vectors.col(i);
    s += r * (std::log2(r) - log_sigma.expectation(v));
  }
  return ExtendedReal(s);
}

ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma) {
  if (!support_dominated(rho, sigma)) return ExtendedReal::infinity();
  const auto s = matrix_power(sigma, -0.5);
  const Matrix m = s.matrix() * rho.matrix() * s.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return ExtendedReal(std::log2(es.eigenvalues().maxCoeff()));
}

}  // namespace renyi
