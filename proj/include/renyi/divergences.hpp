#pragma once

#include <iosfwd>
#include <limits>

#include "renyi/hermitian.hpp"

namespace renyi {

/// Validated (alpha, z) pair with region and line membership flags.
class AlphaZ {
 public:
  AlphaZ(double alpha, double z);

  double alpha() const { return alpha_; }
  double z() const { return z_; }
  /// (1 - alpha) / z, the exponent carried by the second argument.
  double beta() const { return (1.0 - alpha_) / z_; }

  /// Data-processing region including the alpha = 1 line.
  bool in_dpi_region() const { return in_dpi_; }
  bool on_umegaki_line() const { return umegaki_; }
  /// z = 1 - alpha
  bool on_reverse_line() const { return reverse_; }
  /// z = alpha - 1
  bool on_lower_line() const { return lower_; }

  bool operator==(const AlphaZ& o) const { return alpha_ == o.alpha_ && z_ == o.z_; }

 private:
  double alpha_;
  double z_;
  bool in_dpi_ = false;
  bool umegaki_ = false;
  bool reverse_ = false;
  bool lower_ = false;
};

std::ostream& operator<<(std::ostream& os, const AlphaZ& p);

bool dpi_region_contains(const AlphaZ& p);

/// A real number or +infinity; never NaN.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  explicit ExtendedReal(double v);
  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !is_infinite(); }
  /// The finite value, or +inf.
  double value() const { return v_; }

  bool operator==(const ExtendedReal& o) const { return v_ == o.v_; }

 private:
  double v_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

/// rho orthogonal to sigma: Tr(Pi(rho) Pi(sigma)) < 1e-10.
bool orthogonal_supports(const HermitianOperator& rho, const HermitianOperator& sigma);
/// supp(rho) within supp(sigma): |(1 - Pi(sigma)) rho (1 - Pi(sigma))|_max < 1e-10 lambda_max(rho).
bool support_dominated(const HermitianOperator& rho, const HermitianOperator& sigma);

/// Q_{alpha,z}(rho||sigma) = Tr(rho^{alpha/2z} sigma^{(1-alpha)/z} rho^{alpha/2z})^z.
/// +inf when alpha > 1 and supp(rho) is not contained in supp(sigma); 0 when
/// alpha < 1 and the supports are orthogonal. Throws for alpha = 1.
ExtendedReal q_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p);

/// D_{alpha,z}(rho||sigma) in bits; dispatches to d_umegaki on the alpha = 1 line.
ExtendedReal d_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p);

ExtendedReal d_min(const HermitianOperator& rho, const HermitianOperator& sigma);
ExtendedReal d_umegaki(const HermitianOperator& rho, const HermitianOperator& sigma);
ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma);

/// log2 Q_{alpha,z} for finite nonzero Q, computed without overflow for large z.
/// Returns +inf / -inf in the infinite / orthogonal branches.
double log2_q_alpha_z(const HermitianOperator& rho, const HermitianOperator& sigma, const AlphaZ& p);

/// log2 of sum_i mu_i^z over the positive part of a spectrum.
double log2_power_sum(const RealVector& spectrum, double z, double rel_cut = kDefaultRelCut);

}  // namespace renyi
