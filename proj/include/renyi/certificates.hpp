#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "renyi/divergences.hpp"
#include "renyi/hermitian.hpp"

namespace renyi {

enum class XiRoute { DividedDifference, BoundaryLine, Commuting, MinRelative };
std::string to_string(XiRoute r);
XiRoute xi_route_from_string(const std::string& s);

/// The positive operator whose linear functional over the free set decides
/// optimality of a candidate tau.
struct XiEvaluation {
  HermitianOperator xi;
  XiRoute route;
  double beta;  ///< (1 - alpha) / z
};

/// Below this alpha the z = 1 point is handled as the min-relative-entropy limit.
inline constexpr double kMinRelativeAlpha = 1e-4;

/// rho^{a} (rho^{a} tau^{beta} rho^{a})^{z-1} rho^{a} with a = alpha / 2z, generalized inverses.
HermitianOperator chi(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p);

/// First divided difference of x -> x^beta scaled by 1/beta, i.e.
/// (a^beta - b^beta) / (beta (a - b)), continuous at a = b and at beta = 0.
double divided_difference_kernel(double a, double b, double beta);

XiEvaluation xi(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p,
                bool force_general = false);

/// Support condition for candidate optimizers: supp(Pi(rho) tau Pi(rho)) = supp(rho)
/// on the z = 1 - alpha line, supp(rho) within supp(tau) elsewhere.
bool in_support_set(const HermitianOperator& rho, const HermitianOperator& tau, const AlphaZ& p);

struct ProductOverlapOptions {
  int restarts = 64;
  int max_iters = 10000;
  double tol = 1e-12;
  std::uint64_t seed = 20240101;
};

struct ProductOverlap {
  double value = 0.0;
  std::vector<Vector> witness;  ///< one unit vector per party
  int best_restart = 0;
  std::vector<double> restart_values;
};

/// Lower bound on max over pure product states of <phi|xi|phi> by multi-start
/// alternating top-eigenvector updates. Requires at least two parties.
ProductOverlap max_product_overlap(const HermitianOperator& xi, const Partition& parties,
                                   const ProductOverlapOptions& opts = {});

/// Exhaustive Bloch-angle grid for a qubit first party (total dimension <= 16):
/// every grid point is completed by the exact optimum over the second party,
/// followed by local grid refinement around the best cell.
ProductOverlap grid_product_overlap(const HermitianOperator& xi, const Partition& parties, int theta_steps = 200);

enum class Verdict { CertifiedOptimal, Refuted, Inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct FreeSet {
  enum class Kind { Separable, Incoherent };
  Kind kind = Kind::Separable;
  Matrix basis;  ///< incoherent basis as columns; empty means computational

  static FreeSet separable() { return {}; }
  static FreeSet incoherent(Matrix basis = {}) { return {Kind::Incoherent, std::move(basis)}; }
};

struct CertifyOptions {
  ProductOverlapOptions overlap;
  double tol_cert = 1e-7;  ///< relative to q_value
  bool grid_fallback = true;
  int grid_theta_steps = 200;
};

struct CertificateReport {
  bool support_ok = false;
  double lambda_sq = 0.0;
  double q_value = 0.0;
  double margin = 0.0;
  std::vector<Vector> witness;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<double> value;  ///< D_{alpha,z}(rho||tau) when certified (may be +inf)
  XiRoute route = XiRoute::DividedDifference;
  double beta = 0.0;
  std::string free_set = "sep";
  int restarts = 0;
  int best_restart = 0;
  int restarts_at_best = 0;
  bool grid_checked = false;
};

/// Fills support_ok/lambda_sq/q_value/margin, then the verdict from the tolerance band.
void assign_verdict(CertificateReport& report, double tol_cert);

CertificateReport certify_optimizer(const DensityMatrix& rho, const HermitianOperator& tau, const AlphaZ& p,
                                    const FreeSet& free_set = FreeSet::separable(),
                                    const CertifyOptions& opts = {});

/// Scalar optimality test for a maximally correlated rho (computational |i,i> basis of a
/// (d, d) partition) against a tau diagonal on span{|i,i>}.
CertificateReport marginal_condition_mc(const DensityMatrix& rho, const HermitianOperator& tau, const AlphaZ& p,
                                        double tol_cert = 1e-7);

/// Throws unless rho is supported on span{|i,i>} within 1e-10; returns the coefficient matrix.
Matrix mc_coefficients(const HermitianOperator& rho);

}  // namespace renyi
