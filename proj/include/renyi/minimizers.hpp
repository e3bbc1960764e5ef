#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "renyi/divergences.hpp"
#include "renyi/hermitian.hpp"

namespace renyi {

enum class Convexity { Convex, QuasiFromQ };

/// Minimize an objective over the probability simplex of the given dimension.
struct SimplexProblem {
  std::function<double(const std::vector<double>&)> objective;  ///< may return +inf
  int dimension = 0;
  Convexity convexity_hint = Convexity::Convex;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;  ///< optional; finite differences when empty
};

struct SimplexOptions {
  int starts = 8;
  int max_iters = 10000;
  double rel_tol = 1e-12;
  double fd_step = 1e-6;
  double pin = 1e-12;
  std::uint64_t seed = 977;
};

struct SimplexResult {
  std::vector<double> point;
  double objective = 0.0;
  int best_start = 0;
  int iterations = 0;                 ///< of the best start
  std::vector<double> start_values;   ///< final objective per start
};

/// Projected gradient (analytic, else central finite differences), Barzilai-Borwein steps,
/// Armijo backtracking and Euclidean simplex projection. Start 0 is `warm`.
SimplexResult minimize_simplex(const SimplexProblem& problem, const std::vector<double>& warm,
                               const SimplexOptions& opts = {});

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(const std::vector<double>& v);

struct MinimizeResult {
  double value = 0.0;            ///< D_{alpha,z}(rho || sigma*) in bits
  std::vector<double> weights;   ///< simplex optimum
  HermitianOperator sigma;       ///< the optimizing free operator
  SimplexResult solver;
};

/// Coherence monotone: min over states diagonal in `basis` (columns; empty = computational).
MinimizeResult minimize_incoherent(const DensityMatrix& rho, const Matrix& basis, const AlphaZ& p,
                                   const SimplexOptions& opts = {});

/// Min over states sum_i s_i |i,i><i,i| for rho maximally correlated in the computational basis.
MinimizeResult minimize_mc(const DensityMatrix& rho, const AlphaZ& p, const SimplexOptions& opts = {});

/// -min_s D(rho || I (x) diag(s)) for maximally correlated rho.
double conditional_entropy_mc(const DensityMatrix& rho, const AlphaZ& p, const SimplexOptions& opts = {});

/// Golden-section search; returns (argmin, value). Tolerance is on the argument.
std::pair<double, double> golden_section_1d(const std::function<double(double)>& f, double lo, double hi,
                                            double tol = 1e-10);

}  // namespace renyi
