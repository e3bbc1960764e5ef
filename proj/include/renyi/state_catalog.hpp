#pragma once

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "renyi/divergences.hpp"
#include "renyi/hermitian.hpp"

namespace renyi {

/// Weights on the Bell basis in the order Phi+, Phi-, Psi+, Psi-.
struct BellDiagonal {
  std::array<double, 4> lambda;
};
struct Werner {
  double p;  ///< weight on the symmetric subspace
  int d;
};
struct Isotropic {
  double F;  ///< fidelity with the maximally entangled state
  int d;
};
/// Generalized Dicke state of N sites with d = k.size() levels and occupation numbers k.
struct Dicke {
  int N;
  std::vector<int> k;
};
/// Mixture of the d maximally entangled phase states sum_j e^{2 pi i k j / d} |jj> / sqrt(d).
struct MCBD {
  std::vector<double> p;
};
/// sum_i sqrt(p_i) |i,i>
struct PureBipartite {
  std::vector<double> p;
};
struct GHZ {
  int d;
  int M;
};
/// rho = sum_jk c_jk |j,j><k,k|
struct MaximallyCorrelated {
  Matrix coeff;
  std::string source;  ///< descriptor the coefficients came from, e.g. "seed=7,d=3"
};
/// rho_- (x) rho_- of two antisymmetric Werner states, regrouped as (d^2, d^2).
struct AntisymPair {
  int d;
};

using StateFamily =
    std::variant<BellDiagonal, Werner, Isotropic, Dicke, MCBD, PureBipartite, GHZ, MaximallyCorrelated, AntisymPair>;

/// Renyi entropy in bits; Shannon at alpha = 1, min-entropy at alpha = +inf.
double alpha_entropy(const std::vector<double>& p, double alpha);

/// Throws InvariantError when the family parameters are invalid.
void validate(const StateFamily& family);

/// Dense storage limit on the total dimension.
inline constexpr double kMaxDenseDim = 1296.0;

/// Total Hilbert-space dimension of the built state.
double dense_dimension(const StateFamily& family);

/// Throws std::invalid_argument above total dimension 1296 (dense storage limit).
DensityMatrix build(const StateFamily& family);

/// Closed-form monotone value. Throws for MaximallyCorrelated (no closed form).
ExtendedReal closed_form_value(const StateFamily& family, const AlphaZ& p);

/// The candidate optimizer from the closed-form derivation; the state itself in the separable regime.
/// Throws for MaximallyCorrelated (use minimize_mc).
HermitianOperator ansatz_optimizer(const StateFamily& family, const AlphaZ& p);

/// Maximal overlap of the built state with pure product states.
/// Throws where no formula is known or parameters are outside its validity range.
double lambda_sq_closed_form(const StateFamily& family);

bool is_separable_regime(const StateFamily& family);

/// Short tag: bell, werner, isotropic, dicke, mcbd, pure, ghz, mc, antisym.
std::string family_tag(const StateFamily& family);

/// Canonical descriptor string, parseable by parse_family.
std::string to_string(const StateFamily& family);

/// Descriptor fields, e.g. "werner:p=0.2,d=3" -> {"werner", {{"p","0.2"},{"d","3"}}}.
struct FamilyFields {
  std::string tag;
  std::map<std::string, std::string> params;
};
FamilyFields parse_family_fields(const std::string& descriptor);
StateFamily family_from_fields(const FamilyFields& fields);

/// Parses descriptors such as `werner:p=0.2,d=3`, `dicke:N=3,k=2|1`, `mcbd:p=.5|.3|.2`,
/// `bell:l=.75|.25|0|0`, `isotropic:F=.8,d=3`, `pure:p=.9|.1`, `ghz:d=3,M=3`,
/// `antisym:d=3`, `mc:seed=7,d=3` (random coefficients) and `mc:file=coeff.json`.
StateFamily parse_family(const std::string& descriptor);

// Building blocks shared with the experiments.
Matrix bell_basis();                      ///< columns Phi+, Phi-, Psi+, Psi-
HermitianOperator symmetric_projector(int d);
HermitianOperator antisymmetric_projector(int d);
DensityMatrix werner_state(double p, int d);
DensityMatrix isotropic_state(double F, int d);

}  // namespace renyi
