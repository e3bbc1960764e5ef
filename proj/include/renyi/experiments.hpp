#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "renyi/certificates.hpp"
#include "renyi/io.hpp"
#include "renyi/minimizers.hpp"
#include "renyi/state_catalog.hpp"

namespace renyi {

/// (0.3,0.8) (0.5,0.5) (0.5,1) (0.9,0.9) (1,1) (1.5,1) (1.5,1.5) (2,2) (3,2.5)
std::vector<AlphaZ> default_grid();

/// One "alpha z" or "alpha,z" pair per line; '#' starts a comment.
std::vector<AlphaZ> load_grid(const std::string& path);

/// BellDiagonal(.75,.25,0,0), Werner(0.2,3), Isotropic(0.8,3), Dicke(3,(2,1)),
/// MCBD(.5,.3,.2), PureBipartite(.9,.1), GHZ(3,3).
std::vector<StateFamily> default_table1_families();

/// Certified monotone value of one family at one parameter point.
struct FamilyEvaluation {
  std::optional<double> closed_form;
  std::optional<double> certified_value;
  CertificateReport report;
  HermitianOperator tau = HermitianOperator::zero(Partition::single(1));
};

/// Certifies the catalog ansatz (or the minimize_mc optimizer for general MC states).
FamilyEvaluation evaluate_family(const StateFamily& family, const AlphaZ& p, const CertifyOptions& opts = {});

struct Table1Row {
  std::string family;
  double alpha = 0.0;
  double z = 0.0;
  double closed_form = 0.0;
  std::optional<double> certified_value;
  double margin = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  bool ok = false;  ///< certified and |closed_form - certified_value| <= tolerance
  long long wall_ms = 0;
};

inline constexpr double kTable1Tol = 1e-6;

/// Rows sorted by (family, alpha, z); points outside the DPI region are skipped.
std::vector<Table1Row> run_table1(const std::vector<StateFamily>& families, const std::vector<AlphaZ>& grid,
                                  const CertifyOptions& opts = {});

/// family,alpha,z,closed_form,certified_value,margin,verdict,wall_ms
void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows);
ExperimentRecord to_record(const Table1Row& row);

struct CounterexampleResult {
  int d = 0;
  bool certified_run = false;  ///< false when d^4 exceeds the dense limit; only closed forms are filled
  double single = 0.0;  ///< monotone of the antisymmetric Werner state
  double pair = 0.0;    ///< monotone of two copies
  double gap = 0.0;     ///< pair - single = log2(d / (d - 1))
  double additivity_defect = 0.0;  ///< 2 * single - pair; zero iff additive
  CertificateReport single_report;
  CertificateReport pair_report;
  double single_closed_form = 0.0;
  double pair_closed_form = 0.0;
};

/// Certifies both ansaetze when the pair fits the dense limit; values fall back to the closed forms otherwise.
CounterexampleResult run_counterexample(int d, const AlphaZ& p, const CertifyOptions& opts = {});

struct AdditivityResult {
  std::string first;
  std::string second;
  FamilyEvaluation first_eval;
  FamilyEvaluation second_eval;
  std::optional<double> joint;
  CertificateReport product_report;  ///< certificate of tau_1 (x) tau_2 for the joint state
  std::optional<CertificateReport> fallback_report;
  std::string joint_ansatz;          ///< "product" or "antisym-pair"
  std::optional<double> defect;      ///< joint - first - second
};

/// `second` may be a family descriptor or `random:SEED` (optionally `random:SEED,d=D`),
/// which draws a random maximally correlated state.
AdditivityResult run_additivity(const std::string& first, const std::string& second, const AlphaZ& p,
                                const CertifyOptions& opts = {});

struct SweepSpec {
  std::string family;  ///< descriptor
  std::string param;   ///< family field name, or "alpha" / "z"
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
};

/// Parses "name=lo:hi:steps".
SweepSpec parse_sweep(const std::string& family, const std::string& param_spec);

/// Each record: params {family, alpha, z, <param>, verdict}; computed = certified value,
/// reference = closed form. Invalid or out-of-region points are skipped and reported in `skipped`.
std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, const AlphaZ& p, std::vector<std::string>* skipped,
                                        const CertifyOptions& opts = {});

}  // namespace renyi
