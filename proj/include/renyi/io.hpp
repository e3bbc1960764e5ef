#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "renyi/certificates.hpp"
#include "renyi/hermitian.hpp"

namespace renyi {

using Json = nlohmann::json;

/// {"dims": [..], "re": [[..]], "im": [[..]]}, row-major; "dims" optional (single factor).
Json matrix_to_json(const HermitianOperator& h);
HermitianOperator matrix_from_json(const Json& j);
HermitianOperator load_operator(const std::string& path);
void save_operator(const HermitianOperator& h, const std::string& path);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// All report fields; witness as one {"re","im"} object per factor. Infinite values as "+inf".
Json report_to_json(const CertificateReport& r);
CertificateReport report_from_json(const Json& j);

/// Real number or +inf marker.
Json extended_to_json(double v);
double extended_from_json(const Json& j);

/// 12 significant digits; "+inf" / "nan" spelled out.
std::string format_number(double v);

/// One row of an experiment.
struct ExperimentRecord {
  std::string experiment;
  std::map<std::string, std::string> params;
  double computed = 0.0;
  std::optional<double> reference;
  std::optional<double> margin;
  long long wall_ms = 0;
  bool extended_output = false;  ///< computed may be +inf
};

Json record_to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const Json& j);

/// CSV with header: experiment,<param keys in sorted order>,computed,reference,margin,wall_ms.
/// All records must share the same parameter keys.
void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);

}  // namespace renyi
