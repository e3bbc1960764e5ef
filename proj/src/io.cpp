#include "renyi/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace renyi {

namespace {

Json real_rows(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json matrix_to_json(const HermitianOperator& h) {
  return {{"dims", h.partition().dims()}, {"re", real_rows(h.matrix(), false)}, {"im", real_rows(h.matrix(), true)}};
}

HermitianOperator matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re")) throw std::invalid_argument("matrix JSON: expected an object with \"re\"");
  const auto& re = j.at("re");
  if (!re.is_array() || re.empty()) throw std::invalid_argument("matrix JSON: \"re\" must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(re.size());
  Matrix m = Matrix::Zero(n, n);
  auto fill = [&](const Json& rows, bool imag) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
      throw std::invalid_argument("matrix JSON: row count mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw std::invalid_argument("matrix JSON: matrix must be square");
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!row[k].is_number()) throw std::invalid_argument("matrix JSON: non-numeric entry");
        const double v = row[k].get<double>();
        if (imag)
          m(i, k) += Complex(0.0, v);
        else
          m(i, k) += v;
      }
    }
  };
  fill(re, false);
  if (j.contains("im")) fill(j.at("im"), true);
  std::vector<int> dims{static_cast<int>(n)};
  if (j.contains("dims")) dims = j.at("dims").get<std::vector<int>>();
  return {m, Partition(dims)};
}

HermitianOperator load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void save_operator(const HermitianOperator& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << matrix_to_json(h).dump(1) << '\n';
}

Json vector_to_json(const Vector& v) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

Vector vector_from_json(const Json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::invalid_argument("vector JSON: re/im length mismatch");
  Vector v(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) v(i) = Complex(re[i], im[i]);
  return v;
}

Json extended_to_json(double v) {
  if (std::isinf(v) && v > 0) return "+inf";
  return v;
}

double extended_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "+inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected a number or \"+inf\"");
  }
  return j.get<double>();
}

Json report_to_json(const CertificateReport& r) {
  Json witness = Json::array();
  for (const auto& v : r.witness) witness.push_back(vector_to_json(v));
  Json j = {{"support_ok", r.support_ok},
            {"lambda_sq", extended_to_json(r.lambda_sq)},
            {"q_value", extended_to_json(r.q_value)},
            {"margin", r.margin},
            {"witness", witness},
            {"verdict", to_string(r.verdict)},
            {"route", to_string(r.route)},
            {"beta", r.beta},
            {"free_set", r.free_set},
            {"restarts", r.restarts},
            {"best_restart", r.best_restart},
            {"restarts_at_best", r.restarts_at_best},
            {"grid_checked", r.grid_checked}};
  j["value"] = r.value ? extended_to_json(*r.value) : Json(nullptr);
  return j;
}

CertificateReport report_from_json(const Json& j) {
  CertificateReport r;
  r.support_ok = j.at("support_ok").get<bool>();
  r.lambda_sq = extended_from_json(j.at("lambda_sq"));
  r.q_value = extended_from_json(j.at("q_value"));
  r.margin = j.at("margin").get<double>();
  for (const auto& w : j.at("witness")) r.witness.push_back(vector_from_json(w));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.route = xi_route_from_string(j.at("route").get<std::string>());
  r.beta = j.at("beta").get<double>();
  r.free_set = j.at("free_set").get<std::string>();
  r.restarts = j.at("restarts").get<int>();
  r.best_restart = j.at("best_restart").get<int>();
  r.restarts_at_best = j.at("restarts_at_best").get<int>();
  r.grid_checked = j.at("grid_checked").get<bool>();
  if (!j.at("value").is_null()) r.value = extended_from_json(j.at("value"));
  return r;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Json record_to_json(const ExperimentRecord& r) {
  Json j = {{"experiment", r.experiment}, {"params", r.params}, {"computed", extended_to_json(r.computed)},
            {"wall_ms", r.wall_ms}, {"extended_output", r.extended_output}};
  j["reference"] = r.reference ? extended_to_json(*r.reference) : Json(nullptr);
  j["margin"] = r.margin ? Json(*r.margin) : Json(nullptr);
  return j;
}

ExperimentRecord record_from_json(const Json& j) {
  ExperimentRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.params = j.at("params").get<std::map<std::string, std::string>>();
  r.computed = extended_from_json(j.at("computed"));
  r.wall_ms = j.at("wall_ms").get<long long>();
  r.extended_output = j.value("extended_output", false);
  if (!j.at("reference").is_null()) r.reference = extended_from_json(j.at("reference"));
  if (!j.at("margin").is_null()) r.margin = j.at("margin").get<double>();
  if (!r.extended_output && !std::isfinite(r.computed))
    throw std::invalid_argument("experiment record: non-finite computed value");
  return r;
}

void write_records_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  std::set<std::string> keys;
  for (const auto& [k, v] : records.empty() ? std::map<std::string, std::string>{} : records.front().params) keys.insert(k);
  for (const auto& r : records) {
    std::set<std::string> rk;
    for (const auto& [k, v] : r.params) rk.insert(k);
    if (rk != keys) throw std::invalid_argument("write_records_csv: records have different parameter keys");
  }
  os << "experiment";
  for (const auto& k : keys) os << ',' << csv_escape(k);
  os << ",computed,reference,margin,wall_ms\n";
  for (const auto& r : records) {
    os << csv_escape(r.experiment);
    for (const auto& k : keys) os << ',' << csv_escape(r.params.at(k));
    os << ',' << format_number(r.computed) << ',' << csv_field(r.reference) << ',' << csv_field(r.margin) << ','
       << r.wall_ms << '\n';
  }
}

}  // namespace renyi
