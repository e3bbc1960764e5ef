#include "renyi/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace renyi {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

bool is_mc(const StateFamily& f) { return std::holds_alternative<MaximallyCorrelated>(f); }

StateFamily parse_second(const std::string& s) {
  if (s.rfind("random:", 0) != 0) return parse_family(s);
  // random:SEED[,d=D] -> random maximally correlated state
  const std::string rest = s.substr(7);
  const auto comma = rest.find(',');
  auto fields = parse_family_fields("mc:" + (comma == std::string::npos ? std::string() : rest.substr(comma + 1)));
  for (const auto& [k, v] : fields.params)
    if (k != "d") throw std::invalid_argument("random: unknown field '" + k + "'");
  fields.params["seed"] = rest.substr(0, comma);
  fields.params.try_emplace("d", "2");
  return family_from_fields(fields);
}

std::optional<Werner> as_antisym_werner(const StateFamily& f) {
  if (const auto* w = std::get_if<Werner>(&f); w && w->p == 0.0) return *w;
  return std::nullopt;
}

}  // namespace

std::vector<AlphaZ> default_grid() {
  return {{0.3, 0.8}, {0.5, 0.5}, {0.5, 1.0}, {0.9, 0.9}, {1.0, 1.0},
          {1.5, 1.0}, {1.5, 1.5}, {2.0, 2.0}, {3.0, 2.5}};
}

std::vector<AlphaZ> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file " + path);
  std::vector<AlphaZ> grid;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, z;
    if (!(ls >> a)) continue;
    std::string extra;
    if (!(ls >> z) || (ls >> extra)) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'alpha z'");
    grid.emplace_back(a, z);
  }
  if (grid.empty()) throw std::invalid_argument(path + ": no grid points");
  return grid;
}

std::vector<StateFamily> default_table1_families() {
  return {BellDiagonal{{0.75, 0.25, 0.0, 0.0}},
          Werner{0.2, 3},
          Isotropic{0.8, 3},
          Dicke{3, {2, 1}},
          MCBD{{0.5, 0.3, 0.2}},
          PureBipartite{{0.9, 0.1}},
          GHZ{3, 3}};
}

FamilyEvaluation evaluate_family(const StateFamily& family, const AlphaZ& p, const CertifyOptions& opts) {
  const auto rho = build(family);
  if (is_mc(family)) {
    const auto sol = minimize_mc(rho, p);
    FamilyEvaluation ev{std::nullopt, std::nullopt, marginal_condition_mc(rho, sol.sigma, p, opts.tol_cert), sol.sigma};
    ev.certified_value = ev.report.value;
    return ev;
  }
  auto tau = ansatz_optimizer(family, p);
  FamilyEvaluation ev{closed_form_value(family, p).value(), std::nullopt,
                      certify_optimizer(rho, tau, p, FreeSet::separable(), opts), tau};
  ev.certified_value = ev.report.value;
  return ev;
}

std::vector<Table1Row> run_table1(const std::vector<StateFamily>& families, const std::vector<AlphaZ>& grid,
                                  const CertifyOptions& opts) {
  std::vector<Table1Row> rows;
  for (const auto& f : families)
    for (const auto& p : grid) {
      if (!p.in_dpi_region()) continue;
      const auto t0 = Clock::now();
      const auto ev = evaluate_family(f, p, opts);
      Table1Row row;
      row.family = to_string(f);
      row.alpha = p.alpha();
      row.z = p.z();
      row.closed_form = ev.closed_form.value_or(std::nan(""));
      row.certified_value = ev.certified_value;
      row.margin = ev.report.margin;
      row.verdict = ev.report.verdict;
      row.ok = ev.report.verdict == Verdict::CertifiedOptimal && ev.certified_value && ev.closed_form &&
               std::abs(*ev.certified_value - *ev.closed_form) <= kTable1Tol;
      row.wall_ms = elapsed_ms(t0);
      rows.push_back(row);
    }
  std::stable_sort(rows.begin(), rows.end(), [](const Table1Row& a, const Table1Row& b) {
    return std::tie(a.family, a.alpha, a.z) < std::tie(b.family, b.alpha, b.z);
  });
  return rows;
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows) {
  os << "family,alpha,z,closed_form,certified_value,margin,verdict,wall_ms\n";
  for (const auto& r : rows)
    os << '"' << r.family << "\"," << format_number(r.alpha) << ',' << format_number(r.z) << ','
       << format_number(r.closed_form) << ',' << (r.certified_value ? format_number(*r.certified_value) : "") << ','
       << format_number(r.margin) << ',' << to_string(r.verdict) << ',' << r.wall_ms << '\n';
}

ExperimentRecord to_record(const Table1Row& row) {
  ExperimentRecord r;
  r.experiment = "table1";
  r.params = {{"family", row.family},
              {"alpha", format_number(row.alpha)},
              {"z", format_number(row.z)},
              {"verdict", to_string(row.verdict)}};
  r.computed = row.certified_value.value_or(std::nan(""));
  r.extended_output = true;
  if (std::isfinite(row.closed_form)) r.reference = row.closed_form;
  r.margin = row.margin;
  r.wall_ms = row.wall_ms;
  return r;
}

CounterexampleResult run_counterexample(int d, const AlphaZ& p, const CertifyOptions& opts) {
  CounterexampleResult out;
  out.d = d;
  const StateFamily single = Werner{0.0, d};
  const StateFamily pair = AntisymPair{d};
  out.single_closed_form = closed_form_value(single, p).value();
  out.pair_closed_form = closed_form_value(pair, p).value();
  out.single = out.single_closed_form;
  out.pair = out.pair_closed_form;
  out.certified_run = dense_dimension(pair) <= kMaxDenseDim;
  if (out.certified_run) {
    out.single_report = certify_optimizer(build(single), ansatz_optimizer(single, p), p, FreeSet::separable(), opts);
    out.pair_report = certify_optimizer(build(pair), ansatz_optimizer(pair, p), p, FreeSet::separable(), opts);
    out.single = out.single_report.value.value_or(std::nan(""));
    out.pair = out.pair_report.value.value_or(std::nan(""));
  }
  out.gap = out.pair - out.single;
  out.additivity_defect = 2.0 * out.single - out.pair;
  return out;
}

AdditivityResult run_additivity(const std::string& first, const std::string& second, const AlphaZ& p,
                                const CertifyOptions& opts) {
  const auto f1 = parse_family(first);
  const auto f2 = parse_second(second);
  AdditivityResult out;
  out.first = to_string(f1);
  out.second = to_string(f2);
  out.first_eval = evaluate_family(f1, p, opts);
  out.second_eval = evaluate_family(f2, p, opts);

  const auto rho1 = build(f1), rho2 = build(f2);
  if (rho1.partition().parties() != rho2.partition().parties())
    throw std::invalid_argument("additivity: both states need the same number of parties");
  const DensityMatrix joint(tensor_product_regrouped(rho1, rho2));
  const auto tau = tensor_product_regrouped(out.first_eval.tau, out.second_eval.tau);
  out.product_report = certify_optimizer(joint, tau, p, FreeSet::separable(), opts);
  out.joint_ansatz = "product";
  if (out.product_report.verdict == Verdict::CertifiedOptimal) {
    out.joint = out.product_report.value;
  } else if (auto w1 = as_antisym_werner(f1), w2 = as_antisym_werner(f2); w1 && w2 && w1->d == w2->d) {
    const StateFamily pair = AntisymPair{w1->d};
    out.fallback_report = certify_optimizer(joint, ansatz_optimizer(pair, p), p, FreeSet::separable(), opts);
    out.joint_ansatz = "antisym-pair";
    if (out.fallback_report->verdict == Verdict::CertifiedOptimal) out.joint = out.fallback_report->value;
  }
  if (out.joint && out.first_eval.certified_value && out.second_eval.certified_value)
    out.defect = *out.joint - *out.first_eval.certified_value - *out.second_eval.certified_value;
  return out;
}

SweepSpec parse_sweep(const std::string& family, const std::string& param_spec) {
  const auto eq = param_spec.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("sweep: expected name=lo:hi:steps");
  SweepSpec s;
  s.family = family;
  s.param = param_spec.substr(0, eq);
  std::string range = param_spec.substr(eq + 1);
  std::replace(range.begin(), range.end(), ':', ' ');
  std::istringstream is(range);
  std::string extra;
  if (!(is >> s.lo >> s.hi >> s.steps) || (is >> extra)) throw std::invalid_argument("sweep: expected name=lo:hi:steps");
  if (s.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  return s;
}

std::vector<ExperimentRecord> run_sweep(const SweepSpec& spec, const AlphaZ& p, std::vector<std::string>* skipped,
                                        const CertifyOptions& opts) {
  std::vector<ExperimentRecord> out;
  const auto base = parse_family_fields(spec.family);
  for (int i = 0; i < spec.steps; ++i) {
    const double v = spec.steps == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
    const auto t0 = Clock::now();
    try {
      double alpha = p.alpha(), z = p.z();
      auto fields = base;
      if (spec.param == "alpha")
        alpha = v;
      else if (spec.param == "z")
        z = v;
      else
        fields.params[spec.param] = format_number(v);
      const AlphaZ q(alpha, z);
      if (!q.in_dpi_region()) {
        if (skipped) skipped->push_back(spec.param + "=" + format_number(v) + ": outside the DPI region");
        continue;
      }
      const auto family = family_from_fields(fields);
      const auto ev = evaluate_family(family, q, opts);
      ExperimentRecord r;
      r.experiment = "sweep";
      r.params = {{"family", to_string(family)},
                  {"alpha", format_number(alpha)},
                  {"z", format_number(z)},
                  {"param", spec.param},
                  {"value", format_number(v)},
                  {"verdict", to_string(ev.report.verdict)}};
      r.computed = ev.certified_value.value_or(std::nan(""));
      r.extended_output = true;
      r.reference = ev.closed_form;
      r.margin = ev.report.margin;
      r.wall_ms = elapsed_ms(t0);
      out.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      if (skipped) skipped->push_back(spec.param + "=" + format_number(v) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace renyi
