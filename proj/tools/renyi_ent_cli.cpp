// renyi-ent: command-line front end for the divergence, certificate and catalog library.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "renyi/experiments.hpp"

using namespace renyi;

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitInput = 2;

// Accepts a matrix JSON file or a family descriptor.
DensityMatrix load_state(const std::string& arg) {
  if (std::filesystem::exists(arg)) return DensityMatrix(load_operator(arg));
  return build(parse_family(arg));
}

Json num_or_null(const std::optional<double>& v) { return v ? extended_to_json(*v) : Json(nullptr); }

void write_or_print(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  emit(out);
}

Json additivity_json(const AdditivityResult& r) {
  auto side = [](const std::string& name, const FamilyEvaluation& e) {
    return Json{{"family", name},
                {"value", num_or_null(e.certified_value)},
                {"closed_form", num_or_null(e.closed_form)},
                {"certificate", report_to_json(e.report)}};
  };
  Json j = {{"first", side(r.first, r.first_eval)},
            {"second", side(r.second, r.second_eval)},
            {"joint", num_or_null(r.joint)},
            {"joint_ansatz", r.joint_ansatz},
            {"product_certificate", report_to_json(r.product_report)},
            {"defect", num_or_null(r.defect)}};
  if (r.fallback_report) j["fallback_certificate"] = report_to_json(*r.fallback_report);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alpha-z Renyi divergences, optimizer certificates and entanglement monotones"};
  app.require_subcommand(1);

  double alpha = 1.0, z = 1.0;
  int restarts = 64;
  std::uint64_t seed = ProductOverlapOptions{}.seed;
  auto add_alpha_z = [&](CLI::App* sub) {
    sub->add_option("--alpha,-a", alpha, "Renyi order alpha")->capture_default_str();
    sub->add_option("--z", z, "parameter z")->capture_default_str();
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--restarts", restarts, "random restarts for the product-overlap search")->capture_default_str();
    sub->add_option("--seed", seed, "base seed for the product-overlap search")->capture_default_str();
  };
  auto certify_opts = [&] {
    CertifyOptions o;
    o.overlap.restarts = restarts;
    o.overlap.seed = seed;
    return o;
  };

  auto* eval = app.add_subcommand("eval", "evaluate D_{alpha,z}(rho||sigma) and Q_{alpha,z}");
  std::string rho_file, sigma_file;
  eval->add_option("rho", rho_file, "state file or family descriptor")->required();
  eval->add_option("sigma", sigma_file, "operator file")->required();
  add_alpha_z(eval);

  auto* value = app.add_subcommand("value", "closed-form monotone value of a catalog family");
  std::string family;
  value->add_option("family", family, "descriptor, e.g. werner:p=0.2,d=3")->required();
  add_alpha_z(value);

  auto* certify = app.add_subcommand("certify", "certify a candidate optimizer");
  std::string tau_arg = "ansatz", free_set = "sep";
  certify->add_option("rho", rho_file, "state file or family descriptor")->required();
  certify->add_option("tau", tau_arg, "operator file or 'ansatz'")->capture_default_str();
  certify->add_option("--free", free_set, "free set")->check(CLI::IsMember({"sep", "incoherent"}))->capture_default_str();
  add_alpha_z(certify);
  add_search(certify);

  auto* table1 = app.add_subcommand("table1", "reproduce the closed-form table by certification");
  std::string grid_arg = "default", out_path, json_path;
  table1->add_option("--grid", grid_arg, "'default' or a file of 'alpha z' lines")->capture_default_str();
  table1->add_option("--out", out_path, "CSV output path (default stdout)");
  table1->add_option("--json", json_path, "also write the rows as JSON records");
  add_search(table1);

  auto* counter = app.add_subcommand("counterexample", "antisymmetric Werner pair non-additivity");
  int dim = 3;
  counter->add_option("--d", dim, "local dimension")->capture_default_str();
  add_alpha_z(counter);
  add_search(counter);

  auto* additivity = app.add_subcommand("additivity", "compare the joint monotone with the sum of marginals");
  std::string other;
  additivity->add_option("family", family, "first family descriptor")->required();
  additivity->add_option("--other", other, "second descriptor or random:SEED[,d=D]")->required();
  add_alpha_z(additivity);
  add_search(additivity);

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter and record closed-form and certified values");
  std::string param;
  sweep->add_option("family", family, "family descriptor")->required();
  sweep->add_option("--param", param, "name=lo:hi:steps (family field, alpha or z)")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  add_alpha_z(sweep);
  add_search(sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      const AlphaZ p(alpha, z);
      const auto rho = load_state(rho_file);
      const auto sigma = load_operator(sigma_file);
      if (!p.in_dpi_region()) std::cerr << "warning: " << p << " is outside the data-processing region\n";
      Json j = {{"d", extended_to_json(d_alpha_z(rho, sigma, p).value())}, {"dpi", p.in_dpi_region()}};
      j["q"] = p.on_umegaki_line() ? Json(nullptr) : extended_to_json(q_alpha_z(rho, sigma, p).value());
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*value) {
      const AlphaZ p(alpha, z);
      const auto f = parse_family(family);
      Json j = {{"family", to_string(f)}, {"alpha", alpha}, {"z", z}, {"dpi", p.in_dpi_region()},
                {"value", extended_to_json(closed_form_value(f, p).value())}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*certify) {
      const AlphaZ p(alpha, z);
      const auto rho = load_state(rho_file);
      HermitianOperator tau = tau_arg == "ansatz" ? ansatz_optimizer(parse_family(rho_file), p) : load_operator(tau_arg);
      if (!(tau.partition() == rho.partition())) tau = tau.with_partition(rho.partition());
      const auto fs = free_set == "incoherent" ? FreeSet::incoherent() : FreeSet::separable();
      std::cout << report_to_json(certify_optimizer(rho, tau, p, fs, certify_opts())).dump(2) << '\n';
      return 0;
    }
    if (*table1) {
      const auto grid = grid_arg == "default" ? default_grid() : load_grid(grid_arg);
      const auto rows = run_table1(default_table1_families(), grid, certify_opts());
      write_or_print(out_path, [&](std::ostream& os) { write_table1_csv(os, rows); });
      if (!json_path.empty()) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(record_to_json(to_record(r)));
        write_or_print(json_path, [&](std::ostream& os) { os << arr.dump(2) << '\n'; });
      }
      int failures = 0;
      for (const auto& r : rows)
        if (!r.ok) {
          ++failures;
          std::cerr << "FAIL " << r.family << " alpha=" << r.alpha << " z=" << r.z << " verdict=" << to_string(r.verdict)
                    << " closed_form=" << format_number(r.closed_form)
                    << " certified=" << (r.certified_value ? format_number(*r.certified_value) : "none") << '\n';
        }
      return failures ? kExitTolerance : 0;
    }
    if (*counter) {
      const AlphaZ p(alpha, z);
      const auto r = run_counterexample(dim, p, certify_opts());
      Json j = {{"d", r.d},
                {"certified", r.certified_run},
                {"single", r.single},
                {"pair", r.pair},
                {"gap", r.gap},
                {"additivity_defect", r.additivity_defect},
                {"single_closed_form", r.single_closed_form},
                {"pair_closed_form", r.pair_closed_form}};
      if (!r.certified_run) {
        std::cerr << "warning: d=" << r.d << " exceeds the dense limit; reporting closed forms without certification\n";
        std::cout << j.dump(2) << '\n';
        return 0;
      }
      j["single_certificate"] = report_to_json(r.single_report);
      j["pair_certificate"] = report_to_json(r.pair_report);
      std::cout << j.dump(2) << '\n';
      const bool ok = r.single_report.verdict == Verdict::CertifiedOptimal &&
                      r.pair_report.verdict == Verdict::CertifiedOptimal &&
                      std::abs(r.single - r.single_closed_form) <= kTable1Tol &&
                      std::abs(r.pair - r.pair_closed_form) <= kTable1Tol;
      return ok ? 0 : kExitTolerance;
    }
    if (*additivity) {
      const AlphaZ p(alpha, z);
      std::cout << additivity_json(run_additivity(family, other, p, certify_opts())).dump(2) << '\n';
      return 0;
    }
    if (*sweep) {
      const AlphaZ p(alpha, z);
      std::vector<std::string> skipped;
      const auto records = run_sweep(parse_sweep(family, param), p, &skipped, certify_opts());
      for (const auto& s : skipped) std::cerr << "warning: skipped " << s << '\n';
      write_or_print(out_path, [&](std::ostream& os) { write_records_csv(os, records); });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
