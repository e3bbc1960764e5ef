#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "renyi/experiments.hpp"
#include "test_support.hpp"

using namespace renyi;
namespace ts = testing_support;

TEST_CASE("matrix json round trip keeps complex entries and dims") {
  const auto rho = random_density(Partition({2, 3}), 4, 17);
  const auto back = matrix_from_json(matrix_to_json(rho));
  CHECK(back.partition().dims() == std::vector<int>{2, 3});
  CHECK(ts::max_entry(back.matrix() - rho.matrix()) == 0.0);

  const auto path = (std::filesystem::temp_directory_path() / "renyi_io_test.json").string();
  save_operator(rho, path);
  CHECK(ts::max_entry(load_operator(path).matrix() - rho.matrix()) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("matrix json rejects malformed input") {
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"re": [[1, 0], [0]]})")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"re": [["a"]]})")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"([1, 2])")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"dims": [3], "re": [[1, 0], [0, 1]]})")));
  CHECK_THROWS(load_operator("/nonexistent/path.json"));
}

TEST_CASE("extended numbers") {
  CHECK(extended_to_json(INFINITY) == "+inf");
  CHECK(std::isinf(extended_from_json(Json("+inf"))));
  CHECK(extended_from_json(extended_to_json(0.25)) == 0.25);
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("certificate report round trip") {
  const StateFamily f = BellDiagonal{{0.75, 0.25, 0.0, 0.0}};
  const AlphaZ p(1.5, 1.0);
  const auto rep = certify_optimizer(build(f), ansatz_optimizer(f, p), p);
  const auto back = report_from_json(report_to_json(rep));
  CHECK(back.verdict == rep.verdict);
  CHECK(back.margin == rep.margin);
  CHECK(back.lambda_sq == rep.lambda_sq);
  CHECK(back.route == rep.route);
  CHECK(back.value == rep.value);
  REQUIRE(back.witness.size() == rep.witness.size());
  CHECK(ts::max_entry(back.witness[0] - rep.witness[0]) == 0.0);
}

TEST_CASE("experiment records and csv") {
  ExperimentRecord r;
  r.experiment = "demo";
  r.params = {{"b", "2"}, {"a", "1"}};
  r.computed = 0.5;
  r.reference = 0.5;
  r.wall_ms = 3;
  const auto back = record_from_json(record_to_json(r));
  CHECK(back.params == r.params);
  CHECK(back.reference == r.reference);
  CHECK_FALSE(back.margin.has_value());
  std::ostringstream os;
  write_records_csv(os, {r});
  CHECK(os.str().rfind("experiment,a,b,computed,reference,margin,wall_ms\n", 0) == 0);
}

TEST_CASE("grid files") {
  const auto path = (std::filesystem::temp_directory_path() / "renyi_grid_test.txt").string();
  {
    std::ofstream out(path);
    out << "# alpha z\n0.5 1\n2,2  # sandwiched\n\n";
  }
  const auto g = load_grid(path);
  REQUIRE(g.size() == 2);
  CHECK(g[1] == AlphaZ(2.0, 2.0));
  {
    std::ofstream out(path);
    out << "0.5\n";
  }
  CHECK_THROWS(load_grid(path));
  std::remove(path.c_str());
  CHECK(default_grid().size() == 9);
}

TEST_CASE("table rows are sorted and certified") {
  const auto rows = run_table1({Werner{0.2, 3}, BellDiagonal{{0.75, 0.25, 0.0, 0.0}}}, {{2.0, 2.0}, {0.5, 1.0}, {3.0, 1.0}});
  REQUIRE(rows.size() == 4);  // (3,1) lies outside the region
  CHECK(rows[0].family < rows[2].family);
  CHECK(rows[0].alpha < rows[1].alpha);
  for (const auto& r : rows) CHECK(r.ok);
  std::ostringstream os;
  write_table1_csv(os, rows);
  CHECK(os.str().rfind("family,alpha,z,closed_form,certified_value,margin,verdict,wall_ms\n", 0) == 0);
}

TEST_CASE("counterexample values") {
  const auto r3 = run_counterexample(3, AlphaZ(2.0, 2.0));
  CHECK(r3.certified_run);
  CHECK(r3.single_report.verdict == Verdict::CertifiedOptimal);
  CHECK(r3.pair_report.verdict == Verdict::CertifiedOptimal);
  CHECK(r3.gap == doctest::Approx(std::log2(1.5)).epsilon(1e-9));
  const auto r10 = run_counterexample(10, AlphaZ(2.0, 2.0));
  CHECK_FALSE(r10.certified_run);
  CHECK(r10.gap == doctest::Approx(std::log2(10.0 / 9.0)));
}

TEST_CASE("additivity runs") {
  const AlphaZ p(1.0, 1.0);
  const auto a = run_additivity("mcbd:p=.5|.5", "pure:p=.7|.3", p);
  REQUIRE(a.defect);
  CHECK(std::abs(*a.defect) < 1e-6);
  CHECK(a.product_report.verdict == Verdict::CertifiedOptimal);

  const auto b = run_additivity("werner:p=0,d=3", "werner:p=0,d=3", p);
  CHECK(b.joint_ansatz == "antisym-pair");
  REQUIRE(b.defect);
  CHECK(*b.defect == doctest::Approx(-std::log2(4.0 / 3.0)).epsilon(1e-8));

  const auto c = run_additivity("pure:p=.6|.4", "random:3,d=2", p);
  REQUIRE(c.defect);
  CHECK(std::abs(*c.defect) < 1e-6);
  CHECK_THROWS(run_additivity("pure:p=.6|.4", "random:3,q=2", p));
}

TEST_CASE("sweeps") {
  CHECK_THROWS(parse_sweep("werner:p=0,d=3", "p=0:1"));
  CHECK_THROWS(parse_sweep("werner:p=0,d=3", "=0:1:3"));
  std::vector<std::string> skipped;
  const auto recs = run_sweep(parse_sweep("isotropic:F=0,d=3", "F=0:1:11"), AlphaZ(1.0, 1.0), &skipped);
  REQUIRE(recs.size() == 11);
  double prev = -1.0;
  for (const auto& r : recs) {
    CHECK(r.computed >= prev - 1e-9);
    prev = r.computed;
    if (std::stod(r.params.at("value")) <= 1.0 / 3.0) CHECK(std::abs(r.computed) < 1e-9);
  }
  const auto alpha_sweep = run_sweep(parse_sweep("pure:p=.8|.2", "alpha=0.5:3:6"), AlphaZ(1.0, 1.5), &skipped);
  CHECK(alpha_sweep.size() + skipped.size() >= 6);
}
