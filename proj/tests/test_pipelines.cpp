#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "rootfind/pipelines.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"
#include "test_util.hpp"

using namespace rootfind;
using testutil::multiset_distance;

TEST_CASE("oracle_real_roots on fixed inputs") {
  Polynomial p(std::vector<double>{-1.0, 0.0, 1.0});
  auto r = oracle_real_roots(p);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] + 1.0) <= 1e-10);
  CHECK(std::abs(r[1] - 1.0) <= 1e-10);

  Polynomial cubic = from_roots({cx(1, 0), cx(2, 0), cx(3, 0)});
  auto rc = oracle_real_roots(cubic);
  REQUIRE(rc.size() == 3);
  CHECK(std::abs(rc[0] - 1.0) <= 1e-9);
  CHECK(std::abs(rc[1] - 2.0) <= 1e-9);
  CHECK(std::abs(rc[2] - 3.0) <= 1e-9);

  Polynomial none(std::vector<double>{1.0, 0.0, 1.0});
  CHECK(oracle_real_roots(none).empty());
}

TEST_CASE("real_roots_pipeline on a factored input") {
  Polynomial p = from_roots({cx(1, 0), cx(-2, 0), cx(-0.5, std::sqrt(3.0) / 2.0),
                             cx(-0.5, -std::sqrt(3.0) / 2.0)});  // (x-1)(x+2)(x^2+x+1)
  REQUIRE(p.is_real());
  RootReport rep = real_roots_pipeline(p, RealPipelineConfig{}, true, 3);
  REQUIRE(rep.real_roots.size() == 2);
  bool has1 = false, hasm2 = false;
  for (const RootRecord& r : rep.real_roots) {
    CHECK(r.residual <= 1e-6);
    if (std::abs(r.value - cx(1, 0)) <= 1e-8) has1 = true;
    if (std::abs(r.value - cx(-2, 0)) <= 1e-8) hasm2 = true;
  }
  CHECK(has1);
  CHECK(hasm2);
  CHECK(rep.recovery_pct == 100.0);
}

TEST_CASE("real_roots_pipeline with no real roots") {
  Polynomial p(std::vector<double>{1.0, 0.0, 1.0});
  RootReport rep = real_roots_pipeline(p, RealPipelineConfig{}, true, 5);
  CHECK(rep.real_roots.empty());
  CHECK(rep.recovery_pct == 100.0);
}

TEST_CASE("real_roots_pipeline on random degree-16 instances") {
  int exact = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    Polynomial p = random_polynomial(16, 9000 + static_cast<std::uint64_t>(t));
    RootReport rep = real_roots_pipeline(p, RealPipelineConfig{}, true, 9000 + static_cast<std::uint64_t>(t));
    std::vector<double> oracle = oracle_real_roots(p);
    if (rep.real_roots.size() == oracle.size()) {
      bool all = true;
      for (double o : oracle) {
        bool matched = false;
        for (const RootRecord& r : rep.real_roots)
          if (std::abs(r.value - cx(o, 0.0)) <= 1e-6) matched = true;
        all = all && matched;
      }
      if (all) ++exact;
    }
  }
  CHECK(exact >= 8);
}

TEST_CASE("squaring_pipeline recovers the farthest root") {
  Polynomial p = from_roots({cx(5, 0), cx(1, 0), cx(-1, 0)});
  MapConfig cfg;
  RootReport rep = squaring_pipeline(p, 0.3, cfg, 3, 77);
  CHECK(rep.errors.empty());
  CHECK(rep.squarings >= 1);
  CHECK(rep.squarings <= 15);
  bool found5 = false;
  for (const RootRecord& r : rep.complex_roots)
    if (std::abs(r.value - cx(5, 0)) <= 1e-6) found5 = true;
  CHECK(found5);
}

TEST_CASE("complex_roots_pipeline on roots of unity") {
  Polynomial p(std::vector<double>{-1.0, 0.0, 0.0, 0.0, 1.0});  // x^4 - 1
  RootReport rep = complex_roots_pipeline(p, std::nullopt, ComplexPipelineConfig{}, true);
  REQUIRE(rep.complex_roots.size() == 4);
  std::vector<cx> got;
  for (const RootRecord& r : rep.complex_roots) got.push_back(r.value);
  CHECK(multiset_distance(got, {cx(1, 0), cx(-1, 0), cx(0, 1), cx(0, -1)}) <= 1e-8);
}

TEST_CASE("complex_roots_pipeline on a mixed cubic") {
  Polynomial p = from_roots({cx(3, 0), cx(-1, 2), cx(-1, -2)});  // (x-3)(x^2+2x+5)
  REQUIRE(p.is_real());
  RootReport rep = complex_roots_pipeline(p, std::nullopt, ComplexPipelineConfig{}, true);
  REQUIRE(rep.complex_roots.size() == 3);
  std::vector<cx> got;
  for (const RootRecord& r : rep.complex_roots) got.push_back(r.value);
  CHECK(multiset_distance(got, {cx(3, 0), cx(-1, 2), cx(-1, -2)}) <= 1e-8);
}

TEST_CASE("complex_roots_pipeline matches the dense oracle on a random instance") {
  Polynomial p = random_polynomial(16, 4321);
  RootReport rep = complex_roots_pipeline(p, std::nullopt, ComplexPipelineConfig{}, true);
  REQUIRE(rep.errors.empty());
  REQUIRE(rep.complex_roots.size() == 16);
  std::vector<cx> got;
  for (const RootRecord& r : rep.complex_roots) got.push_back(r.value);
  std::vector<cx> oracle = small_eig(companion_matrix(p));
  CHECK(multiset_distance(got, oracle) <= 1e-6);
}

TEST_CASE("benchmark is deterministic and sane") {
  std::vector<RunStats> a = benchmark(BenchSuite::newton, 24, 5, 99);
  std::vector<RunStats> b = benchmark(BenchSuite::newton, 24, 5, 99);
  REQUIRE(a.size() == 1);
  CHECK(a[0].samples == b[0].samples);
  CHECK(a[0].failures == b[0].failures);
  CHECK(a[0].min <= a[0].mean);
  CHECK(a[0].mean <= a[0].max);
  CHECK(a[0].std_dev >= 0.0);
  CHECK(a[0].min >= 1.0);
  CHECK(a[0].max <= 25.0);

  std::ostringstream csv1, csv2;
  write_stats_csv(csv1, a);
  write_stats_csv(csv2, b);
  CHECK(csv1.str() == csv2.str());
  CHECK(csv1.str().rfind("suite,n,metric,min,max,mean,std,failures\n", 0) == 0);
}

TEST_CASE("newton-pade benchmark provides monotone refinement percentages") {
  std::vector<RunStats> s = benchmark(BenchSuite::newton_pade, 16, 6, 7);
  REQUIRE(s.size() == 4);
  const RunStats* without = nullptr;
  const RunStats* with_rq = nullptr;
  for (const RunStats& r : s) {
    if (r.metric == "pct_without_rq") without = &r;
    if (r.metric == "pct_with_rq") with_rq = &r;
  }
  REQUIRE(without != nullptr);
  REQUIRE(with_rq != nullptr);
  REQUIRE(without->samples.size() == with_rq->samples.size());
  for (std::size_t i = 0; i < without->samples.size(); ++i)
    CHECK(with_rq->samples[i] >= without->samples[i]);
}

TEST_CASE("report records carry one line per root") {
  Polynomial p(std::vector<double>{-1.0, 0.0, 1.0});
  RootReport rep = real_roots_pipeline(p, RealPipelineConfig{}, true, 1);
  std::ostringstream os;
  write_report_records(os, rep);
  int lines = 0;
  for (char ch : os.str())
    if (ch == '\n') ++lines;
  CHECK(lines == static_cast<int>(rep.real_roots.size() + rep.complex_roots.size()));
  std::ostringstream text;
  write_report_text(text, p, rep);
  CHECK(text.str().find("real roots") != std::string::npos);
}
