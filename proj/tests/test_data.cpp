#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "cdf2pdf/csv.hpp"
#include "cdf2pdf/dataset.hpp"
#include "cdf2pdf/ecdf.hpp"
#include "cdf2pdf/errors.hpp"

using namespace cdf2pdf;
using namespace cdf2pdf::data;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("counting ecdf dataset: shape, grouping, determinism") {
  const PriorBox prior{0.0, 10.0, 1.0, 10.0};
  const Dataset ds = gen_ecdf_onoff(5, 20, prior, 42);
  REQUIRE(ds.size() == 100);
  CHECK(ds.meta.problem == "onoff");
  CHECK(ds.meta.generator == "ecdf");

  for (long g = 0; g < 5; ++g) {
    std::vector<double> lams, targets;
    double t1 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds.group[i] != g) continue;
      lams.push_back(ds.lambda[i]);
      targets.push_back(ds.target[i]);
      t1 = ds.theta1[i];
      t2 = ds.theta2[i];
    }
    REQUIRE(lams.size() == 20);
    CHECK(t1 >= 0.0);
    CHECK(t1 <= 10.0);
    CHECK(t2 >= 1.0);
    CHECK(t2 <= 10.0);
    // every row in a group shares the parameter point
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds.group[i] == g) {
        CHECK(ds.theta1[i] == t1);
        CHECK(ds.theta2[i] == t2);
      }
    }
    // targets are the within-group ecdf of the statistics
    CHECK(targets == stats::ecdf_targets(lams));
    CHECK(*std::max_element(targets.begin(), targets.end()) == 1.0);
    for (const double t : targets) {
      CHECK(t > 0.0);
      CHECK(std::fabs(t * 20.0 - std::round(t * 20.0)) < 1e-12);
    }
  }

  const Dataset again = gen_ecdf_onoff(5, 20, prior, 42);
  CHECK(again.lambda == ds.lambda);
  CHECK(again.target == ds.target);
  const Dataset other = gen_ecdf_onoff(5, 20, prior, 43);
  CHECK(other.lambda != ds.lambda);
}

TEST_CASE("degenerate prior box pins the parameters") {
  const PriorBox prior{3.0, 3.0, 7.0, 7.0};
  const Dataset ds = gen_ecdf_onoff(3, 10, prior, 5);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(ds.theta1[i] == 3.0);
    CHECK(ds.theta2[i] == 7.0);
  }
}

TEST_CASE("indicator dataset: 0/1 targets, per-record groups, mean near 1/2") {
  const PriorBox prior{10.0, 10.0, 10.0, 10.0};
  const Dataset ds = gen_alffi_onoff(2000, prior, 77);
  REQUIRE(ds.size() == 2000);
  CHECK(ds.meta.generator == "alffi");
  double mean = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK((ds.target[i] == 0.0 || ds.target[i] == 1.0));
    CHECK(ds.group[i] == static_cast<long>(i));
    CHECK(ds.lambda[i] >= 0.0);
    mean += ds.target[i];
  }
  mean /= static_cast<double>(ds.size());
  // P(null <= comparison) for iid discrete draws is 1/2 plus half the tie mass
  CHECK(mean > 0.48);
  CHECK(mean < 0.62);
}

TEST_CASE("epidemic ecdf dataset: shape, observed trajectory, determinism") {
  SirScenario sc;
  sc.population = 200;
  sc.initial_infected = 2;
  sc.horizon = 20;
  const PriorBox prior{0.05, 0.5, 1e-4, 1e-3};
  const Dataset ds = gen_ecdf_sir(3, 5, prior, sc, 99);
  REQUIRE(ds.size() == 15);
  CHECK(ds.meta.problem == "sir");
  CHECK(ds.meta.has_scenario);
  REQUIRE(ds.meta.observed.size() == 21);
  CHECK(ds.meta.observed.t.front() == 0.0);
  CHECK(ds.meta.observed.s[0] + ds.meta.observed.i[0] + ds.meta.observed.r[0] ==
        200.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(std::isfinite(ds.lambda[i]));
    CHECK(ds.lambda[i] >= 0.0);
    CHECK(ds.theta1[i] >= 0.05);
    CHECK(ds.theta1[i] <= 0.5);
    CHECK(ds.theta2[i] >= 1e-4);
    CHECK(ds.theta2[i] <= 1e-3);
  }
  const Dataset again = gen_ecdf_sir(3, 5, prior, sc, 99);
  CHECK(again.lambda == ds.lambda);
  CHECK(again.meta.observed.i == ds.meta.observed.i);
}

TEST_CASE("group-aware split keeps groups intact and row order stable") {
  const PriorBox prior{0.0, 10.0, 1.0, 10.0};
  const Dataset ds = gen_ecdf_onoff(100, 10, prior, 3);
  SplitSpec spec;
  spec.seed = 8;
  const SplitResult parts = split_dataset(ds, spec);
  CHECK(parts.train.size() == 800);
  CHECK(parts.val.size() == 100);
  CHECK(parts.calib.size() == 100);

  // no group straddles two parts
  std::set<long> train_groups(parts.train.group.begin(), parts.train.group.end());
  std::set<long> val_groups(parts.val.group.begin(), parts.val.group.end());
  std::set<long> calib_groups(parts.calib.group.begin(), parts.calib.group.end());
  CHECK(train_groups.size() == 80);
  CHECK(val_groups.size() == 10);
  CHECK(calib_groups.size() == 10);
  for (const long g : val_groups) {
    CHECK(train_groups.count(g) == 0);
    CHECK(calib_groups.count(g) == 0);
  }

  // row order within a part preserves the source order
  for (std::size_t i = 1; i < parts.val.size(); ++i) {
    if (parts.val.group[i] == parts.val.group[i - 1]) {
      CHECK(parts.val.lambda[i - 1] ==
            ds.lambda[static_cast<std::size_t>(parts.val.group[i - 1]) * 10 +
                      (i - 1) % 10]);
    }
  }

  // deterministic in the seed, different for another seed
  const SplitResult again = split_dataset(ds, spec);
  CHECK(again.train.lambda == parts.train.lambda);
  SplitSpec other = spec;
  other.seed = 9;
  CHECK(split_dataset(ds, other).train.lambda != parts.train.lambda);
}

TEST_CASE("row split without group awareness") {
  const PriorBox prior{0.0, 10.0, 1.0, 10.0};
  const Dataset ds = gen_ecdf_onoff(10, 100, prior, 4);
  SplitSpec spec;
  spec.group_aware = false;
  spec.seed = 1;
  const SplitResult parts = split_dataset(ds, spec);
  CHECK(parts.train.size() == 800);
  CHECK(parts.val.size() == 100);
  CHECK(parts.calib.size() == 100);
}

TEST_CASE("split rejects bad fractions and empty parts") {
  const PriorBox prior{0.0, 10.0, 1.0, 10.0};
  const Dataset ds = gen_ecdf_onoff(2, 10, prior, 5);
  SplitSpec spec;
  CHECK_THROWS_AS(split_dataset(ds, spec), ConfigError);  // 2 groups, 3 parts

  SplitSpec bad;
  bad.train = 0.5;
  bad.val = 0.2;
  bad.calib = 0.2;
  const Dataset big = gen_ecdf_onoff(100, 5, prior, 6);
  CHECK_THROWS_AS(split_dataset(big, bad), ConfigError);

  SplitSpec zero;
  zero.train = 0.9;
  zero.val = 0.0;
  zero.calib = 0.1;
  CHECK_THROWS_AS(split_dataset(big, zero), ConfigError);
}

TEST_CASE("dataset csv round-trip is exact") {
  Dataset ds;
  ds.meta.problem = "synthetic";
  ds.meta.generator = "ecdf";
  ds.meta.seed = 123456789012345ull;
  ds.meta.points = 3;
  ds.meta.draws_per_point = 1;
  ds.meta.prior = {0.1, 1.0 / 3.0, 1e-300, 2.5};
  ds.append(0.1, 1.0 / 3.0, 1e-300, 0.25, 0);
  ds.append(-1.5, 2e300, 7.0000000000000009, 1.0, 1);
  ds.append(0.0, -0.0, 5e-324, 0.5, 2);

  const auto path = temp_file("cdf2pdf_ds_rt.csv");
  save_dataset(ds, path);
  const Dataset back = load_dataset(path);
  REQUIRE(back.size() == 3);
  CHECK(back.theta1 == ds.theta1);
  CHECK(back.theta2 == ds.theta2);
  CHECK(back.lambda == ds.lambda);
  CHECK(back.target == ds.target);
  CHECK(back.group == ds.group);
  CHECK(back.meta.problem == "synthetic");
  CHECK(back.meta.seed == ds.meta.seed);
  CHECK(back.meta.prior.t2_lo == 1e-300);

  std::filesystem::remove(path);
  std::filesystem::path mp = path;
  mp += ".meta.json";
  std::filesystem::remove(mp);
}

TEST_CASE("loading without the metadata sidecar still yields the rows") {
  Dataset ds;
  ds.append(1.0, 2.0, 3.0, 0.5, 0);
  const auto path = temp_file("cdf2pdf_ds_nometa.csv");
  save_dataset(ds, path);
  std::filesystem::path mp = path;
  mp += ".meta.json";
  std::filesystem::remove(mp);
  const Dataset back = load_dataset(path);
  CHECK(back.size() == 1);
  CHECK(back.meta.problem == "unknown");
  std::filesystem::remove(path);
}

TEST_CASE("csv parser reports the offending line") {
  const auto path = temp_file("cdf2pdf_bad.csv");
  {
    std::ofstream out(path);
    out << "theta1,theta2,lambda,target,group_id\n";
    out << "1,2,3,0.5,0\n";
    out << "1,2,3,0.6,0\n";
    out << "1,2,oops,0.7,0\n";
    out << "1,2,3,0.8,0\n";
  }
  try {
    load_dataset(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("csv rejects a wrong header and short rows") {
  const auto path = temp_file("cdf2pdf_bad2.csv");
  {
    std::ofstream out(path);
    out << "a,b\n1,2\n";
  }
  CHECK_THROWS_AS(load_dataset(path), ParseError);
  {
    std::ofstream out(path);
    out << "theta1,theta2,lambda,target,group_id\n";
    out << "1,2,3\n";
  }
  CHECK_THROWS_AS(load_dataset(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("shortest round-trip double formatting") {
  for (const double v : {0.1, 1.0 / 3.0, 1e-300, 5e-324, 123456789.123456789,
                         -0.0, 2e300, 0.30000000000000004}) {
    const std::string s = format_double(v);
    // strtod, not std::stod: stod raises out_of_range on subnormals
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}
