#include <sstream>

#include "doctest.h"
#include "sibm/model.hpp"
#include "sibm/rng.hpp"
#include "sibm/ssbm.hpp"
#include "test_util.hpp"

using namespace sibm;

TEST_CASE("validate_params accepts a sane tuple and derives p, q") {
  SibmParams params;
  params.n = 100;
  params.a = 9;
  params.b = 1;
  params.alpha = 2;
  params.beta = 0.1;
  params.m = 3;
  const SibmParams valid = validate_params(params);
  CHECK(valid.p == doctest::Approx(0.4144653167389283).epsilon(1e-12));
  CHECK(valid.q == doctest::Approx(0.04605170185988091).epsilon(1e-12));

  SUBCASE("idempotent") {
    const SibmParams again = validate_params(valid);
    CHECK(again.p == valid.p);
    CHECK(again.q == valid.q);
    CHECK(again.n == valid.n);
  }
}

TEST_CASE("validate_params rejects bad tuples") {
  SibmParams params;
  params.n = 4;
  params.a = 1;
  params.b = 1;
  params.alpha = 1;
  params.beta = 1;
  params.m = 1;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);  // a must exceed b

  params.a = 5;
  params.b = 1;
  params.n = 10;
  // p = 5*ln(10)/10 ~ 1.151 > 1
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);

  params.n = 101;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);  // odd
  params.n = 2;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);  // too small
  params.n = 100;
  params.alpha = 0;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);
  params.alpha = 1;
  params.beta = -0.5;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);
  params.beta = 0.1;
  params.m = 0;
  CHECK_THROWS_AS(validate_params(params), std::invalid_argument);
}

TEST_CASE("clamped rates saturate at 1") {
  const auto [p, q] = clamped_edge_rates(8, 9, 1);
  CHECK(p == 1.0);
  CHECK(q == doctest::Approx(std::log(8.0) / 8.0).epsilon(1e-14));
}

TEST_CASE("graph file format round-trips bit-exactly") {
  Rng rng = make_rng(42);
  const LabeledGraph graph = test::random_ssbm_graph(30, 6, 1, rng);
  std::ostringstream out;
  write_graph(graph, out);
  const std::string text = out.str();
  CHECK(text.rfind("n 30\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  std::istringstream in(text);
  const LabeledGraph back = read_graph(in);
  CHECK(back.partition.labels == graph.partition.labels);
  CHECK(back.adjacency == graph.adjacency);

  std::ostringstream out2;
  write_graph(back, out2);
  CHECK(out2.str() == text);
}

TEST_CASE("sample file format round-trips bit-exactly") {
  Rng rng = make_rng(7);
  SampleSet set;
  for (int j = 0; j < 5; ++j) {
    SpinSample sample;
    std::uniform_int_distribution<int> bit(0, 1);
    for (int i = 0; i < 17; ++i) sample.spins.push_back(bit(rng) ? 1 : -1);
    set.samples.push_back(std::move(sample));
  }
  std::ostringstream out;
  write_samples(set, out);
  std::istringstream in(out.str());
  const SampleSet back = read_samples(in);
  REQUIRE(back.m() == set.m());
  for (int j = 0; j < set.m(); ++j) CHECK(back.samples[j].spins == set.samples[j].spins);
  std::ostringstream out2;
  write_samples(back, out2);
  CHECK(out2.str() == out.str());
}

TEST_CASE("malformed files are rejected") {
  {
    std::istringstream in("n 4\nlabels 1 1 -1 -1\nedge 2 1\n");  // j <= i
    CHECK_THROWS_AS(read_graph(in), std::invalid_argument);
  }
  {
    std::istringstream in("n 4\nlabels 1 2 -1 -1\n");  // bad label
    CHECK_THROWS_AS(read_graph(in), std::invalid_argument);
  }
  {
    std::istringstream in("n 4\nlabels 1 1 1 -1\n");  // unbalanced
    CHECK_THROWS_AS(read_graph(in), std::invalid_argument);
  }
  {
    std::istringstream in("vertices 4\n");
    CHECK_THROWS_AS(read_graph(in), std::invalid_argument);
  }
  {
    std::istringstream in("1 -1 0 1\n");
    CHECK_THROWS_AS(read_samples(in), std::invalid_argument);
  }
}

TEST_CASE("check_graph catches broken invariants") {
  LabeledGraph graph = test::make_graph({1, 1, -1, -1}, {{0, 1}, {0, 2}});
  CHECK_NOTHROW(check_graph(graph));
  graph.adjacency[0].push_back(0);
  CHECK_THROWS_AS(check_graph(graph), std::invalid_argument);  // self-loop
  graph.adjacency[0].pop_back();
  graph.adjacency[3].push_back(1);  // asymmetric edge
  CHECK_THROWS_AS(check_graph(graph), std::invalid_argument);
}
