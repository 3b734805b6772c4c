#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "rmove/graph.hpp"
#include "support.hpp"

using namespace rmove;

TEST_CASE("edge list is canonicalized") {
  WeightedGraph g(4, {{2, 0, 1.0}, {0, 2, 0.5}, {3, 1, 2.0}, {0, 1, 1.0}});
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].weight == doctest::Approx(1.0));
  CHECK(g.edges()[1].u == 0);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.edges()[1].weight == doctest::Approx(1.5));  // parallel merged
  CHECK(g.edges()[2].u == 1);
  CHECK(g.edges()[2].v == 3);
  CHECK(g.total_weight() == doctest::Approx(4.5));
  CHECK(g.neighbors(0).size() == 2);
  CHECK(g.neighbors(2).size() == 1);
  CHECK(g.neighbors(2)[0].node == 0);
  CHECK(g.neighbors(2)[0].weight == doctest::Approx(1.5));
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1.0}}), parameter_error);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), parameter_error);
  CHECK_THROWS_AS(WeightedGraph(2, {{-1, 0, 1.0}}), parameter_error);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1.0}}), parameter_error);
  CHECK_THROWS_AS(WeightedGraph(-1, {}), parameter_error);
}

TEST_CASE("cut value and boundary weight on the path fixture") {
  Instance inst = testing::t1();
  CHECK(cut_value(inst.graph, inst.initial) == doctest::Approx(1.5));
  CHECK(boundary_weight(inst, 1) == doctest::Approx(1.5));
  CHECK(boundary_weight(inst, 0) == doctest::Approx(0.0));
  CHECK(boundary_weight(inst, 2) == doctest::Approx(1.0));
  CHECK(boundary_weight(inst, 3) == doctest::Approx(0.5));

  // Sum of boundary weights counts every cut edge twice.
  double sum = 0.0;
  for (int v = 0; v < inst.n(); ++v) sum += boundary_weight(inst, v);
  CHECK(sum == doctest::Approx(2.0 * cut_value(inst.graph, inst.initial)));
}

TEST_CASE("labeling validation") {
  CHECK_THROWS_AS(validate_labeling({2, {1, 3}}, 2), invalid_labeling_error);
  CHECK_THROWS_AS(validate_labeling({2, {1, 0}}, 2), invalid_labeling_error);
  CHECK_THROWS_AS(validate_labeling({2, {1}}, 2), invalid_labeling_error);
  CHECK_NOTHROW(validate_labeling({2, {1, 2}}, 2));
}

TEST_CASE("instance constructor validates terminals") {
  WeightedGraph g(3, {{0, 1, 1.0}});
  // terminal of partition 2 must carry initial label 2
  CHECK_THROWS_AS(Instance(g, {2, {1, 1, 2}}, {0, 1}, 0), parameter_error);
  CHECK_THROWS_AS(Instance(g, {2, {1, 2, 2}}, {0, 0}, 0), parameter_error);
  CHECK_THROWS_AS(Instance(g, {2, {1, 2, 2}}, {0, 5}, 0), parameter_error);
  CHECK_THROWS_AS(Instance(g, {2, {1, 2, 2}}, {0, 1}, -1), parameter_error);
  CHECK_NOTHROW(Instance(g, {2, {1, 2, 2}}, {0, 1}, 0));
}

TEST_CASE("moved set protects terminals") {
  Instance inst = testing::t1();
  Labeling moved_b{2, {1, 1, 1, 2}};
  CHECK(moved_set(inst, moved_b) == std::vector<int>{2});
  Labeling same = inst.initial;
  CHECK(moved_set(inst, same).empty());
  Labeling touches_terminal{2, {2, 1, 2, 2}};  // relabels terminal 0
  CHECK_THROWS_AS(moved_set(inst, touches_terminal), terminal_moved_error);
}

TEST_CASE("contracting a node into a terminal") {
  Instance inst = testing::t1();
  Contraction c = contract_into_terminal(inst, 1, 2);
  REQUIRE(c.instance.n() == 3);
  // Old ids: 0 -> 0, 2 -> 1, 3 -> 2; node 1 merged into node 3's image.
  CHECK(c.new_id == std::vector<int>{0, 2, 1, 2});
  REQUIRE(c.instance.graph.edge_count() == 2);
  CHECK(c.instance.graph.edges()[0].u == 0);
  CHECK(c.instance.graph.edges()[0].v == 2);
  CHECK(c.instance.graph.edges()[0].weight == doctest::Approx(2.0));
  CHECK(c.instance.graph.edges()[1].u == 1);
  CHECK(c.instance.graph.edges()[1].v == 2);
  CHECK(c.instance.graph.edges()[1].weight == doctest::Approx(3.0));
  CHECK(c.instance.initial.of == std::vector<int>{1, 2, 2});
  CHECK(c.instance.terminals == std::vector<int>{0, 2});
  CHECK(c.instance.r == inst.r);

  CHECK_THROWS_AS(contract_into_terminal(inst, 0, 2), terminal_contract_error);
  CHECK_THROWS_AS(contract_into_terminal(inst, 1, 3), parameter_error);
}

TEST_CASE("make_cut_result recomputes value and moved set") {
  Instance inst = testing::t1();
  CutResult res = make_cut_result(inst, {2, {1, 2, 2, 2}}, "test", 7);
  CHECK(res.cut_value == doctest::Approx(2.0));
  CHECK(res.moved == std::vector<int>{1});
  CHECK(res.algorithm == "test");
  REQUIRE(res.seed.has_value());
  CHECK(*res.seed == 7);
}

TEST_CASE("instance file round trip") {
  Instance inst = testing::t1(3);
  const std::string path = "t1_roundtrip.inst";
  save_instance(inst, path);
  Instance back = load_instance(path);
  CHECK(structurally_equal(inst, back));
  std::remove(path.c_str());
}

TEST_CASE("instance parser diagnostics") {
  const std::string path = "bad.inst";
  auto write = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };

  // comments and blank lines are fine
  write("# header\n4 1 2 0\n\n0 3\n1 1 2 2\n0 1 2.5\n");
  Instance ok = load_instance(path);
  CHECK(ok.n() == 4);
  CHECK(ok.graph.edges()[0].weight == doctest::Approx(2.5));

  write("");
  CHECK_THROWS_AS(load_instance(path), parse_error);
  write("4 1 2\n0 3\n1 1 2 2\n0 1 2.5\n");  // missing r
  CHECK_THROWS_AS(load_instance(path), parse_error);
  write("4 1 2 0\n0 3\n1 1 2 2\n0 1 oops\n");  // bad weight token
  CHECK_THROWS_AS(load_instance(path), parse_error);
  write("4 1 2 0\n0 9\n1 1 2 2\n0 1 2.5\n");  // terminal out of range
  CHECK_THROWS_AS(load_instance(path), parse_error);
  write("4 1 2 0\n0 3\n1 1 2 1\n0 1 2.5\n");  // terminal label mismatch
  CHECK_THROWS_AS(load_instance(path), parse_error);
  write("4 1 2 0\n0 3\n1 1 2 2\n");  // missing edge line
  CHECK_THROWS_AS(load_instance(path), parse_error);
  std::remove(path.c_str());
}

TEST_CASE("structural equality tolerates only small weight drift") {
  Instance a = testing::t1();
  WeightedGraph g(4, {{0, 1, 2.0 + 5e-10}, {1, 2, 1.0}, {2, 3, 2.0}, {1, 3, 0.5}});
  Instance b(std::move(g), a.initial, a.terminals, a.r);
  CHECK(!structurally_equal(a, b));
  CHECK(structurally_equal(a, b, 1e-9));
  CHECK(!structurally_equal(a, b.with_r(2), 1e-9));
}

TEST_CASE("cut tolerance scales with total weight") {
  Instance inst = testing::t1();
  CHECK(inst.graph.cut_tolerance() ==
        doctest::Approx(1e-9 * (1.0 + inst.graph.total_weight())));
}
