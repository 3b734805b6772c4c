#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rmove/errors.hpp"
#include "rmove/instances.hpp"
#include "rmove/rng.hpp"
#include "support.hpp"

using namespace rmove;

TEST_CASE("block model structure") {
  SbmParams params;
  params.n = 12;
  params.k = 3;
  params.seed = 5;
  params.r = 2;

  SUBCASE("pure blocks have no initial cut") {
    params.p_in = 1.0;
    params.p_out = 0.0;
    Instance inst = gen_sbm(params);
    CHECK(inst.n() == 12);
    CHECK(inst.k() == 3);
    CHECK(inst.r == 2);
    CHECK(cut_value(inst.graph, inst.initial) == doctest::Approx(0.0));
    CHECK(inst.terminals == std::vector<int>{0, 4, 8});
    for (int b = 0; b < 3; ++b)
      for (int v = b * 4; v < (b + 1) * 4; ++v) CHECK(inst.initial.of[v] == b + 1);
  }
  SUBCASE("complete graph cuts every crossing pair") {
    params.p_in = 1.0;
    params.p_out = 1.0;
    Instance inst = gen_sbm(params);
    CHECK(inst.graph.edge_count() == 12 * 11 / 2);
    int crossing = 0;
    for (int u = 0; u < 12; ++u)
      for (int v = u + 1; v < 12; ++v)
        if (u / 4 != v / 4) ++crossing;
    CHECK(cut_value(inst.graph, inst.initial) == doctest::Approx(crossing));
  }
  SUBCASE("fixed seed reproduces the instance") {
    params.p_in = 0.6;
    params.p_out = 0.2;
    Instance a = gen_sbm(params);
    Instance b = gen_sbm(params);
    CHECK(structurally_equal(a, b));
  }
  SUBCASE("relabeling changes labels but never edges or terminals") {
    params.p_in = 0.6;
    params.p_out = 0.2;
    Instance keep = gen_sbm(params);
    params.relabel = RelabelMode::uniform_random;
    Instance shuffled = gen_sbm(params);
    REQUIRE(keep.graph.edge_count() == shuffled.graph.edge_count());
    for (int e = 0; e < keep.graph.edge_count(); ++e) {
      CHECK(keep.graph.edges()[e].u == shuffled.graph.edges()[e].u);
      CHECK(keep.graph.edges()[e].v == shuffled.graph.edges()[e].v);
    }
    CHECK(shuffled.terminals == keep.terminals);
    for (int b = 0; b < 3; ++b) CHECK(shuffled.initial.of[b * 4] == b + 1);
    for (int v = 0; v < 12; ++v) {
      CHECK(shuffled.initial.of[v] >= 1);
      CHECK(shuffled.initial.of[v] <= 3);
    }
  }
  SUBCASE("parameter validation") {
    params.k = 5;  // does not divide 12
    CHECK_THROWS_AS(gen_sbm(params), parameter_error);
    params.k = 3;
    params.p_in = 1.5;
    CHECK_THROWS_AS(gen_sbm(params), parameter_error);
    params.p_in = 0.5;
    params.n = 0;
    CHECK_THROWS_AS(gen_sbm(params), parameter_error);
  }
}

TEST_CASE("worst-case family matches the handmade construction") {
  for (int r : {1, 2, 4}) {
    Instance gen = gen_integrality_gap(r, 0.1, 3);
    Instance hand = rmove::testing::handmade_gap(r, 0.1, 3);
    CHECK(structurally_equal(gen, hand));
    CHECK(cut_value(gen.graph, gen.initial) == doctest::Approx(0.1));
  }
  CHECK_THROWS_AS(gen_integrality_gap(0, 0.1, 3), parameter_error);
  CHECK_THROWS_AS(gen_integrality_gap(1, 0.1, 0), parameter_error);
  CHECK_THROWS_AS(gen_integrality_gap(1, -1.0, 3), parameter_error);
  CHECK_THROWS_AS(gen_integrality_gap(1, 0.0, 3), parameter_error);

  // tail_len = 1 leaves terminal 2 isolated
  Instance lone = gen_integrality_gap(2, 0.5, 1);
  CHECK(lone.n() == 5);
  CHECK(lone.graph.neighbors(4).empty());
}

TEST_CASE("densest-subgraph reduction") {
  WeightedGraph triangle(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  Instance inst = gen_densest_reduction(triangle, 2);
  const int n = 3, m = 3;
  CHECK(inst.n() == 2 * n * n + 2 * n + 2);
  CHECK(inst.k() == 2);
  CHECK(inst.r == 2);
  CHECK(inst.terminals[0] == n);
  CHECK(inst.terminals[1] == inst.n() - 1);
  CHECK(cut_value(inst.graph, inst.initial) == doctest::Approx(2 * m + n));

  SUBCASE("moving X out of the copy changes the cut by -2|E(X)|") {
    Rng rng(17, "reduction-check");
    for (int trial = 0; trial < 20; ++trial) {
      Labeling moved = inst.initial;
      std::set<int> x;
      const int size = static_cast<int>(rng.uniform_int(0, n));
      while (static_cast<int>(x.size()) < size)
        x.insert(static_cast<int>(rng.uniform_int(0, n - 1)));
      for (int v : x) moved.of[v] = 2;
      int internal = 0;
      for (const Edge& e : triangle.edges())
        if (x.count(e.u) && x.count(e.v)) ++internal;
      CHECK(cut_value(inst.graph, moved) ==
            doctest::Approx(2 * m + n - 2 * internal));
    }
  }
  SUBCASE("node bound is enforced") {
    CHECK_THROWS_AS(gen_densest_reduction(triangle, 2, 2), capacity_error);
    CHECK_NOTHROW(gen_densest_reduction(triangle, 2, 3));
  }
}

namespace {

struct TempFile {
  std::string path;
  TempFile(std::string name, const std::string& text) : path(std::move(name)) {
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("labeled edge list loader") {
  // labels: 7 appears 3 times, 4 twice, 9 once
  TempFile members("members.txt",
                   "10 7\n11 7\n12 7\n20 4\n21 4\n30 9\n");
  TempFile edges("edges.txt",
                 "10 11\n11 10\n11 12\n10 20\n20 21\n21 30\n30 30\n");

  SUBCASE("two largest blocks induce the instance") {
    int dropped = -1;
    Instance inst = load_labeled_edgelist(edges.path, members.path, 2, &dropped);
    CHECK(dropped == 1);
    // kept nodes ascending: 10,11,12 (block 7 -> partition 1), 20,21 (4 -> 2)
    CHECK(inst.n() == 5);
    CHECK(inst.k() == 2);
    CHECK(inst.initial.of == std::vector<int>{1, 1, 1, 2, 2});
    CHECK(inst.terminals == std::vector<int>{0, 3});
    // duplicate 10-11/11-10 collapses; 21-30 leaves with block 9
    REQUIRE(inst.graph.edge_count() == 4);
    CHECK(inst.graph.edges()[0].u == 0);
    CHECK(inst.graph.edges()[0].v == 1);
    CHECK(inst.graph.edges()[0].weight == doctest::Approx(1.0));
    CHECK(inst.r == 0);
  }
  SUBCASE("all three blocks") {
    Instance inst = load_labeled_edgelist(edges.path, members.path, 3, nullptr);
    CHECK(inst.n() == 6);
    CHECK(inst.k() == 3);
    // block sizes 3,2,1 -> labels 7,4,9 -> partitions 1,2,3
    CHECK(inst.initial.of == std::vector<int>{1, 1, 1, 2, 2, 3});
    CHECK(inst.graph.edge_count() == 5);
  }
  SUBCASE("requesting more blocks than labels") {
    CHECK_THROWS_AS(load_labeled_edgelist(edges.path, members.path, 4, nullptr),
                    format_error);
  }
  SUBCASE("ties in block size break toward the smaller label") {
    TempFile tied_members("tied_members.txt", "0 5\n1 5\n2 3\n3 3\n");
    TempFile tied_edges("tied_edges.txt", "0 1\n2 3\n");
    Instance inst =
        load_labeled_edgelist(tied_edges.path, tied_members.path, 2, nullptr);
    // label 3 wins partition 1 on the tie
    CHECK(inst.initial.of == std::vector<int>{2, 2, 1, 1});
  }
  SUBCASE("edge endpoint without membership") {
    TempFile orphan("orphan_edges.txt", "10 99\n");
    CHECK_THROWS_AS(load_labeled_edgelist(orphan.path, members.path, 2, nullptr),
                    format_error);
  }
  SUBCASE("conflicting membership lines") {
    TempFile conflict("conflict_members.txt", "10 7\n10 4\n");
    CHECK_THROWS_AS(load_labeled_edgelist(edges.path, conflict.path, 2, nullptr),
                    format_error);
  }
  SUBCASE("malformed line is a parse error") {
    TempFile bad("bad_edges.txt", "10 11 12\n");
    CHECK_THROWS_AS(load_labeled_edgelist(bad.path, members.path, 2, nullptr),
                    parse_error);
    CHECK_THROWS_AS(load_labeled_edgelist("no_such_file.txt", members.path, 2,
                                          nullptr),
                    parse_error);
  }
  SUBCASE("fewer than two blocks requested") {
    CHECK_THROWS_AS(load_labeled_edgelist(edges.path, members.path, 1, nullptr),
                    parameter_error);
  }
}
