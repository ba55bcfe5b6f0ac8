#include <random>
#include <set>
#include <stdexcept>

#include "catwl/poset.hpp"
#include "doctest.h"

using namespace catwl;

namespace {

PosetElement el(std::string id, int dim) { return {std::move(id), dim, {}}; }

// Incidence poset of the running example: e1={v1,v2,v3}, e2={v1,v2,v4}.
GradedPoset running_incidence() {
  return GradedPoset::make(
      {el("v1", 0), el("v2", 0), el("v3", 0), el("v4", 0), el("e1", 1), el("e2", 1)},
      {{"v1", "e1"}, {"v2", "e1"}, {"v3", "e1"}, {"v1", "e2"}, {"v2", "e2"}, {"v4", "e2"}});
}

// Six-element poset with covers s2,s < s1; s3,s4 < s2; s4,s5 < s.
GradedPoset sample_three_level() {
  return GradedPoset::make(
      {el("s", 1), el("s1", 2), el("s2", 1), el("s3", 0), el("s4", 0), el("s5", 0)},
      {{"s2", "s1"}, {"s", "s1"}, {"s3", "s2"}, {"s4", "s2"}, {"s4", "s"}, {"s5", "s"}});
}

// Incidence posets of the HWL counterexample pair, built from the published
// edge sets.
GradedPoset counterexample_incidence_left() {
  return GradedPoset::make(
      {el("v1", 0), el("v2", 0), el("v3", 0), el("v4", 0), el("v5", 0), el("v6", 0),
       el("e1", 1), el("e2", 1), el("e3", 1), el("e4", 1)},
      {{"v1", "e1"}, {"v2", "e1"}, {"v6", "e1"},
       {"v2", "e2"}, {"v3", "e2"},
       {"v3", "e3"}, {"v4", "e3"}, {"v5", "e3"},
       {"v5", "e4"}, {"v6", "e4"}});
}

GradedPoset counterexample_incidence_right() {
  return GradedPoset::make(
      {el("v1", 0), el("v2", 0), el("v3", 0), el("v4", 0), el("v5", 0), el("v6", 0),
       el("e1", 1), el("e2", 1), el("e3", 1), el("e4", 1)},
      {{"v1", "e1"}, {"v2", "e1"}, {"v3", "e1"},
       {"v2", "e2"}, {"v3", "e2"},
       {"v4", "e3"}, {"v5", "e3"}, {"v6", "e3"},
       {"v5", "e4"}, {"v6", "e4"}});
}

// Random 2-level poset: n dim-0 elements, m dim-1 elements, each covering a
// random non-empty subset.
GradedPoset random_two_level(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int n = 3 + static_cast<int>(rng() % 5);
  int m = 2 + static_cast<int>(rng() % 4);
  std::vector<PosetElement> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < n; ++i) elements.push_back(el("a" + std::to_string(i), 0));
  for (int j = 0; j < m; ++j) {
    std::string id = "b" + std::to_string(j);
    elements.push_back(el(id, 1));
    int picks = 1 + static_cast<int>(rng() % n);
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < picks)
      chosen.insert(static_cast<int>(rng() % n));
    for (int c : chosen) covers.emplace_back("a" + std::to_string(c), id);
  }
  return GradedPoset::make(std::move(elements), covers);
}

std::set<std::string> ids_of(const GradedPoset& p, const std::vector<int>& idx) {
  std::set<std::string> out;
  for (int i : idx) out.insert(p.element(i).id);
  return out;
}

}  // namespace

TEST_SUITE("poset") {

TEST_CASE("validate_graded accepts the running incidence poset") {
  CHECK(validate_graded(running_incidence()).empty());
  CHECK(validate_graded(sample_three_level()).empty());
}

TEST_CASE("validate_graded reports a dimension gap") {
  GradedPoset p = GradedPoset::make({el("a", 0), el("b", 2)}, {{"a", "b"}});
  auto violations = validate_graded(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message.find("gap") != std::string::npos);
  CHECK(violations[0].message.find("a") != std::string::npos);
}

TEST_CASE("validate_graded reports a cover cycle") {
  GradedPoset p = GradedPoset::make({el("a", 0), el("b", 1)}, {{"a", "b"}, {"b", "a"}});
  auto violations = validate_graded(p);
  bool cycle_reported = false;
  for (const auto& v : violations)
    cycle_reported |= v.message.find("cycle") != std::string::npos;
  CHECK(cycle_reported);
}

TEST_CASE("boundary and coboundary follow the covers") {
  GradedPoset p = running_incidence();
  CHECK(ids_of(p, boundary(p, p.require("e1"))) ==
        std::set<std::string>{"v1", "v2", "v3"});
  CHECK(boundary(p, p.require("v1")).empty());
  CHECK(ids_of(p, coboundary(p, p.require("v1"))) == std::set<std::string>{"e1", "e2"});
  CHECK(coboundary(p, p.require("e1")).empty());
  CHECK_THROWS_AS(boundary(p, 99), std::invalid_argument);
  CHECK_THROWS_AS(p.require("nope"), std::invalid_argument);
}

TEST_CASE("lower and upper adjacency on the three-level sample") {
  GradedPoset p = sample_three_level();
  int s = p.require("s");

  auto low = lower_adjacency(p, s, AdjacencySemantics::PairMultiset);
  REQUIRE(low.size() == 1);
  CHECK(p.element(low[0].neighbor).id == "s2");
  CHECK(p.element(low[0].witness).id == "s4");

  auto up = upper_adjacency(p, s, AdjacencySemantics::PairMultiset);
  REQUIRE(up.size() == 1);
  CHECK(p.element(up[0].neighbor).id == "s2");
  CHECK(p.element(up[0].witness).id == "s1");

  CHECK(upper_adjacency(p, p.require("s1"), AdjacencySemantics::PairMultiset).empty());
}

TEST_CASE("lower adjacency separates the counterexample's e2 under distinct semantics") {
  GradedPoset left = counterexample_incidence_left();
  GradedPoset right = counterexample_incidence_right();

  auto dl = lower_adjacency(left, left.require("e2"), AdjacencySemantics::DistinctNeighbor);
  std::set<std::string> names;
  for (const auto& e : dl) names.insert(left.element(e.neighbor).id);
  CHECK(names == std::set<std::string>{"e1", "e3"});

  auto dr = lower_adjacency(right, right.require("e2"), AdjacencySemantics::DistinctNeighbor);
  REQUIRE(dr.size() == 1);
  CHECK(right.element(dr[0].neighbor).id == "e1");

  // Literal pair semantics sees two shared children instead.
  auto pr = lower_adjacency(right, right.require("e2"), AdjacencySemantics::PairMultiset);
  REQUIRE(pr.size() == 2);
  CHECK(right.element(pr[0].neighbor).id == "e1");
  CHECK(right.element(pr[1].neighbor).id == "e1");
  std::set<std::string> witnesses = {right.element(pr[0].witness).id,
                                     right.element(pr[1].witness).id};
  CHECK(witnesses == std::set<std::string>{"v2", "v3"});
}

TEST_CASE("upper adjacency of a shared node goes through its unique edge") {
  GradedPoset p = running_incidence();
  auto up = upper_adjacency(p, p.require("v3"), AdjacencySemantics::PairMultiset);
  REQUIRE(up.size() == 2);
  std::set<std::string> neighbors;
  for (const auto& e : up) {
    neighbors.insert(p.element(e.neighbor).id);
    CHECK(p.element(e.witness).id == "e1");
  }
  CHECK(neighbors == std::set<std::string>{"v1", "v2"});

  auto distinct = upper_adjacency(p, p.require("v3"), AdjacencySemantics::DistinctNeighbor);
  CHECK(distinct.size() == 2);
}

TEST_CASE("adjacency symmetry and the pair-cardinality identity hold on random posets") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GradedPoset p = random_two_level(seed);
    for (int i = 0; i < p.size(); ++i) {
      // sigma' in N_down(sigma) iff sigma in N_down(sigma'), distinct form.
      for (const auto& e : lower_adjacency(p, i, AdjacencySemantics::DistinctNeighbor)) {
        auto back = lower_adjacency(p, e.neighbor, AdjacencySemantics::DistinctNeighbor);
        bool found = false;
        for (const auto& b : back) found |= b.neighbor == i;
        CHECK(found);
      }
      // |pair multiset| = sum over children of (|coboundary(child)| - 1).
      std::size_t expected = 0;
      for (int t : boundary(p, i)) expected += coboundary(p, t).size() - 1;
      CHECK(lower_adjacency(p, i, AdjacencySemantics::PairMultiset).size() == expected);
      // Boundary matches the stored covers.
      for (int t : boundary(p, i)) {
        bool in_covers = false;
        for (const auto& [a, b] : p.covers()) in_covers |= a == t && b == i;
        CHECK(in_covers);
      }
    }
  }
}

TEST_CASE("brute-force poset isomorphism") {
  GradedPoset p = running_incidence();
  CHECK(poset_isomorphic_bruteforce(p, p));

  CHECK_FALSE(poset_isomorphic_bruteforce(counterexample_incidence_left(),
                                          counterexample_incidence_right()));

  // Different dimension histograms reject without search.
  GradedPoset q = GradedPoset::make({el("a", 0), el("b", 0)}, {});
  GradedPoset r = GradedPoset::make({el("a", 0), el("b", 1)}, {});
  CHECK_FALSE(poset_isomorphic_bruteforce(q, r));
}

TEST_CASE("poset oracle behaves as an equivalence relation on a small set") {
  std::vector<GradedPoset> posets;
  for (std::uint64_t seed = 0; seed < 5; ++seed) posets.push_back(random_two_level(seed));
  for (std::size_t i = 0; i < posets.size(); ++i) {
    if (posets[i].size() > 14) continue;
    CHECK(poset_isomorphic_bruteforce(posets[i], posets[i]));
    for (std::size_t j = 0; j < posets.size(); ++j) {
      if (posets[j].size() > 14) continue;
      bool ij = poset_isomorphic_bruteforce(posets[i], posets[j]);
      CHECK(ij == poset_isomorphic_bruteforce(posets[j], posets[i]));
      for (std::size_t k = 0; k < posets.size(); ++k) {
        if (posets[k].size() > 14) continue;
        if (ij && poset_isomorphic_bruteforce(posets[j], posets[k]))
          CHECK(poset_isomorphic_bruteforce(posets[i], posets[k]));
      }
    }
  }
}

TEST_CASE("poset oracle refuses oversize inputs") {
  std::vector<PosetElement> elements;
  for (int i = 0; i < 15; ++i) elements.push_back(el("x" + std::to_string(i), 0));
  GradedPoset big = GradedPoset::make(std::move(elements), {});
  CHECK_THROWS_WITH_AS(poset_isomorphic_bruteforce(big, big),
                       doctest::Contains("size bound"), std::invalid_argument);
}

TEST_CASE("hasse_dot renders deterministically") {
  GradedPoset empty;
  std::string dot = hasse_dot(empty);
  CHECK(dot.find("digraph") != std::string::npos);

  GradedPoset p = running_incidence();
  std::string rendered = hasse_dot(p);
  CHECK(rendered == hasse_dot(p));
  std::size_t arrows = 0;
  for (std::size_t at = rendered.find("->"); at != std::string::npos;
       at = rendered.find("->", at + 1))
    ++arrows;
  CHECK(arrows == 6);
  CHECK(rendered.find("rank=same") != std::string::npos);
}

TEST_CASE("poset JSON round-trips") {
  GradedPoset p = sample_three_level();
  GradedPoset q = poset_from_json(poset_to_json(p));
  REQUIRE(q.size() == p.size());
  for (int i = 0; i < p.size(); ++i) {
    CHECK(q.element(i).id == p.element(i).id);
    CHECK(q.element(i).dim == p.element(i).dim);
  }
  CHECK(q.covers() == p.covers());
  CHECK_THROWS_AS(poset_from_json("not json"), std::invalid_argument);
}

TEST_CASE("construction rejects duplicate and unknown ids") {
  CHECK_THROWS_AS(GradedPoset::make({el("a", 0), el("a", 0)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GradedPoset::make({el("a", 0)}, {{"a", "zz"}}), std::invalid_argument);
}

}  // TEST_SUITE
