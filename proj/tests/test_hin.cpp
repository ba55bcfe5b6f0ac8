#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "catwl/hin.hpp"
#include "catwl/wl.hpp"
#include "doctest.h"

using namespace catwl;

namespace {

MpnConfig mpn(const std::string& adjacency, AdjacencySemantics semantics,
              int layers = 2, int width = 16) {
  MpnConfig cfg;
  cfg.adjacency = AdjacencySet::parse(adjacency);
  cfg.semantics = semantics;
  cfg.layers = layers;
  cfg.width = width;
  return cfg;
}

// Naive re-evaluation of the message formula, mirroring the implementation's
// loop order so results must match bit for bit.
std::vector<double> eval_mlp2(const Mlp2& m, const std::vector<double>& x) {
  std::vector<double> hidden(m.hidden), out(m.out);
  for (int r = 0; r < m.hidden; ++r) {
    double acc = m.b1[r];
    for (int c = 0; c < m.in; ++c) acc += m.w1[r * m.in + c] * x[c];
    hidden[r] = acc > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < m.out; ++r) {
    double acc = m.b2[r];
    for (int c = 0; c < m.hidden; ++c) acc += m.w2[r * m.hidden + c] * hidden[c];
    out[r] = acc;
  }
  return out;
}

}  // namespace

TEST_SUITE("hin") {

TEST_CASE("parameter generation is deterministic per seed") {
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset);
  HinParams a = init_params(cfg, 11);
  HinParams b = init_params(cfg, 11);
  HinParams c = init_params(cfg, 12);
  CHECK(a.layers[0].message[0].w1 == b.layers[0].message[0].w1);
  CHECK(a.layers[1].pair_upper.w == b.layers[1].pair_upper.w);
  CHECK(a.layers[0].eps == b.layers[0].eps);
  CHECK(a.layers[0].message[0].w1 != c.layers[0].message[0].w1);
}

TEST_CASE("invalid dimensions are rejected") {
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 0, 16);
  CHECK_THROWS_AS(init_params(cfg, 1), std::invalid_argument);
  cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 0);
  CHECK_THROWS_AS(init_params(cfg, 1), std::invalid_argument);
}

TEST_CASE("a layer computes the stated messages; eps=0 reduces to plain sums") {
  // Two elements a < b: B(b) = {a}, C(a) = {b}, no lower/upper peers.
  GradedPoset p = GradedPoset::make({{"a", 0, {}}, {"b", 1, {}}}, {{"a", "b"}});
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 1, 8);
  HinParams params = init_params(cfg, 21);
  for (int k = 0; k < 4; ++k) params.layers[0].eps[k] = 0.0;

  FeatureState feats;
  feats.width = 8;
  feats.values.assign(16, 0.0);
  for (int j = 0; j < 8; ++j) feats.values[j] = 0.25 * (j + 1);        // a
  for (int j = 0; j < 8; ++j) feats.values[8 + j] = -0.5 + 0.1 * j;    // b

  FeatureState next = hin_layer(p, feats, params.layers[0], cfg);

  std::vector<double> fa(feats.values.begin(), feats.values.begin() + 8);
  std::vector<double> fb(feats.values.begin() + 8, feats.values.end());
  auto plus = [](std::vector<double> x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  };

  // With eps = 0 the boundary message input for b is self + sum of children;
  // empty adjacencies still fire on the bare self term.
  std::vector<double> expected_b = fb;
  expected_b = plus(expected_b, eval_mlp2(params.layers[0].message[0], plus(fb, fa)));
  expected_b = plus(expected_b, eval_mlp2(params.layers[0].message[1], fb));
  expected_b = plus(expected_b, eval_mlp2(params.layers[0].message[2], fb));
  expected_b = plus(expected_b, eval_mlp2(params.layers[0].message[3], fb));
  for (int j = 0; j < 8; ++j) CHECK(next.row(1)[j] == expected_b[j]);

  std::vector<double> expected_a = fa;
  expected_a = plus(expected_a, eval_mlp2(params.layers[0].message[0], fa));
  expected_a = plus(expected_a, eval_mlp2(params.layers[0].message[1], plus(fa, fb)));
  expected_a = plus(expected_a, eval_mlp2(params.layers[0].message[2], fa));
  expected_a = plus(expected_a, eval_mlp2(params.layers[0].message[3], fa));
  for (int j = 0; j < 8; ++j) CHECK(next.row(0)[j] == expected_a[j]);
}

TEST_CASE("an isolated element receives only its self-term messages") {
  GradedPoset p = GradedPoset::make({{"a", 0, {}}}, {});
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 1, 8);
  HinParams params = init_params(cfg, 3);
  FeatureState feats;
  feats.width = 8;
  feats.values.assign(8, 1.0);
  FeatureState next = hin_layer(p, feats, params.layers[0], cfg);

  std::vector<double> expected(8, 1.0);
  for (int k = 0; k < 4; ++k) {
    std::vector<double> z(8);
    for (int j = 0; j < 8; ++j) z[j] = 1.0 + params.layers[0].eps[k];
    std::vector<double> m = eval_mlp2(params.layers[0].message[k], z);
    for (int j = 0; j < 8; ++j) expected[j] += m[j];
  }
  for (int j = 0; j < 8; ++j) CHECK(next.row(0)[j] == expected[j]);
}

TEST_CASE("zero layers leave the constant features") {
  GradedPoset p = incidence_lift(counterexample_pair().first);
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 1, 4);
  HinParams params = init_params(cfg, 5);
  cfg.layers = 0;
  FeatureState feats = hin_run(p, params, cfg);
  for (double v : feats.values) CHECK(v == 1.0);
}

TEST_CASE("WL-equivalent elements carry bit-identical features") {
  // v1 and v4 share a color at every refinement iteration of I(H).
  auto [h, hp] = counterexample_pair();
  GradedPoset p = incidence_lift(h);
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::DistinctNeighbor, 2, 16);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    HinParams params = init_params(cfg, seed);
    FeatureState feats = hin_run(p, params, cfg);
    const double* a = feats.row(p.require("v:v1"));
    const double* b = feats.row(p.require("v:v4"));
    CHECK(std::memcmp(a, b, sizeof(double) * cfg.width) == 0);
  }
}

TEST_CASE("relabeling permutes features without changing the readout") {
  GeneratorParams gp;
  gp.seed = 9;
  Hypergraph h = random_hypergraph(gp);
  auto [h2, phi] = random_permutation(h, 10);
  GradedPoset p = incidence_lift(h), q = incidence_lift(h2);

  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 8);
  HinParams params = init_params(cfg, 33);
  FeatureState fp = hin_run(p, params, cfg);
  FeatureState fq = hin_run(q, params, cfg);

  for (const auto& [from, to] : phi.node_map) {
    const double* a = fp.row(p.require("v:" + from));
    const double* b = fq.row(q.require("v:" + to));
    CHECK(std::memcmp(a, b, sizeof(double) * cfg.width) == 0);
  }
  CHECK(hin_readout(fp, 1e-6) == hin_readout(fq, 1e-6));
}

TEST_CASE("fixed seeds reproduce bit-identical readouts") {
  auto [h, hp] = counterexample_pair();
  GradedPoset p = symmetric_simplicial_lift(h);
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 16);
  HinParams params = init_params(cfg, 77);
  FeatureState a = hin_run(p, params, cfg);
  FeatureState b = hin_run(p, params, cfg);
  CHECK(a.values == b.values);
}

TEST_CASE("features stay finite on the corpus posets") {
  auto [h, hp] = counterexample_pair();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 16);
    HinParams params = init_params(cfg, seed);
    for (const Hypergraph* g : {&h, &hp}) {
      FeatureState f = hin_run(symmetric_simplicial_lift(*g), params, cfg);
      CHECK_NOTHROW(hin_readout(f, 1e-6));
    }
  }
}

TEST_CASE("a WL-silent pair stays silent for the network") {
  // Under pair semantics the refinement does not separate the pair, so the
  // network cannot either, for any seed.
  auto [h, hp] = counterexample_pair();
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 16);
  for (auto functor : {FunctorId::Incidence, FunctorId::SymmetricSimplicial}) {
    RefinementConfig rc;
    rc.semantics = AdjacencySemantics::PairMultiset;
    REQUIRE_FALSE(catwl_test(h, hp, functor, {}, rc).verdict.distinguished);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      HinParams params = init_params(cfg, seed);
      CHECK_FALSE(hin_distinguishes(h, hp, functor, params, cfg, 1e-6));
    }
  }
}

TEST_CASE("soundness: permuted pairs are never distinguished") {
  GeneratorParams gp;
  gp.seed = 4;
  Hypergraph h = random_hypergraph(gp);
  auto [h2, phi] = random_permutation(h, 5);
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::DistinctNeighbor, 2, 16);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HinParams params = init_params(cfg, seed);
    for (auto functor : {FunctorId::Incidence, FunctorId::SymmetricSimplicial})
      CHECK_FALSE(hin_distinguishes(h, h2, functor, params, cfg, 1e-6));
  }
}

TEST_CASE("random weights separate the counterexample under distinct semantics") {
  auto [h, hp] = counterexample_pair();
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::DistinctNeighbor, 2, 16);
  for (auto functor : {FunctorId::Incidence, FunctorId::SymmetricSimplicial}) {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      HinParams params = init_params(cfg, seed);
      if (hin_distinguishes(h, hp, functor, params, cfg, 1e-6)) ++hits;
    }
    CHECK(hits >= 9);
  }
}

TEST_CASE("perturbing eps_B moves some feature when boundaries exist") {
  auto [h, hp] = counterexample_pair();
  GradedPoset p = incidence_lift(h);
  MpnConfig cfg = mpn("bclu", AdjacencySemantics::PairMultiset, 2, 8);
  HinParams params = init_params(cfg, 50);
  FeatureState base = hin_run(p, params, cfg);
  params.layers[0].eps[0] += 0.5;
  FeatureState moved = hin_run(p, params, cfg);
  CHECK(base.values != moved.values);
}

TEST_CASE("width mismatches are rejected") {
  GradedPoset p = GradedPoset::make({{"a", 0, {}}}, {});
  MpnConfig cfg = mpn("b", AdjacencySemantics::PairMultiset, 1, 4);
  HinParams params = init_params(cfg, 1);
  FeatureState feats;
  feats.width = 3;
  feats.values.assign(3, 1.0);
  CHECK_THROWS_AS(hin_layer(p, feats, params.layers[0], cfg), std::invalid_argument);
}

}  // TEST_SUITE
