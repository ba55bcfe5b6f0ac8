#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "catwl/hypergraph.hpp"
#include "catwl/lifting.hpp"
#include "catwl/poset.hpp"

namespace catwl {

/// Configuration of a hypergraph-isomorphism-network run. Mirrors the
/// refinement knobs so WL and MPN runs stay comparable.
struct MpnConfig {
  AdjacencySet adjacency;
  AdjacencySemantics semantics = AdjacencySemantics::PairMultiset;
  int layers = 2;
  int width = 16;
};

/// Two-layer perceptron: w2 * relu(w1 * x + b1) + b2, row-major weights.
struct Mlp2 {
  int in = 0;
  int hidden = 0;
  int out = 0;
  std::vector<double> w1, b1, w2, b2;
};

/// Affine map w * x + b over a concatenated pair feature.
struct Mlp1 {
  int in = 0;
  int out = 0;
  std::vector<double> w, b;
};

struct HinLayerParams {
  std::array<Mlp2, 4> message;  // indexed by AdjacencyKind
  Mlp1 pair_lower;
  Mlp1 pair_upper;
  std::array<double, 4> eps{};
};

struct HinParams {
  int width = 0;
  std::uint64_t seed = 0;
  std::vector<HinLayerParams> layers;
};

/// Per-element feature vectors, element-major (size n * width).
struct FeatureState {
  int width = 0;
  int layer = 0;
  std::vector<double> values;

  const double* row(int element) const { return values.data() + element * width; }
};

/// Seed-deterministic random weights: entries from a symmetric uniform
/// distribution scaled by 1/sqrt(width); epsilons from the same unscaled
/// distribution. All four message kinds are generated regardless of the
/// enabled adjacency set, so a seed denotes one parameter set.
HinParams init_params(const MpnConfig& cfg, std::uint64_t seed);

/// One message-passing layer. Per element and enabled adjacency kind:
/// boundary/coboundary messages are the 2-layer perceptron of
/// (1+eps)*self + sum of neighbor features; lower/upper messages feed each
/// (neighbor, witness) entry through the pair perceptron on the concatenated
/// features (witness slot zero-filled under DistinctNeighbor semantics).
/// The update is the self feature plus the enabled message vectors.
/// Summands are accumulated in value-sorted order, so elements with equal
/// neighborhood feature multisets produce bit-identical results.
FeatureState hin_layer(const GradedPoset& p, const FeatureState& feats,
                       const HinLayerParams& params, const MpnConfig& cfg);

/// Applies cfg.layers layers starting from constant all-ones features.
FeatureState hin_run(const GradedPoset& p, const HinParams& params,
                     const MpnConfig& cfg);

/// Readout: per-element vectors quantized to multiples of tol (llround),
/// sorted lexicographically into a canonical multiset.
std::vector<std::vector<std::int64_t>> hin_readout(const FeatureState& feats,
                                                   double tol);

/// Lifts both hypergraphs with the functor, runs the network with shared
/// parameters, and compares the quantized readout multisets.
bool hin_distinguishes(const Hypergraph& h, const Hypergraph& h2,
                       FunctorId functor, const HinParams& params,
                       const MpnConfig& cfg, double tol,
                       const LiftConfig& lift_cfg = {});

}  // namespace catwl
