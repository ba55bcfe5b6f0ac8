#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace catwl {

/// Finite hypergraph H = (V, E, f) where f maps every hyperedge to a
/// non-empty subset of V. Labels are strings; internally nodes and edges are
/// dense indices in sorted-label order, which fixes the canonical element
/// order used by serialization, lifting and refinement. Instances are
/// immutable after construction and safe to share across threads.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds and validates a hypergraph. Throws std::invalid_argument on
  /// duplicate labels, an empty hyperedge, a repeated node within one edge,
  /// or an edge referencing an unknown node. Distinct edges with equal node
  /// sets are allowed (f need not be injective).
  static Hypergraph make(
      std::vector<std::string> nodes,
      const std::map<std::string, std::vector<std::string>>& edges);

  int node_count() const { return static_cast<int>(node_labels_.size()); }
  int edge_count() const { return static_cast<int>(edge_labels_.size()); }

  const std::vector<std::string>& node_labels() const { return node_labels_; }
  const std::vector<std::string>& edge_labels() const { return edge_labels_; }

  /// Sorted node indices of f(e).
  const std::vector<int>& edge_nodes(int edge) const { return incidence_[edge]; }
  /// Sorted edge indices containing the node.
  const std::vector<int>& node_edges(int node) const { return node_edges_[node]; }

  int node_index(const std::string& label) const;  // -1 when absent
  int edge_index(const std::string& label) const;

  bool operator==(const Hypergraph&) const = default;

 private:
  std::vector<std::string> node_labels_;
  std::vector<std::string> edge_labels_;
  std::vector<std::vector<int>> incidence_;
  std::vector<std::vector<int>> node_edges_;
};

/// Morphism phi = (a, b): H -> H2 given by total maps on labels. Valid when
/// the square a_* . f = f' . b commutes for every hyperedge.
struct HypergraphMorphism {
  std::map<std::string, std::string> node_map;
  std::map<std::string, std::string> edge_map;
};

HypergraphMorphism identity_morphism(const Hypergraph& h);

/// Pointwise composition second . first.
HypergraphMorphism compose(const HypergraphMorphism& second,
                           const HypergraphMorphism& first);

/// True iff the image of f(e) under the node map equals f'(b(e)) for every
/// edge of h. Throws std::invalid_argument when a map is missing an id or
/// references one unknown to the codomain.
bool check_morphism(const HypergraphMorphism& phi, const Hypergraph& h,
                    const Hypergraph& h2);

/// Relabels h by the given permutations (perm[i] = image index in sorted
/// order). Returns the permuted hypergraph plus the witnessing isomorphism
/// h -> h'. Throws on non-bijective input.
std::pair<Hypergraph, HypergraphMorphism> permute(
    const Hypergraph& h, const std::vector<int>& node_perm,
    const std::vector<int>& edge_perm);

/// permute() with seeded uniformly random permutations.
std::pair<Hypergraph, HypergraphMorphism> random_permutation(
    const Hypergraph& h, std::uint64_t seed);

/// Exhaustive isomorphism oracle: true iff some node bijection plus edge
/// bijection makes all incidence sets correspond. Ground truth for the
/// expressivity suites. Throws std::invalid_argument beyond the size bounds
/// rather than degrading (factorial search).
bool brute_force_isomorphic(const Hypergraph& a, const Hypergraph& b,
                            int max_nodes = 10, int max_edges = 10);

struct GeneratorParams {
  int min_nodes = 4;
  int max_nodes = 8;
  int min_edges = 2;
  int max_edges = 6;
  int min_cardinality = 1;
  int max_cardinality = 3;
  /// Forbid singleton hyperedges so every lifted dim>0 element has a
  /// boundary of size > 1.
  bool require_cardinality_two = false;
  std::uint64_t seed = 0;
};

/// Seed-deterministic random hypergraph. Throws std::invalid_argument on an
/// empty range or a cardinality floor above the node count.
Hypergraph random_hypergraph(const GeneratorParams& params);

/// The fixed 6-node/4-edge pair that the standard hypergraph WL test cannot
/// separate although the hypergraphs are non-isomorphic:
///   H : e1={v1,v2,v6}, e2={v2,v3}, e3={v3,v4,v5}, e4={v5,v6}
///   H': e1'={v1',v2',v3'}, e2'={v2',v3'}, e3'={v4',v5',v6'}, e4'={v5',v6'}
std::pair<Hypergraph, Hypergraph> counterexample_pair();

/// Canonical JSON: {"nodes":[...],"edges":{"label":["node",...],...}} with
/// all keys and arrays sorted. Parse errors carry the byte position.
Hypergraph parse_hypergraph(const std::string& text);
std::string serialize_hypergraph(const Hypergraph& h);

}  // namespace catwl
