#pragma once

// Morphism and pair builders shared by the unit suites and the acceptance
// runner.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "catwl/hypergraph.hpp"

namespace testgen {

struct Step {
  catwl::Hypergraph target;
  catwl::HypergraphMorphism phi;
};

/// Pushforward of h along a random node-merging map: target nodes are the
/// distinct images "w<k>", edges keep their labels with f'(e) = a(f(e)).
inline Step random_collapse(const catwl::Hypergraph& h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int n = h.node_count();
  int groups = std::max(1, n - static_cast<int>(rng() % 3));
  std::vector<int> group(n);
  for (int v = 0; v < n; ++v) group[v] = static_cast<int>(rng() % groups);

  auto w_label = [](int g) { return "w" + std::to_string(g); };
  std::vector<std::string> nodes;
  {
    std::vector<bool> used(groups, false);
    for (int g : group) used[g] = true;
    for (int g = 0; g < groups; ++g)
      if (used[g]) nodes.push_back(w_label(g));
  }
  std::map<std::string, std::vector<std::string>> edges;
  for (int e = 0; e < h.edge_count(); ++e) {
    std::vector<std::string> members;
    for (int v : h.edge_nodes(e)) {
      std::string img = w_label(group[v]);
      bool seen = false;
      for (const auto& m : members) seen |= m == img;
      if (!seen) members.push_back(img);
    }
    edges[h.edge_labels()[e]] = std::move(members);
  }

  Step step;
  step.target = catwl::Hypergraph::make(nodes, edges);
  for (int v = 0; v < n; ++v)
    step.phi.node_map[h.node_labels()[v]] = w_label(group[v]);
  for (const auto& e : h.edge_labels()) step.phi.edge_map[e] = e;
  return step;
}

/// Random relabeling step (an isomorphism).
inline Step random_perm_step(const catwl::Hypergraph& h, std::uint64_t seed) {
  auto [target, phi] = catwl::random_permutation(h, seed);
  return {std::move(target), std::move(phi)};
}

/// Either a permutation or a collapse, chosen by the seed.
inline Step random_step(const catwl::Hypergraph& h, std::uint64_t seed) {
  return (seed & 1) ? random_collapse(h, seed) : random_perm_step(h, seed);
}

}  // namespace testgen
