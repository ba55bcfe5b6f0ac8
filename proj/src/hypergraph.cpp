#include "catwl/hypergraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace catwl {

namespace {

int lookup(const std::vector<std::string>& sorted_labels, const std::string& label) {
  auto it = std::lower_bound(sorted_labels.begin(), sorted_labels.end(), label);
  if (it == sorted_labels.end() || *it != label) return -1;
  return static_cast<int>(it - sorted_labels.begin());
}

bool is_permutation_of_indices(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

Hypergraph Hypergraph::make(
    std::vector<std::string> nodes,
    const std::map<std::string, std::vector<std::string>>& edges) {
  Hypergraph h;
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw std::invalid_argument("duplicate node label");
  h.node_labels_ = std::move(nodes);

  for (const auto& [label, members] : edges) {
    if (members.empty())
      throw std::invalid_argument("empty hyperedge '" + label + "'");
    std::vector<int> idx;
    idx.reserve(members.size());
    for (const auto& m : members) {
      int i = lookup(h.node_labels_, m);
      if (i < 0)
        throw std::invalid_argument("edge '" + label + "' references unknown node '" + m + "'");
      idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw std::invalid_argument("edge '" + label + "' repeats a node");
    h.edge_labels_.push_back(label);  // std::map iterates in sorted order
    h.incidence_.push_back(std::move(idx));
  }

  h.node_edges_.assign(h.node_labels_.size(), {});
  for (int e = 0; e < h.edge_count(); ++e)
    for (int v : h.incidence_[e]) h.node_edges_[v].push_back(e);
  return h;
}

int Hypergraph::node_index(const std::string& label) const {
  return lookup(node_labels_, label);
}

int Hypergraph::edge_index(const std::string& label) const {
  return lookup(edge_labels_, label);
}

HypergraphMorphism identity_morphism(const Hypergraph& h) {
  HypergraphMorphism phi;
  for (const auto& n : h.node_labels()) phi.node_map[n] = n;
  for (const auto& e : h.edge_labels()) phi.edge_map[e] = e;
  return phi;
}

HypergraphMorphism compose(const HypergraphMorphism& second,
                           const HypergraphMorphism& first) {
  HypergraphMorphism out;
  for (const auto& [k, v] : first.node_map) {
    auto it = second.node_map.find(v);
    if (it == second.node_map.end())
      throw std::invalid_argument("composition: node '" + v + "' missing from second morphism");
    out.node_map[k] = it->second;
  }
  for (const auto& [k, v] : first.edge_map) {
    auto it = second.edge_map.find(v);
    if (it == second.edge_map.end())
      throw std::invalid_argument("composition: edge '" + v + "' missing from second morphism");
    out.edge_map[k] = it->second;
  }
  return out;
}

bool check_morphism(const HypergraphMorphism& phi, const Hypergraph& h,
                    const Hypergraph& h2) {
  // Resolve the maps to dense indices; any gap is an error, not a false.
  std::vector<int> a(h.node_count()), b(h.edge_count());
  for (int v = 0; v < h.node_count(); ++v) {
    auto it = phi.node_map.find(h.node_labels()[v]);
    if (it == phi.node_map.end())
      throw std::invalid_argument("morphism misses node '" + h.node_labels()[v] + "'");
    int img = h2.node_index(it->second);
    if (img < 0)
      throw std::invalid_argument("morphism maps to unknown node '" + it->second + "'");
    a[v] = img;
  }
  for (int e = 0; e < h.edge_count(); ++e) {
    auto it = phi.edge_map.find(h.edge_labels()[e]);
    if (it == phi.edge_map.end())
      throw std::invalid_argument("morphism misses edge '" + h.edge_labels()[e] + "'");
    int img = h2.edge_index(it->second);
    if (img < 0)
      throw std::invalid_argument("morphism maps to unknown edge '" + it->second + "'");
    b[e] = img;
  }

  for (int e = 0; e < h.edge_count(); ++e) {
    std::set<int> image;
    for (int v : h.edge_nodes(e)) image.insert(a[v]);
    const auto& target = h2.edge_nodes(b[e]);
    if (!std::equal(image.begin(), image.end(), target.begin(), target.end()))
      return false;
  }
  return true;
}

std::pair<Hypergraph, HypergraphMorphism> permute(
    const Hypergraph& h, const std::vector<int>& node_perm,
    const std::vector<int>& edge_perm) {
  if (!is_permutation_of_indices(node_perm, h.node_count()))
    throw std::invalid_argument("node permutation is not a bijection");
  if (!is_permutation_of_indices(edge_perm, h.edge_count()))
    throw std::invalid_argument("edge permutation is not a bijection");

  std::map<std::string, std::vector<std::string>> edges;
  for (int e = 0; e < h.edge_count(); ++e) {
    std::vector<std::string> members;
    for (int v : h.edge_nodes(e)) members.push_back(h.node_labels()[node_perm[v]]);
    edges[h.edge_labels()[edge_perm[e]]] = std::move(members);
  }
  Hypergraph out = Hypergraph::make(h.node_labels(), edges);

  HypergraphMorphism phi;
  for (int v = 0; v < h.node_count(); ++v)
    phi.node_map[h.node_labels()[v]] = h.node_labels()[node_perm[v]];
  for (int e = 0; e < h.edge_count(); ++e)
    phi.edge_map[h.edge_labels()[e]] = h.edge_labels()[edge_perm[e]];
  return {std::move(out), std::move(phi)};
}

std::pair<Hypergraph, HypergraphMorphism> random_permutation(
    const Hypergraph& h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> np(h.node_count()), ep(h.edge_count());
  std::iota(np.begin(), np.end(), 0);
  std::iota(ep.begin(), ep.end(), 0);
  std::shuffle(np.begin(), np.end(), rng);
  std::shuffle(ep.begin(), ep.end(), rng);
  return permute(h, np, ep);
}

bool brute_force_isomorphic(const Hypergraph& a, const Hypergraph& b,
                            int max_nodes, int max_edges) {
  if (a.node_count() > max_nodes || b.node_count() > max_nodes ||
      a.edge_count() > max_edges || b.edge_count() > max_edges)
    throw std::invalid_argument("brute_force_isomorphic: size bound exceeded");

  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
    return false;

  const int n = a.node_count();
  std::vector<int> card_a, card_b;
  for (int e = 0; e < a.edge_count(); ++e) card_a.push_back(a.edge_nodes(e).size());
  for (int e = 0; e < b.edge_count(); ++e) card_b.push_back(b.edge_nodes(e).size());
  std::sort(card_a.begin(), card_a.end());
  std::sort(card_b.begin(), card_b.end());
  if (card_a != card_b) return false;

  std::vector<int> deg_a(n), deg_b(n);
  for (int v = 0; v < n; ++v) deg_a[v] = a.node_edges(v).size();
  for (int v = 0; v < n; ++v) deg_b[v] = b.node_edges(v).size();

  // Sorted incidence sets of b, as the multiset to match.
  std::vector<std::vector<int>> b_edges;
  for (int e = 0; e < b.edge_count(); ++e) b_edges.push_back(b.edge_nodes(e));
  std::sort(b_edges.begin(), b_edges.end());

  // Backtracking over node images, pruned by degree. A node bijection
  // extends to an edge bijection iff the image multiset of incidence sets
  // equals b's.
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);

  auto full_check = [&]() {
    std::vector<std::vector<int>> mapped;
    mapped.reserve(a.edge_count());
    for (int e = 0; e < a.edge_count(); ++e) {
      std::vector<int> s;
      s.reserve(a.edge_nodes(e).size());
      for (int v : a.edge_nodes(e)) s.push_back(image[v]);
      std::sort(s.begin(), s.end());
      mapped.push_back(std::move(s));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == b_edges;
  };

  std::function<bool(int)> place = [&](int v) -> bool {
    if (v == n) return full_check();
    for (int w = 0; w < n; ++w) {
      if (used[w] || deg_a[v] != deg_b[w]) continue;
      used[w] = true;
      image[v] = w;
      if (place(v + 1)) return true;
      used[w] = false;
      image[v] = -1;
    }
    return false;
  };
  return place(0);
}

Hypergraph random_hypergraph(const GeneratorParams& params) {
  if (params.min_nodes > params.max_nodes || params.min_edges > params.max_edges ||
      params.min_cardinality > params.max_cardinality || params.min_nodes < 1 ||
      params.min_edges < 0 || params.min_cardinality < 1)
    throw std::invalid_argument("random_hypergraph: empty range");
  int min_card = params.require_cardinality_two ? std::max(2, params.min_cardinality)
                                                : params.min_cardinality;
  if (min_card > params.max_nodes)
    throw std::invalid_argument("random_hypergraph: cardinality exceeds node count");

  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int n = uniform(std::max(params.min_nodes, min_card), params.max_nodes);
  int m = uniform(params.min_edges, params.max_edges);

  // Zero-padded labels keep sorted-label order equal to numeric order.
  int width = std::to_string(std::max(n, m)).size();
  auto label = [width](char prefix, int i) {
    std::string num = std::to_string(i + 1);
    return prefix + std::string(width - num.size(), '0') + num;
  };

  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(label('v', i));

  std::map<std::string, std::vector<std::string>> edges;
  std::vector<int> pool(n);
  for (int e = 0; e < m; ++e) {
    int c = uniform(min_card, std::min(params.max_cardinality, n));
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: first c entries become the edge.
    for (int i = 0; i < c; ++i) std::swap(pool[i], pool[uniform(i, n - 1)]);
    std::vector<std::string> members;
    for (int i = 0; i < c; ++i) members.push_back(nodes[pool[i]]);
    edges[label('e', e)] = std::move(members);
  }
  return Hypergraph::make(nodes, edges);
}

std::pair<Hypergraph, Hypergraph> counterexample_pair() {
  Hypergraph h = Hypergraph::make(
      {"v1", "v2", "v3", "v4", "v5", "v6"},
      {{"e1", {"v1", "v2", "v6"}},
       {"e2", {"v2", "v3"}},
       {"e3", {"v3", "v4", "v5"}},
       {"e4", {"v5", "v6"}}});
  Hypergraph hp = Hypergraph::make(
      {"v1'", "v2'", "v3'", "v4'", "v5'", "v6'"},
      {{"e1'", {"v1'", "v2'", "v3'"}},
       {"e2'", {"v2'", "v3'"}},
       {"e3'", {"v4'", "v5'", "v6'"}},
       {"e4'", {"v5'", "v6'"}}});
  return {std::move(h), std::move(hp)};
}

Hypergraph parse_hypergraph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("hypergraph syntax error: ") + err.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges") ||
      !j["nodes"].is_array() || !j["edges"].is_object())
    throw std::invalid_argument(
        "hypergraph must be {\"nodes\":[...],\"edges\":{...}}");

  std::vector<std::string> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw std::invalid_argument("node labels must be strings");
    nodes.push_back(n.get<std::string>());
  }
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& [label, members] : j["edges"].items()) {
    if (!members.is_array())
      throw std::invalid_argument("edge '" + label + "' must map to an array");
    std::vector<std::string> ms;
    for (const auto& m : members) {
      if (!m.is_string()) throw std::invalid_argument("edge members must be strings");
      ms.push_back(m.get<std::string>());
    }
    edges[label] = std::move(ms);
  }
  return Hypergraph::make(std::move(nodes), edges);
}

std::string serialize_hypergraph(const Hypergraph& h) {
  nlohmann::json j;
  j["nodes"] = h.node_labels();
  j["edges"] = nlohmann::json::object();
  for (int e = 0; e < h.edge_count(); ++e) {
    std::vector<std::string> members;
    for (int v : h.edge_nodes(e)) members.push_back(h.node_labels()[v]);
    j["edges"][h.edge_labels()[e]] = members;  // already sorted by index order
  }
  return j.dump(2) + "\n";
}

}  // namespace catwl
