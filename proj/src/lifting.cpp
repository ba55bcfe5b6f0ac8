#include "catwl/lifting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace catwl {

std::string node_element_id(const std::string& node_label) {
  return "v:" + node_label;
}

std::string edge_element_id(const std::string& edge_label) {
  return "e:" + edge_label;
}

std::string simplex_element_id(const std::vector<std::string>& sorted_vertices,
                               const std::string& edge_label) {
  std::string id = "{";
  for (std::size_t i = 0; i < sorted_vertices.size(); ++i) {
    if (i) id += ",";
    id += sorted_vertices[i];
  }
  id += "}@" + edge_label;
  return id;
}

GradedPoset incidence_lift(const Hypergraph& h, LiftDiagnostics* diag) {
  std::vector<PosetElement> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& n : h.node_labels())
    elements.push_back({node_element_id(n), 0, {Provenance::Kind::Node, {n}, {}}});
  bool precondition = true;
  for (int e = 0; e < h.edge_count(); ++e) {
    const std::string& label = h.edge_labels()[e];
    elements.push_back({edge_element_id(label), 1, {Provenance::Kind::Edge, {}, label}});
    if (h.edge_nodes(e).size() < 2) precondition = false;
    for (int v : h.edge_nodes(e))
      covers.emplace_back(node_element_id(h.node_labels()[v]), edge_element_id(label));
  }
  if (diag) diag->boundary_precondition = precondition;
  return GradedPoset::make(std::move(elements), covers);
}

namespace {

void enumerate_subsets(const std::vector<int>& members, int k,
                       const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pick(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      visit(pick);
      return;
    }
    for (int i = start; i <= static_cast<int>(members.size()) - (k - depth); ++i) {
      pick[depth] = members[i];
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

GradedPoset symmetric_simplicial_lift(const Hypergraph& h, const LiftConfig& cfg,
                                      LiftDiagnostics* diag) {
  if (cfg.cardinality_threshold < 2)
    throw std::invalid_argument("cardinality threshold must be >= 2");
  if (cfg.max_dim && *cfg.max_dim < 0)
    throw std::invalid_argument("max_dim must be >= 0");

  std::vector<PosetElement> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& n : h.node_labels())
    elements.push_back({node_element_id(n), 0, {Provenance::Kind::Node, {n}, {}}});

  // All dim >= 1 elements here have boundary size dim+1 >= 2; the
  // precondition only tracks whether higher simplices exist at all.
  if (diag) diag->boundary_precondition = true;

  auto vertex_labels = [&h](const std::vector<int>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int v : idx) out.push_back(h.node_labels()[v]);
    return out;
  };

  for (int e = 0; e < h.edge_count(); ++e) {
    const auto& members = h.edge_nodes(e);
    const std::string& edge_label = h.edge_labels()[e];
    int card = static_cast<int>(members.size());
    if (card > cfg.cardinality_threshold) continue;  // truncated: vertices only
    int max_size = cfg.max_dim ? std::min(card, *cfg.max_dim + 1) : card;
    for (int k = 2; k <= max_size; ++k) {
      enumerate_subsets(members, k, [&](const std::vector<int>& subset) {
        auto labels = vertex_labels(subset);
        std::string id = simplex_element_id(labels, edge_label);
        elements.push_back({id, k - 1, {Provenance::Kind::Simplex, labels, edge_label}});
        if (k == 2) {
          for (const auto& v : labels) covers.emplace_back(node_element_id(v), id);
        } else {
          // Each (k-1)-subset of the simplex is a face within the same edge.
          std::vector<int> face(subset.size() - 1);
          for (std::size_t drop = 0; drop < subset.size(); ++drop) {
            int fi = 0;
            for (std::size_t i = 0; i < subset.size(); ++i)
              if (i != drop) face[fi++] = subset[i];
            covers.emplace_back(simplex_element_id(vertex_labels(face), edge_label), id);
          }
        }
      });
    }
  }
  return GradedPoset::make(std::move(elements), covers);
}

GradedPoset lift(const Hypergraph& h, FunctorId functor, const LiftConfig& cfg,
                 LiftDiagnostics* diag) {
  return functor == FunctorId::Incidence ? incidence_lift(h, diag)
                                         : symmetric_simplicial_lift(h, cfg, diag);
}

namespace {

// Is a <= b in the order generated by the covers?
bool order_leq(const GradedPoset& p, int a, int b) {
  if (a == b) return true;
  std::vector<int> stack = {a};
  std::set<int> seen = {a};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int w : p.parents(x)) {
      if (w == b) return true;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_poset_map(const GradedPoset& src,
                                            const GradedPoset& dst,
                                            const PosetMap& m) {
  std::vector<std::string> out;
  if (static_cast<int>(m.target_of.size()) != src.size()) {
    out.push_back("map is not total on the source poset");
    return out;
  }
  for (int i = 0; i < src.size(); ++i) {
    int img = m.target_of[i];
    if (img < 0 || img >= dst.size()) {
      out.push_back("element '" + src.element(i).id + "' maps outside the target");
      continue;
    }
    if (dst.element(img).dim > src.element(i).dim)
      out.push_back("dimension increases at '" + src.element(i).id + "'");
  }
  for (const auto& [t, s] : src.covers()) {
    int it = m.target_of[t], is = m.target_of[s];
    if (it < 0 || is < 0 || it >= dst.size() || is >= dst.size()) continue;
    if (!order_leq(dst, it, is))
      out.push_back("cover (" + src.element(t).id + ", " + src.element(s).id +
                    ") is not order-preserved");
  }
  return out;
}

namespace {

void require_valid(const HypergraphMorphism& phi, const Hypergraph& h,
                   const Hypergraph& h2) {
  if (!check_morphism(phi, h, h2))
    throw std::invalid_argument("invalid hypergraph morphism: square does not commute");
}

}  // namespace

LiftedMorphism lift_morphism_incidence(const HypergraphMorphism& phi,
                                       const Hypergraph& h, const Hypergraph& h2) {
  require_valid(phi, h, h2);
  LiftedMorphism out;
  out.source = incidence_lift(h);
  out.target = incidence_lift(h2);
  out.map.target_of.assign(out.source.size(), -1);
  for (int i = 0; i < out.source.size(); ++i) {
    const auto& el = out.source.element(i);
    std::string image_id =
        el.provenance.kind == Provenance::Kind::Node
            ? node_element_id(phi.node_map.at(el.provenance.vertices[0]))
            : edge_element_id(phi.edge_map.at(el.provenance.edge));
    out.map.target_of[i] = out.target.require(image_id);
  }
  return out;
}

LiftedMorphism lift_morphism_symmetric(const HypergraphMorphism& phi,
                                       const Hypergraph& h, const Hypergraph& h2,
                                       const LiftConfig& cfg) {
  require_valid(phi, h, h2);
  LiftedMorphism out;
  out.source = symmetric_simplicial_lift(h, cfg);
  out.target = symmetric_simplicial_lift(h2, cfg);
  out.map.target_of.assign(out.source.size(), -1);
  for (int i = 0; i < out.source.size(); ++i) {
    const auto& el = out.source.element(i);
    std::string image_id;
    if (el.provenance.kind == Provenance::Kind::Node) {
      image_id = node_element_id(phi.node_map.at(el.provenance.vertices[0]));
    } else {
      std::set<std::string> image_set;
      for (const auto& v : el.provenance.vertices) image_set.insert(phi.node_map.at(v));
      if (image_set.size() == 1) {
        image_id = node_element_id(*image_set.begin());
      } else {
        std::vector<std::string> labels(image_set.begin(), image_set.end());
        image_id = simplex_element_id(labels, phi.edge_map.at(el.provenance.edge));
      }
    }
    int img = out.target.index_of(image_id);
    if (img < 0)
      throw std::invalid_argument("truncation mismatch: image simplex '" + image_id +
                                  "' was excluded from the target lift");
    out.map.target_of[i] = img;
  }
  return out;
}

namespace {

LiftedMorphism lift_any(FunctorId functor, const HypergraphMorphism& phi,
                        const Hypergraph& h, const Hypergraph& h2,
                        const LiftConfig& cfg) {
  return functor == FunctorId::Incidence
             ? lift_morphism_incidence(phi, h, h2)
             : lift_morphism_symmetric(phi, h, h2, cfg);
}

}  // namespace

FunctorLawReport check_functor_laws(FunctorId functor, const Hypergraph& h1,
                                    const Hypergraph& h2, const Hypergraph& h3,
                                    const HypergraphMorphism& phi12,
                                    const HypergraphMorphism& phi23,
                                    const LiftConfig& cfg) {
  FunctorLawReport report;
  try {
    if (!check_morphism(phi12, h1, h2)) {
      report.failures.push_back("phi12 is not a morphism: square fails on some edge");
      return report;
    }
    if (!check_morphism(phi23, h2, h3)) {
      report.failures.push_back("phi23 is not a morphism: square fails on some edge");
      return report;
    }

    auto ident = lift_any(functor, identity_morphism(h1), h1, h1, cfg);
    report.identity_ok = true;
    for (int i = 0; i < ident.source.size(); ++i) {
      if (ident.map.target_of[i] != i) {
        report.identity_ok = false;
        report.failures.push_back("F(id) moves element '" + ident.source.element(i).id + "'");
        break;
      }
    }

    auto f12 = lift_any(functor, phi12, h1, h2, cfg);
    auto f23 = lift_any(functor, phi23, h2, h3, cfg);
    auto f13 = lift_any(functor, compose(phi23, phi12), h1, h3, cfg);
    for (const auto& msgs : {validate_poset_map(f12.source, f12.target, f12.map),
                             validate_poset_map(f23.source, f23.target, f23.map),
                             validate_poset_map(f13.source, f13.target, f13.map)})
      report.failures.insert(report.failures.end(), msgs.begin(), msgs.end());

    if (f12.target.size() != f23.source.size())
      throw std::logic_error("lift of the middle object differs between morphisms");

    report.composition_ok = true;
    for (int i = 0; i < f12.source.size(); ++i) {
      int via = f23.map.target_of[f12.map.target_of[i]];
      if (via != f13.map.target_of[i]) {
        report.composition_ok = false;
        report.failures.push_back("F(psi.phi) != F(psi).F(phi) at element '" +
                                  f12.source.element(i).id + "'");
        break;
      }
    }
  } catch (const std::exception& err) {
    report.failures.push_back(err.what());
  }
  return report;
}

}  // namespace catwl
