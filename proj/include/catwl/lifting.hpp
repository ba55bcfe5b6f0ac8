#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catwl/hypergraph.hpp"
#include "catwl/poset.hpp"

namespace catwl {

enum class FunctorId { Incidence, SymmetricSimplicial };

struct LiftConfig {
  /// Hyperedges with cardinality above this threshold contribute no
  /// simplices of dim >= 1 to the symmetric simplicial lift (their vertices
  /// always survive). Must be >= 2.
  int cardinality_threshold = 20;
  /// Optional cap on simplex dimension; unbounded below the threshold when
  /// absent.
  std::optional<int> max_dim;
};

struct LiftDiagnostics {
  /// True when every dim>0 element of the lifted poset has boundary size
  /// > 1 (precondition of the adjacency-subset equivalence lemmas; fails
  /// exactly when a singleton hyperedge reaches the incidence lift).
  bool boundary_precondition = true;
};

/// Element-id helpers shared by the lifts, the CLI and the tests.
std::string node_element_id(const std::string& node_label);       // "v:x"
std::string edge_element_id(const std::string& edge_label);       // "e:x"
std::string simplex_element_id(const std::vector<std::string>& sorted_vertices,
                               const std::string& edge_label);    // "{a,b}@e"

/// Two-level incidence poset: nodes at dim 0, hyperedges at dim 1, one cover
/// (v, e) per incidence v in f(e).
GradedPoset incidence_lift(const Hypergraph& h, LiftDiagnostics* diag = nullptr);

/// Symmetric simplicial complex: one dim-0 element per node plus, for every
/// hyperedge e with |f(e)| <= threshold, one element (U, e) per subset
/// U of f(e) with |U| >= 2 (and |U|-1 <= max_dim when capped), at dimension
/// |U|-1. Covers: vertex below each 2-subset containing it, and (U, e) below
/// (W, e) when U is a subset of W one element smaller. Duplicate hyperedges
/// with equal node sets produce distinct simplex families, keyed by edge id.
GradedPoset symmetric_simplicial_lift(const Hypergraph& h,
                                      const LiftConfig& cfg = {},
                                      LiftDiagnostics* diag = nullptr);

GradedPoset lift(const Hypergraph& h, FunctorId functor,
                 const LiftConfig& cfg = {}, LiftDiagnostics* diag = nullptr);

/// Map between two graded posets, stored per source element index.
struct PosetMap {
  std::vector<int> target_of;
};

struct LiftedMorphism {
  GradedPoset source;
  GradedPoset target;
  PosetMap map;
};

/// Checks the poset-morphism axioms: every cover maps to an order relation
/// (g(tau) <= g(sigma) in the target) and dimension never increases.
/// Returns one message per violation.
std::vector<std::string> validate_poset_map(const GradedPoset& src,
                                            const GradedPoset& dst,
                                            const PosetMap& m);

/// Functorial action on morphisms: v -> a(v), e -> b(e). Throws when phi is
/// not a valid morphism.
LiftedMorphism lift_morphism_incidence(const HypergraphMorphism& phi,
                                       const Hypergraph& h,
                                       const Hypergraph& h2);

/// Functorial action of the simplicial lift: (U, e) -> (a(U), b(e)), falling
/// through to the vertex element when a collapses U to one node. Throws when
/// phi is invalid or when an image simplex was excluded by truncation.
LiftedMorphism lift_morphism_symmetric(const HypergraphMorphism& phi,
                                       const Hypergraph& h,
                                       const Hypergraph& h2,
                                       const LiftConfig& cfg = {});

struct FunctorLawReport {
  bool identity_ok = false;
  bool composition_ok = false;
  std::vector<std::string> failures;
  bool ok() const { return identity_ok && composition_ok && failures.empty(); }
};

/// Verifies F(id) = id and F(psi . phi) = F(psi) . F(phi) elementwise on a
/// chain h1 -phi12-> h2 -phi23-> h3. Invalid morphisms and elementwise
/// mismatches are reported (naming the first failing edge or element)
/// rather than thrown.
FunctorLawReport check_functor_laws(FunctorId functor, const Hypergraph& h1,
                                    const Hypergraph& h2, const Hypergraph& h3,
                                    const HypergraphMorphism& phi12,
                                    const HypergraphMorphism& phi23,
                                    const LiftConfig& cfg = {});

}  // namespace catwl
