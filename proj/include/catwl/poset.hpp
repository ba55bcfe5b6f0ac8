#pragma once

#include <compare>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catwl {

/// Where a poset element came from. Rendering/debugging only: refinement
/// never reads provenance (initial colorings are constant).
struct Provenance {
  enum class Kind { None, Node, Edge, Simplex };
  Kind kind = Kind::None;
  std::vector<std::string> vertices;  // Node: one label; Simplex: sorted labels
  std::string edge;                   // Edge/Simplex: hyperedge label
  bool operator==(const Provenance&) const = default;
};

struct PosetElement {
  std::string id;
  int dim = 0;
  Provenance provenance;
};

/// The four adjacency structures of the graded-WL update.
enum class AdjacencyKind { Boundary = 0, Coboundary = 1, Lower = 2, Upper = 3 };

/// Two readings of lower/upper adjacency: the literal multiset of
/// (neighbor, witness) pairs, or each distinct neighbor counted once.
enum class AdjacencySemantics { PairMultiset, DistinctNeighbor };

/// Non-empty subset of the four adjacency structures consulted by a
/// refinement or message-passing run.
struct AdjacencySet {
  bool boundary = true;
  bool coboundary = true;
  bool lower = true;
  bool upper = true;

  bool enabled(AdjacencyKind k) const;
  bool any() const { return boundary || coboundary || lower || upper; }

  /// Parses a subset of the letters "bclu" (e.g. "bu"). Throws on anything
  /// else or on an empty string.
  static AdjacencySet parse(const std::string& letters);
  std::string to_string() const;

  bool operator==(const AdjacencySet&) const = default;
};

/// One entry of a lower/upper adjacency multiset. witness is the shared
/// covered child (lower) or covering parent (upper); -1 under
/// DistinctNeighbor semantics.
struct AdjacencyEntry {
  int neighbor = -1;
  int witness = -1;
  auto operator<=>(const AdjacencyEntry&) const = default;
};

/// Graded poset stored by its covering relation. Elements are kept in
/// (dim, id) order; covers are (child, parent) index pairs. Construction
/// does not require the grading axioms to hold -- validate_graded reports
/// violations as data. Immutable after construction.
class GradedPoset {
 public:
  GradedPoset() = default;

  /// Throws std::invalid_argument on duplicate or unknown element ids.
  /// Duplicate cover pairs are collapsed.
  static GradedPoset make(
      std::vector<PosetElement> elements,
      const std::vector<std::pair<std::string, std::string>>& covers);

  int size() const { return static_cast<int>(elements_.size()); }
  const PosetElement& element(int i) const { return elements_[i]; }
  const std::vector<PosetElement>& elements() const { return elements_; }
  int index_of(const std::string& id) const;  // -1 when absent
  /// Index lookup that throws std::invalid_argument on unknown ids.
  int require(const std::string& id) const;

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& children(int i) const { return children_[i]; }
  const std::vector<int>& parents(int i) const { return parents_[i]; }

  /// Count of elements per dimension, indexed by dim.
  std::vector<int> dim_histogram() const;

 private:
  std::vector<PosetElement> elements_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::unordered_map<std::string, int> index_;
};

struct GradedViolation {
  std::string message;
};

/// Checks the grading axioms: every cover raises dimension by exactly one,
/// the cover digraph is acyclic, and the derived order is monotone in
/// dimension. Returns one entry per violation, naming the offending pair.
std::vector<GradedViolation> validate_graded(const GradedPoset& p);

/// { tau | tau covered by sigma }; empty for dim-0 elements.
std::vector<int> boundary(const GradedPoset& p, int sigma);
/// { tau | sigma covered by tau }.
std::vector<int> coboundary(const GradedPoset& p, int sigma);

/// Peers of sigma through a shared covered child. PairMultiset: one entry
/// per (neighbor, witness) pair; DistinctNeighbor: each neighbor once,
/// witness -1. Sorted, deterministic. Throws on an unknown element.
std::vector<AdjacencyEntry> lower_adjacency(const GradedPoset& p, int sigma,
                                            AdjacencySemantics semantics);
/// Dual of lower_adjacency over shared covering parents.
std::vector<AdjacencyEntry> upper_adjacency(const GradedPoset& p, int sigma,
                                            AdjacencySemantics semantics);

/// Exhaustive poset-isomorphism oracle: true iff a bijection preserves dim
/// and covers in both directions. Throws std::invalid_argument above the
/// element bound.
bool poset_isomorphic_bruteforce(const GradedPoset& p, const GradedPoset& q,
                                 int max_elements = 14);

/// Deterministic DOT digraph; arrows run from covered to covering element,
/// rank groups by dimension.
std::string hasse_dot(const GradedPoset& p);

/// {"elements":[{"dim":..,"id":..},...],"covers":[[tau,sigma],...]}
std::string poset_to_json(const GradedPoset& p);
GradedPoset poset_from_json(const std::string& text);

}  // namespace catwl
