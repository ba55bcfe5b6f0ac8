#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catwl/hin.hpp"
#include "catwl/hypergraph.hpp"
#include "catwl/lifting.hpp"
#include "catwl/poset.hpp"

namespace catwl {

using ColorId = std::uint32_t;

/// Flattened canonical encoding of one update: previous color followed by
/// count-delimited sections per enabled adjacency. Two updates are equal iff
/// their encodings are equal, so interning realizes a perfect hash.
using Encoding = std::vector<std::uint64_t>;

/// Section markers inside encodings. Colors occupy the low 32 bits of an
/// item; sections carry explicit counts, which keeps the flattening
/// injective regardless of item values.
constexpr std::uint64_t kInitMarker = 0xC000000000000000ull;
constexpr std::uint64_t kSectionMarker = 0xC100000000000000ull;  // + AdjacencyKind
constexpr std::uint64_t kMemberMarker = 0xC200000000000000ull;   // hwl incidence

constexpr std::uint64_t pack_pair(ColorId neighbor, ColorId witness) {
  return (static_cast<std::uint64_t>(neighbor) << 32) | witness;
}

/// Injective interning of encodings, scoped to one comparison run and shared
/// by both compared sides. ColorIds are dense and assigned in first-seen
/// order, which is deterministic because elements are visited canonically.
class ColorTable {
 public:
  ColorId intern(const Encoding& enc);
  const Encoding& encoding_of(ColorId id) const { return encodings_[id]; }
  std::size_t size() const { return encodings_.size(); }

 private:
  std::map<Encoding, ColorId> ids_;
  std::vector<Encoding> encodings_;
};

struct RefinementConfig {
  AdjacencySet adjacency;
  AdjacencySemantics semantics = AdjacencySemantics::PairMultiset;
  /// 0 selects |P| + 1 (a partition strictly refines at most |P|-1 times).
  int max_iterations = 0;
};

struct Coloring {
  std::vector<ColorId> colors;
  int iteration = 0;
};

struct Verdict {
  bool distinguished = false;
  /// First iteration with unequal histograms, or the iteration at which both
  /// partitions stabilized.
  int iteration = 0;
};

/// Sorted (color, count) pairs.
using ColorHistogram = std::vector<std::pair<ColorId, std::int64_t>>;

ColorHistogram histogram_of(const std::vector<ColorId>& colors);

/// Canonical encoding consumed by one update of sigma: own color, then per
/// enabled adjacency the sorted multiset of constituent colors (pairs packed
/// as neighbor<<32|witness under PairMultiset semantics).
Encoding gwl_encode(const GradedPoset& p, const std::vector<ColorId>& colors,
                    int sigma, const RefinementConfig& cfg);

/// One refinement sweep over the poset; interns into the shared table.
Coloring gwl_step(const GradedPoset& p, const Coloring& c, ColorTable& table,
                  const RefinementConfig& cfg);

/// Full run from the constant coloring until the induced partition repeats
/// or the iteration budget is exhausted. Returns colorings c0..cT.
std::vector<Coloring> gwl_run(const GradedPoset& p, const RefinementConfig& cfg);

struct CompareResult {
  Verdict verdict;
  /// Per-iteration colorings of each side, indexed by iteration.
  std::vector<Coloring> left_trace;
  std::vector<Coloring> right_trace;
  /// Per-iteration histogram pairs, iteration 0 included.
  std::vector<std::pair<ColorHistogram, ColorHistogram>> histograms;
};

/// Lock-step refinement of both posets against one shared color table:
/// Distinguished at the first iteration with unequal histograms, otherwise
/// NotDistinguished once both partitions are stable.
CompareResult compare_refinement(const GradedPoset& p, const GradedPoset& q,
                                 const RefinementConfig& cfg);

/// Lift both hypergraphs with the functor, then compare_refinement.
CompareResult catwl_test(const Hypergraph& h, const Hypergraph& h2,
                         FunctorId functor, const LiftConfig& lift_cfg,
                         const RefinementConfig& refine_cfg);

/// Baseline bipartite refinement on the hypergraphs themselves:
///   c'(v) = hash(c(v), {{c(e) : v in f(e)}})
///   c'(e) = hash(c(e), {{c(v) : v in f(e)}})
/// run simultaneously, with the verdict over the combined V + E histogram.
/// Traces list node colors first, then edge colors.
CompareResult hwl_test(const Hypergraph& h, const Hypergraph& h2,
                       int max_iterations = 0);

/// True iff equal c-colors imply equal d-colors across all positions (the
/// colorings must cover the same element sequence). Throws on length
/// mismatch.
bool refines(const std::vector<ColorId>& c, const std::vector<ColorId>& d);

enum class Method { Hwl, CatwlI, CatwlS, HinI, HinS };

bool method_is_hin(Method m);
std::optional<FunctorId> method_functor(Method m);

/// One battery column. Parsed from "hwl", "catwl-i:pair:bclu",
/// "hin-s:distinct:bu", ... where the trailing fields default to
/// pair / bclu.
struct BatteryConfig {
  std::string id;
  Method method = Method::Hwl;
  RefinementConfig refine;
  LiftConfig lift;
  MpnConfig mpn;
  std::uint64_t hin_seed = 0;
  double hin_tol = 1e-6;

  static BatteryConfig parse(const std::string& text);
};

struct BatteryRow {
  std::string pair_id;
  std::string config_id;
  Verdict verdict;
  std::optional<bool> oracle_isomorphic;
};

struct BatteryReport {
  std::vector<std::string> config_ids;
  std::vector<BatteryRow> rows;  // pair-major, config order within a pair
  int pair_count = 0;
  /// Pairs where the oracle proved isomorphism but some config distinguished.
  int soundness_violations = 0;
  /// agreement[i][j] = number of pairs on which configs i and j produced the
  /// same verdict kind.
  std::vector<std::vector<int>> agreement;

  /// CSV rows "pair,config,verdict,iteration,oracle" followed by a
  /// '#'-prefixed summary block.
  std::string to_csv() const;
};

/// Runs every config against every pair. Each (pair, config) cell uses its
/// own color table, so cells are independent; they are evaluated by a small
/// worker pool and reported in deterministic pair order. with_oracle adds
/// brute-force ground truth (throws beyond oracle bounds).
BatteryReport run_battery(const std::vector<std::pair<Hypergraph, Hypergraph>>& pairs,
                          const std::vector<std::string>& pair_ids,
                          const std::vector<BatteryConfig>& configs,
                          bool with_oracle, int threads = 0);

}  // namespace catwl
