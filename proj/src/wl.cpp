#include "catwl/wl.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace catwl {

ColorId ColorTable::intern(const Encoding& enc) {
  auto it = ids_.find(enc);
  if (it != ids_.end()) return it->second;
  ColorId id = static_cast<ColorId>(encodings_.size());
  ids_.emplace(enc, id);
  encodings_.push_back(enc);
  return id;
}

ColorHistogram histogram_of(const std::vector<ColorId>& colors) {
  std::map<ColorId, std::int64_t> counts;
  for (ColorId c : colors) ++counts[c];
  return ColorHistogram(counts.begin(), counts.end());
}

namespace {

Encoding encode_update(const GradedPoset& p, const std::vector<ColorId>& colors,
                       int sigma, const RefinementConfig& cfg,
                       const std::vector<AdjacencyEntry>& lower_entries,
                       const std::vector<AdjacencyEntry>& upper_entries) {
  Encoding enc;
  enc.push_back(colors[sigma]);
  auto emit_section = [&enc](AdjacencyKind kind, std::vector<std::uint64_t>& items) {
    std::sort(items.begin(), items.end());
    enc.push_back(kSectionMarker + static_cast<int>(kind));
    enc.push_back(items.size());
    enc.insert(enc.end(), items.begin(), items.end());
  };
  auto pack_entries = [&](const std::vector<AdjacencyEntry>& entries,
                          std::vector<std::uint64_t>& items) {
    for (const auto& e : entries)
      items.push_back(cfg.semantics == AdjacencySemantics::PairMultiset
                          ? pack_pair(colors[e.neighbor], colors[e.witness])
                          : colors[e.neighbor]);
  };

  std::vector<std::uint64_t> items;
  if (cfg.adjacency.boundary) {
    items.clear();
    for (int t : p.children(sigma)) items.push_back(colors[t]);
    emit_section(AdjacencyKind::Boundary, items);
  }
  if (cfg.adjacency.coboundary) {
    items.clear();
    for (int t : p.parents(sigma)) items.push_back(colors[t]);
    emit_section(AdjacencyKind::Coboundary, items);
  }
  if (cfg.adjacency.lower) {
    items.clear();
    pack_entries(lower_entries, items);
    emit_section(AdjacencyKind::Lower, items);
  }
  if (cfg.adjacency.upper) {
    items.clear();
    pack_entries(upper_entries, items);
    emit_section(AdjacencyKind::Upper, items);
  }
  return enc;
}

const std::vector<AdjacencyEntry>& no_entries() {
  static const std::vector<AdjacencyEntry> empty;
  return empty;
}

}  // namespace

Encoding gwl_encode(const GradedPoset& p, const std::vector<ColorId>& colors,
                    int sigma, const RefinementConfig& cfg) {
  return encode_update(
      p, colors, sigma, cfg,
      cfg.adjacency.lower ? lower_adjacency(p, sigma, cfg.semantics) : no_entries(),
      cfg.adjacency.upper ? upper_adjacency(p, sigma, cfg.semantics) : no_entries());
}

namespace {

// Per-element adjacency entry lists fixed for a whole run.
struct PosetRunContext {
  const GradedPoset* poset = nullptr;
  RefinementConfig cfg;
  std::vector<std::vector<AdjacencyEntry>> lower, upper;

  PosetRunContext(const GradedPoset& p, const RefinementConfig& c)
      : poset(&p), cfg(c) {
    if (!cfg.adjacency.any())
      throw std::invalid_argument("adjacency set must be non-empty");
    if (cfg.adjacency.lower) {
      lower.reserve(p.size());
      for (int i = 0; i < p.size(); ++i)
        lower.push_back(lower_adjacency(p, i, cfg.semantics));
    }
    if (cfg.adjacency.upper) {
      upper.reserve(p.size());
      for (int i = 0; i < p.size(); ++i)
        upper.push_back(upper_adjacency(p, i, cfg.semantics));
    }
  }

  Encoding encode(const std::vector<ColorId>& colors, int sigma) const {
    return encode_update(*poset, colors, sigma, cfg,
                         cfg.adjacency.lower ? lower[sigma] : no_entries(),
                         cfg.adjacency.upper ? upper[sigma] : no_entries());
  }
};

int distinct_count(const std::vector<ColorId>& colors) {
  std::set<ColorId> s(colors.begin(), colors.end());
  return static_cast<int>(s.size());
}

// One refinable side of a lock-step comparison: an element count plus an
// encoder from the side's current colors to an element's update encoding.
struct Side {
  int count = 0;
  std::function<Encoding(const std::vector<ColorId>&, int)> encode;
};

CompareResult lockstep_compare(const Side& left, const Side& right,
                               int max_iterations) {
  CompareResult result;
  ColorTable table;

  Coloring cl{std::vector<ColorId>(left.count, 0), 0};
  Coloring cr{std::vector<ColorId>(right.count, 0), 0};
  ColorId init = table.intern(Encoding{kInitMarker});
  std::fill(cl.colors.begin(), cl.colors.end(), init);
  std::fill(cr.colors.begin(), cr.colors.end(), init);
  result.left_trace.push_back(cl);
  result.right_trace.push_back(cr);
  result.histograms.emplace_back(histogram_of(cl.colors), histogram_of(cr.colors));

  if (result.histograms[0].first != result.histograms[0].second) {
    result.verdict = {true, 0};
    return result;
  }

  int left_classes = 1, right_classes = 1;
  for (int t = 1; t <= max_iterations; ++t) {
    Coloring nl{std::vector<ColorId>(left.count), t};
    Coloring nr{std::vector<ColorId>(right.count), t};
    for (int i = 0; i < left.count; ++i)
      nl.colors[i] = table.intern(left.encode(cl.colors, i));
    for (int i = 0; i < right.count; ++i)
      nr.colors[i] = table.intern(right.encode(cr.colors, i));
    cl = std::move(nl);
    cr = std::move(nr);
    result.left_trace.push_back(cl);
    result.right_trace.push_back(cr);
    result.histograms.emplace_back(histogram_of(cl.colors), histogram_of(cr.colors));

    if (result.histograms[t].first != result.histograms[t].second) {
      result.verdict = {true, t};
      return result;
    }
    int ln = distinct_count(cl.colors);
    int rn = distinct_count(cr.colors);
    // The encoding contains the previous color, so partitions only refine;
    // unchanged class counts mean both partitions are stable.
    if (ln == left_classes && rn == right_classes) {
      result.verdict = {false, t};
      return result;
    }
    left_classes = ln;
    right_classes = rn;
  }
  result.verdict = {false, max_iterations};
  return result;
}

}  // namespace

Coloring gwl_step(const GradedPoset& p, const Coloring& c, ColorTable& table,
                  const RefinementConfig& cfg) {
  if (static_cast<int>(c.colors.size()) != p.size())
    throw std::invalid_argument("coloring is not total on the poset");
  Coloring out{std::vector<ColorId>(p.size()), c.iteration + 1};
  for (int i = 0; i < p.size(); ++i)
    out.colors[i] = table.intern(gwl_encode(p, c.colors, i, cfg));
  return out;
}

std::vector<Coloring> gwl_run(const GradedPoset& p, const RefinementConfig& cfg) {
  PosetRunContext ctx(p, cfg);
  int budget = cfg.max_iterations > 0 ? cfg.max_iterations : p.size() + 1;
  ColorTable table;
  std::vector<Coloring> trace;
  Coloring c{std::vector<ColorId>(p.size(), table.intern(Encoding{kInitMarker})), 0};
  trace.push_back(c);
  int classes = 1;
  for (int t = 1; t <= budget; ++t) {
    Coloring next{std::vector<ColorId>(p.size()), t};
    for (int i = 0; i < p.size(); ++i)
      next.colors[i] = table.intern(ctx.encode(c.colors, i));
    c = std::move(next);
    trace.push_back(c);
    int n = distinct_count(c.colors);
    if (n == classes) break;
    classes = n;
  }
  return trace;
}

CompareResult compare_refinement(const GradedPoset& p, const GradedPoset& q,
                                 const RefinementConfig& cfg) {
  PosetRunContext lctx(p, cfg), rctx(q, cfg);
  int budget = cfg.max_iterations > 0 ? cfg.max_iterations
                                      : std::max(p.size(), q.size()) + 1;
  Side left{p.size(), [&lctx](const std::vector<ColorId>& c, int i) {
              return lctx.encode(c, i);
            }};
  Side right{q.size(), [&rctx](const std::vector<ColorId>& c, int i) {
               return rctx.encode(c, i);
             }};
  return lockstep_compare(left, right, budget);
}

CompareResult catwl_test(const Hypergraph& h, const Hypergraph& h2,
                         FunctorId functor, const LiftConfig& lift_cfg,
                         const RefinementConfig& refine_cfg) {
  GradedPoset p = lift(h, functor, lift_cfg);
  GradedPoset q = lift(h2, functor, lift_cfg);
  return compare_refinement(p, q, refine_cfg);
}

namespace {

// HWL side over V + E of one hypergraph; nodes first, then edges.
Side hwl_side(const Hypergraph& h) {
  int n = h.node_count();
  Side side;
  side.count = n + h.edge_count();
  side.encode = [&h, n](const std::vector<ColorId>& colors, int i) {
    Encoding enc;
    enc.push_back(colors[i]);
    std::vector<std::uint64_t> items;
    if (i < n) {
      for (int e : h.node_edges(i)) items.push_back(colors[n + e]);
    } else {
      for (int v : h.edge_nodes(i - n)) items.push_back(colors[v]);
    }
    std::sort(items.begin(), items.end());
    enc.push_back(kMemberMarker);
    enc.push_back(items.size());
    enc.insert(enc.end(), items.begin(), items.end());
    return enc;
  };
  return side;
}

}  // namespace

CompareResult hwl_test(const Hypergraph& h, const Hypergraph& h2,
                       int max_iterations) {
  int budget = max_iterations > 0
                   ? max_iterations
                   : std::max(h.node_count() + h.edge_count(),
                              h2.node_count() + h2.edge_count()) +
                         1;
  return lockstep_compare(hwl_side(h), hwl_side(h2), budget);
}

bool refines(const std::vector<ColorId>& c, const std::vector<ColorId>& d) {
  if (c.size() != d.size())
    throw std::invalid_argument("refines: colorings cover different element sets");
  std::map<ColorId, ColorId> witness;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto [it, inserted] = witness.emplace(c[i], d[i]);
    if (!inserted && it->second != d[i]) return false;
  }
  return true;
}

bool method_is_hin(Method m) { return m == Method::HinI || m == Method::HinS; }

std::optional<FunctorId> method_functor(Method m) {
  switch (m) {
    case Method::CatwlI:
    case Method::HinI: return FunctorId::Incidence;
    case Method::CatwlS:
    case Method::HinS: return FunctorId::SymmetricSimplicial;
    case Method::Hwl: return std::nullopt;
  }
  return std::nullopt;
}

BatteryConfig BatteryConfig::parse(const std::string& text) {
  BatteryConfig cfg;
  cfg.id = text;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty battery config");

  const std::string& method = parts[0];
  if (method == "hwl") cfg.method = Method::Hwl;
  else if (method == "catwl-i") cfg.method = Method::CatwlI;
  else if (method == "catwl-s") cfg.method = Method::CatwlS;
  else if (method == "hin-i") cfg.method = Method::HinI;
  else if (method == "hin-s") cfg.method = Method::HinS;
  else throw std::invalid_argument("unknown method '" + method + "'");

  if (parts.size() > 1) {
    if (parts[1] == "pair") cfg.refine.semantics = AdjacencySemantics::PairMultiset;
    else if (parts[1] == "distinct") cfg.refine.semantics = AdjacencySemantics::DistinctNeighbor;
    else throw std::invalid_argument("unknown semantics '" + parts[1] + "'");
  }
  if (parts.size() > 2) cfg.refine.adjacency = AdjacencySet::parse(parts[2]);
  if (parts.size() > 3) throw std::invalid_argument("too many ':' fields in config");
  if (cfg.method == Method::Hwl && parts.size() > 1)
    throw std::invalid_argument("hwl takes no semantics/adjacency fields");

  cfg.mpn.adjacency = cfg.refine.adjacency;
  cfg.mpn.semantics = cfg.refine.semantics;
  return cfg;
}

namespace {

Verdict evaluate_cell(const std::pair<Hypergraph, Hypergraph>& pair,
                      const BatteryConfig& cfg) {
  switch (cfg.method) {
    case Method::Hwl:
      return hwl_test(pair.first, pair.second, cfg.refine.max_iterations).verdict;
    case Method::CatwlI:
    case Method::CatwlS:
      return catwl_test(pair.first, pair.second, *method_functor(cfg.method),
                        cfg.lift, cfg.refine)
          .verdict;
    case Method::HinI:
    case Method::HinS: {
      HinParams params = init_params(cfg.mpn, cfg.hin_seed);
      bool dist = hin_distinguishes(pair.first, pair.second,
                                    *method_functor(cfg.method), params, cfg.mpn,
                                    cfg.hin_tol, cfg.lift);
      return {dist, dist ? cfg.mpn.layers : 0};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string BatteryReport::to_csv() const {
  std::string out = "pair,config,verdict,iteration,oracle\n";
  for (const auto& row : rows) {
    out += row.pair_id + "," + row.config_id + ",";
    out += row.verdict.distinguished ? "distinguished" : "not_distinguished";
    out += "," + std::to_string(row.verdict.iteration) + ",";
    if (row.oracle_isomorphic)
      out += *row.oracle_isomorphic ? "isomorphic" : "non_isomorphic";
    out += "\n";
  }
  out += "# pairs," + std::to_string(pair_count) + "\n";
  out += "# soundness_violations," + std::to_string(soundness_violations) + "\n";
  for (std::size_t i = 0; i < config_ids.size(); ++i)
    for (std::size_t j = i + 1; j < config_ids.size(); ++j)
      out += "# agreement," + config_ids[i] + "," + config_ids[j] + "," +
             std::to_string(agreement[i][j]) + "," + std::to_string(pair_count) +
             "\n";
  return out;
}

BatteryReport run_battery(const std::vector<std::pair<Hypergraph, Hypergraph>>& pairs,
                          const std::vector<std::string>& pair_ids,
                          const std::vector<BatteryConfig>& configs,
                          bool with_oracle, int threads) {
  if (pair_ids.size() != pairs.size())
    throw std::invalid_argument("pair_ids must match pairs");
  BatteryReport report;
  for (const auto& c : configs) report.config_ids.push_back(c.id);
  report.pair_count = static_cast<int>(pairs.size());

  struct PairResult {
    std::vector<Verdict> verdicts;
    std::optional<bool> oracle;
  };
  std::vector<PairResult> results(pairs.size());

  auto evaluate_pair = [&](std::size_t idx) {
    PairResult r;
    for (const auto& cfg : configs) r.verdicts.push_back(evaluate_cell(pairs[idx], cfg));
    if (with_oracle)
      r.oracle = brute_force_isomorphic(pairs[idx].first, pairs[idx].second);
    return r;
  };

  int workers = threads > 0 ? threads
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<int>(workers, std::max<std::size_t>(pairs.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) results[i] = evaluate_pair(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, [&]() {
        for (std::size_t i = next.fetch_add(1); i < pairs.size();
             i = next.fetch_add(1))
          results[i] = evaluate_pair(i);
      }));
    for (auto& f : futures) f.get();
  }

  report.agreement.assign(configs.size(), std::vector<int>(configs.size(), 0));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& r = results[i];
    bool any_distinguished = false;
    for (std::size_t c = 0; c < configs.size(); ++c) {
      report.rows.push_back({pair_ids[i], configs[c].id, r.verdicts[c], r.oracle});
      any_distinguished |= r.verdicts[c].distinguished;
      for (std::size_t c2 = 0; c2 < configs.size(); ++c2)
        if (r.verdicts[c].distinguished == r.verdicts[c2].distinguished)
          ++report.agreement[c][c2];
    }
    if (r.oracle && *r.oracle && any_distinguished) ++report.soundness_violations;
  }
  return report;
}

}  // namespace catwl
