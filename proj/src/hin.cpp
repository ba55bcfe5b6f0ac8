#include "catwl/hin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace catwl {

namespace {

void fill_uniform(std::vector<double>& v, std::size_t n, std::mt19937_64& rng,
                  double scale) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  v.resize(n);
  for (auto& x : v) x = dist(rng) * scale;
}

Mlp2 random_mlp2(int dim, std::mt19937_64& rng, double scale) {
  Mlp2 m;
  m.in = m.hidden = m.out = dim;
  fill_uniform(m.w1, static_cast<std::size_t>(dim) * dim, rng, scale);
  fill_uniform(m.b1, dim, rng, scale);
  fill_uniform(m.w2, static_cast<std::size_t>(dim) * dim, rng, scale);
  fill_uniform(m.b2, dim, rng, scale);
  return m;
}

Mlp1 random_mlp1(int dim, std::mt19937_64& rng, double scale) {
  Mlp1 m;
  m.in = 2 * dim;
  m.out = dim;
  fill_uniform(m.w, static_cast<std::size_t>(dim) * 2 * dim, rng, scale);
  fill_uniform(m.b, dim, rng, scale);
  return m;
}

void apply_mlp2(const Mlp2& m, const double* x, double* out, double* scratch) {
  for (int r = 0; r < m.hidden; ++r) {
    double acc = m.b1[r];
    const double* row = m.w1.data() + static_cast<std::size_t>(r) * m.in;
    for (int c = 0; c < m.in; ++c) acc += row[c] * x[c];
    scratch[r] = acc > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < m.out; ++r) {
    double acc = m.b2[r];
    const double* row = m.w2.data() + static_cast<std::size_t>(r) * m.hidden;
    for (int c = 0; c < m.hidden; ++c) acc += row[c] * scratch[c];
    out[r] = acc;
  }
}

void apply_mlp1(const Mlp1& m, const double* x, double* out) {
  for (int r = 0; r < m.out; ++r) {
    double acc = m.b[r];
    const double* row = m.w.data() + static_cast<std::size_t>(r) * m.in;
    for (int c = 0; c < m.in; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
}

// Adds k rows of width d from `rows` onto acc, in value-sorted order.
// Value ordering makes the accumulation independent of element labels, so
// elements with equal summand multisets get bit-identical sums.
void accumulate_sorted(double* acc, const std::vector<double>& rows, int k, int d,
                       std::vector<int>& order) {
  order.resize(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&rows, d](int a, int b) {
    const double* ra = rows.data() + static_cast<std::size_t>(a) * d;
    const double* rb = rows.data() + static_cast<std::size_t>(b) * d;
    return std::lexicographical_compare(ra, ra + d, rb, rb + d);
  });
  for (int idx : order) {
    const double* r = rows.data() + static_cast<std::size_t>(idx) * d;
    for (int j = 0; j < d; ++j) acc[j] += r[j];
  }
}

}  // namespace

HinParams init_params(const MpnConfig& cfg, std::uint64_t seed) {
  if (cfg.width < 1 || cfg.layers < 1)
    throw std::invalid_argument("init_params: width and layers must be >= 1");
  HinParams params;
  params.width = cfg.width;
  params.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double scale = 1.0 / std::sqrt(static_cast<double>(cfg.width));
  for (int l = 0; l < cfg.layers; ++l) {
    HinLayerParams layer;
    for (int k = 0; k < 4; ++k) layer.message[k] = random_mlp2(cfg.width, rng, scale);
    layer.pair_lower = random_mlp1(cfg.width, rng, scale);
    layer.pair_upper = random_mlp1(cfg.width, rng, scale);
    for (int k = 0; k < 4; ++k) layer.eps[k] = dist(rng);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

namespace {

// Lower/upper entry lists are fixed for a whole run; computed once.
struct AdjacencyCache {
  std::vector<std::vector<AdjacencyEntry>> lower, upper;

  AdjacencyCache(const GradedPoset& p, const MpnConfig& cfg) {
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
};

FeatureState layer_impl(const GradedPoset& p, const FeatureState& feats,
                        const HinLayerParams& params, const MpnConfig& cfg,
                        const AdjacencyCache& cache) {
  const int d = feats.width;
  if (static_cast<int>(feats.values.size()) != p.size() * d)
    throw std::invalid_argument("hin_layer: feature width mismatch");
  if (params.message[0].in != d)
    throw std::invalid_argument("hin_layer: parameter width mismatch");
  FeatureState out;
  out.width = d;
  out.layer = feats.layer + 1;
  out.values.assign(feats.values.begin(), feats.values.end());  // self term

  std::vector<double> z(d), msg(d), scratch(d), pair_in(2 * d);
  std::vector<double> rows;
  std::vector<int> order;

  for (int sigma = 0; sigma < p.size(); ++sigma) {
    const double* self = feats.row(sigma);
    double* target = out.values.data() + static_cast<std::size_t>(sigma) * d;

    for (int k = 0; k < 4; ++k) {
      auto kind = static_cast<AdjacencyKind>(k);
      if (!cfg.adjacency.enabled(kind)) continue;

      rows.clear();
      if (kind == AdjacencyKind::Boundary || kind == AdjacencyKind::Coboundary) {
        const auto& peers =
            kind == AdjacencyKind::Boundary ? p.children(sigma) : p.parents(sigma);
        for (int t : peers) {
          const double* r = feats.row(t);
          rows.insert(rows.end(), r, r + d);
        }
      } else {
        const auto& mlp = kind == AdjacencyKind::Lower ? params.pair_lower
                                                       : params.pair_upper;
        const auto& entries = kind == AdjacencyKind::Lower ? cache.lower[sigma]
                                                           : cache.upper[sigma];
        for (const auto& e : entries) {
          const double* nb = feats.row(e.neighbor);
          std::copy(nb, nb + d, pair_in.begin());
          if (e.witness >= 0) {
            const double* w = feats.row(e.witness);
            std::copy(w, w + d, pair_in.begin() + d);
          } else {
            std::fill(pair_in.begin() + d, pair_in.end(), 0.0);
          }
          std::size_t at = rows.size();
          rows.resize(at + d);
          apply_mlp1(mlp, pair_in.data(), rows.data() + at);
        }
      }

      double eps = params.eps[k];
      for (int j = 0; j < d; ++j) z[j] = (1.0 + eps) * self[j];
      accumulate_sorted(z.data(), rows, static_cast<int>(rows.size()) / d, d, order);
      apply_mlp2(params.message[k], z.data(), msg.data(), scratch.data());
      for (int j = 0; j < d; ++j) target[j] += msg[j];
    }
  }
  return out;
}

}  // namespace

FeatureState hin_layer(const GradedPoset& p, const FeatureState& feats,
                       const HinLayerParams& params, const MpnConfig& cfg) {
  AdjacencyCache cache(p, cfg);
  return layer_impl(p, feats, params, cfg, cache);
}

FeatureState hin_run(const GradedPoset& p, const HinParams& params,
                     const MpnConfig& cfg) {
  if (static_cast<int>(params.layers.size()) < cfg.layers)
    throw std::invalid_argument("hin_run: not enough layer parameters");
  AdjacencyCache cache(p, cfg);
  FeatureState feats;
  feats.width = params.width;
  feats.layer = 0;
  feats.values.assign(static_cast<std::size_t>(p.size()) * params.width, 1.0);
  for (int l = 0; l < cfg.layers; ++l)
    feats = layer_impl(p, feats, params.layers[l], cfg, cache);
  return feats;
}

std::vector<std::vector<std::int64_t>> hin_readout(const FeatureState& feats,
                                                   double tol) {
  if (tol <= 0.0) throw std::invalid_argument("hin_readout: tol must be positive");
  int n = feats.width > 0 ? static_cast<int>(feats.values.size()) / feats.width : 0;
  std::vector<std::vector<std::int64_t>> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].resize(feats.width);
    const double* r = feats.row(i);
    for (int j = 0; j < feats.width; ++j) {
      if (!std::isfinite(r[j]))
        throw std::runtime_error("hin_readout: non-finite feature");
      out[i][j] = std::llround(r[j] / tol);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool hin_distinguishes(const Hypergraph& h, const Hypergraph& h2,
                       FunctorId functor, const HinParams& params,
                       const MpnConfig& cfg, double tol,
                       const LiftConfig& lift_cfg) {
  GradedPoset p = lift(h, functor, lift_cfg);
  GradedPoset q = lift(h2, functor, lift_cfg);
  auto left = hin_readout(hin_run(p, params, cfg), tol);
  auto right = hin_readout(hin_run(q, params, cfg), tol);
  return left != right;
}

}  // namespace catwl
