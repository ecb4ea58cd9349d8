// Copyright 2026 The ilps Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ILPS_GENERATORS_HPP_
#define ILPS_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ilps/errors.hpp"
#include "ilps/instance.hpp"
#include "ilps/random.hpp"

namespace ilps {

/// Simple undirected graph; edges are stored with first < second, no
/// self-loops, no duplicates.
struct Graph {
  int n_nodes = 0;
  std::vector<std::pair<int, int>> edges;
};

enum class GraphModel { kBarabasiAlbert, kErdosRenyi };

struct GraphSpec {
  GraphModel model = GraphModel::kBarabasiAlbert;
  int n_nodes = 0;
  int affinity = 1;       // preferential-attachment parameter (BA)
  double edge_prob = 0.0; // independent edge probability (ER)
  std::uint64_t seed = 0;
};

/// Barabasi-Albert preferential attachment. The first `affinity` nodes start
/// edgeless; every later node attaches to `affinity` distinct existing nodes
/// drawn proportionally to degree (the very first attachment is forced onto
/// all existing nodes, which are still degree-zero). The edge count is
/// exactly affinity * (n - affinity).
inline Graph gen_ba_graph(int n, int affinity, RandomStream& rng) {
  require(affinity >= 1 && affinity < n, errc::invalid_affinity,
          "attachment parameter must satisfy 1 <= affinity < n");
  Graph g;
  g.n_nodes = n;
  g.edges.reserve(static_cast<std::size_t>(affinity) * (n - affinity));
  // One entry per unit of degree; sampling an entry uniformly is sampling a
  // node proportionally to its degree.
  std::vector<int> repeated;
  repeated.reserve(2 * g.edges.capacity());
  std::vector<int> targets;
  targets.reserve(affinity);
  for (int v = affinity; v < n; ++v) {
    targets.clear();
    if (repeated.empty()) {
      for (int t = 0; t < affinity; ++t) targets.push_back(t);
    } else {
      while (static_cast<int>(targets.size()) < affinity) {
        int t = repeated[rng.uniform_below(repeated.size())];
        bool seen = false;
        for (int s : targets) seen |= (s == t);
        if (!seen) targets.push_back(t);
      }
    }
    for (int t : targets) {
      g.edges.emplace_back(t, v);
      repeated.push_back(t);
      repeated.push_back(v);
    }
  }
  return g;
}

/// Erdos-Renyi G(n, p): every unordered pair appears independently with
/// probability p. Uses geometric skipping so the cost is proportional to the
/// number of edges generated rather than to n^2.
inline Graph gen_er_graph(int n, double p, RandomStream& rng) {
  require(p >= 0.0 && p <= 1.0, errc::invalid_range,
          "edge probability must lie in [0, 1]");
  Graph g;
  g.n_nodes = n;
  if (p == 0.0 || n < 2) return g;
  double log_q = std::log1p(-p);  // -inf when p == 1, visiting every pair
  std::int64_t v = 1, w = -1;
  while (v < n) {
    double u = 1.0 - rng.uniform();  // (0, 1]
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) g.edges.emplace_back(static_cast<int>(w), static_cast<int>(v));
  }
  return g;
}

/// Helper for specs quoted as an average degree: p = degree / (n - 1).
inline double edge_prob_for_avg_degree(double degree, int n) {
  require(n >= 2, errc::invalid_range, "average degree needs n >= 2");
  return degree / static_cast<double>(n - 1);
}

inline Graph gen_graph(const GraphSpec& spec) {
  RandomStream rng(spec.seed, 0x67726170u);
  return spec.model == GraphModel::kBarabasiAlbert
             ? gen_ba_graph(spec.n_nodes, spec.affinity, rng)
             : gen_er_graph(spec.n_nodes, spec.edge_prob, rng);
}

/// Minimum vertex cover of g as a canonical program: unit costs and one row
/// -x_u - x_v <= -1 per edge (every edge needs a selected endpoint).
inline IlpInstance gen_mvc(const Graph& g, std::string name = "mvc") {
  std::vector<double> c(g.n_nodes, 1.0);
  std::vector<double> b(g.edges.size(), -1.0);
  std::vector<Triplet> triplets;
  triplets.reserve(2 * g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    triplets.push_back({static_cast<int>(k), g.edges[k].first, -1.0});
    triplets.push_back({static_cast<int>(k), g.edges[k].second, -1.0});
  }
  IlpInstance inst =
      IlpInstance::build(g.n_nodes, static_cast<int>(g.edges.size()),
                         std::move(c), triplets, std::move(b), std::move(name));
  inst.metadata()["problem"] = "mvc";
  return inst;
}

/// Maximum independent set of g: objective -sum x_v with one row
/// x_u + x_v <= 1 per edge.
inline IlpInstance gen_mis(const Graph& g, std::string name = "mis") {
  std::vector<double> c(g.n_nodes, -1.0);
  std::vector<double> b(g.edges.size(), 1.0);
  std::vector<Triplet> triplets;
  triplets.reserve(2 * g.edges.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    triplets.push_back({static_cast<int>(k), g.edges[k].first, 1.0});
    triplets.push_back({static_cast<int>(k), g.edges[k].second, 1.0});
  }
  IlpInstance inst =
      IlpInstance::build(g.n_nodes, static_cast<int>(g.edges.size()),
                         std::move(c), triplets, std::move(b), std::move(name));
  inst.metadata()["problem"] = "mis";
  return inst;
}

struct ScSpec {
  int n_vars = 0;
  int n_rows = 0;
  double density = 0.0;  // fraction of columns covering each element
  std::uint64_t seed = 0;
};

/// Set covering with unit costs: every one of n_rows elements is covered by
/// round(density * n_vars) distinct uniformly drawn sets, giving the row
/// -sum_{i covers j} x_i <= -1. Rows are never empty, so the all-ones
/// assignment is always feasible.
inline IlpInstance gen_sc(const ScSpec& spec, RandomStream& rng,
                          std::string name = "sc") {
  require(spec.n_vars >= 1 && spec.n_rows >= 0, errc::invalid_range,
          "set covering needs n_vars >= 1, n_rows >= 0");
  require(spec.density > 0.0 && spec.density <= 1.0, errc::invalid_range,
          "density must lie in (0, 1]");
  const int per_row = static_cast<int>(std::lround(spec.density * spec.n_vars));
  require(per_row >= 1, errc::density_too_low,
          "density * n_vars rounds to zero columns per row");

  std::vector<double> c(spec.n_vars, 1.0);
  std::vector<double> b(spec.n_rows, -1.0);
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(per_row) * spec.n_rows);
  std::vector<std::uint8_t> chosen(spec.n_vars, 0);
  std::vector<int> picked;
  picked.reserve(per_row);
  for (int k = 0; k < spec.n_rows; ++k) {
    picked.clear();
    // Floyd's uniform k-subset sampling.
    for (int i = spec.n_vars - per_row; i < spec.n_vars; ++i) {
      int t = static_cast<int>(rng.uniform_below(i + 1));
      int use = chosen[t] ? i : t;
      chosen[use] = 1;
      picked.push_back(use);
    }
    for (int col : picked) {
      triplets.push_back({k, col, -1.0});
      chosen[col] = 0;
    }
  }
  IlpInstance inst = IlpInstance::build(spec.n_vars, spec.n_rows, std::move(c),
                                        triplets, std::move(b), std::move(name));
  inst.metadata()["problem"] = "sc";
  inst.metadata()["density"] = std::to_string(spec.density);
  inst.metadata()["seed"] = std::to_string(spec.seed);
  return inst;
}

inline IlpInstance gen_sc(const ScSpec& spec, std::string name = "sc") {
  RandomStream rng(spec.seed, 0x73657463u);
  return gen_sc(spec, rng, std::move(name));
}

namespace detail {
inline void stamp_graph_metadata(IlpInstance& inst, const GraphSpec& spec) {
  inst.metadata()["n_nodes"] = std::to_string(spec.n_nodes);
  inst.metadata()["seed"] = std::to_string(spec.seed);
  if (spec.model == GraphModel::kBarabasiAlbert) {
    inst.metadata()["graph_model"] = "ba";
    inst.metadata()["affinity"] = std::to_string(spec.affinity);
  } else {
    inst.metadata()["graph_model"] = "er";
    inst.metadata()["edge_prob"] = std::to_string(spec.edge_prob);
  }
}
}  // namespace detail

inline IlpInstance gen_mvc(const GraphSpec& spec, std::string name = "mvc") {
  IlpInstance inst = gen_mvc(gen_graph(spec), std::move(name));
  detail::stamp_graph_metadata(inst, spec);
  return inst;
}

inline IlpInstance gen_mis(const GraphSpec& spec, std::string name = "mis") {
  IlpInstance inst = gen_mis(gen_graph(spec), std::move(name));
  detail::stamp_graph_metadata(inst, spec);
  return inst;
}

/// Named benchmark-family presets, including the distribution-shifted
/// variants (reduced BA degree for vertex cover, BA topology for independent
/// set, 10x density for set covering).
inline IlpInstance preset_instance(const std::string& preset,
                                   std::uint64_t seed) {
  auto ba = [&](int n, int affinity) {
    return GraphSpec{GraphModel::kBarabasiAlbert, n, affinity, 0.0, seed};
  };
  auto er = [&](int n, double degree) {
    return GraphSpec{GraphModel::kErdosRenyi, n, 1,
                     edge_prob_for_avg_degree(degree, n), seed};
  };
  std::string name = preset + "-s" + std::to_string(seed);
  if (preset == "mvc1000") return gen_mvc(ba(1000, 70), name);
  if (preset == "mvc2000") return gen_mvc(ba(2000, 70), name);
  if (preset == "mvc1000-ood") return gen_mvc(ba(1000, 5), name);
  if (preset == "mvc2000-ood") return gen_mvc(ba(2000, 5), name);
  if (preset == "mis1500") return gen_mis(er(1500, 5.0), name);
  if (preset == "mis3000") return gen_mis(er(3000, 5.0), name);
  if (preset == "mis1500-ood") return gen_mis(ba(1500, 5), name);
  if (preset == "mis3000-ood") return gen_mis(ba(3000, 5), name);
  if (preset == "sc2000") return gen_sc({2000, 5000, 0.05, seed}, name);
  if (preset == "sc4000") return gen_sc({4000, 5000, 0.05, seed}, name);
  if (preset == "sc2000-ood") return gen_sc({2000, 5000, 0.5, seed}, name);
  if (preset == "sc4000-ood") return gen_sc({4000, 5000, 0.5, seed}, name);
  fail(errc::config_invalid, "unknown instance preset '" + preset + "'");
}

}  // namespace ilps

#endif  // ILPS_GENERATORS_HPP_
