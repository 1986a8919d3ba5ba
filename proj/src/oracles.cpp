#include "emg/oracles.hpp"

#include <algorithm>
#include <set>

namespace emg::oracle {

DenseGraph::DenseGraph(std::uint64_t n, bool directed)
    : n_(n), directed_(directed), out_(n), matrix_(static_cast<std::size_t>(n * n), false) {}

DenseGraph DenseGraph::from(const ExternalGraph& g) {
  DenseGraph d(g.n, g.directed);
  em::for_each(g.arcs, [&](const Arc& a) { d.add_arc(a.from, a.to); });
  return d;
}

DenseGraph DenseGraph::from(const gen::EdgeList& list) {
  DenseGraph d(list.n, list.directed);
  for (const auto& [u, v] : list.edges) {
    if (u == v) continue;
    d.add_arc(u, v);
    if (!list.directed) d.add_arc(v, u);
  }
  return d;
}

void DenseGraph::add_arc(VertexId u, VertexId v) {
  if (u >= n_ || v >= n_) throw RangeError("arc endpoint out of range");
  if (u == v || has_arc(u, v)) return;
  matrix_[static_cast<std::size_t>(u) * n_ + v] = true;
  auto& list = out_[u];
  list.insert(std::lower_bound(list.begin(), list.end(), v), v);
}

std::uint64_t DenseGraph::arc_count() const {
  std::uint64_t m = 0;
  for (const auto& list : out_) m += list.size();
  return m;
}

std::vector<std::pair<VertexId, VertexId>> DenseGraph::arcs() const {
  std::vector<std::pair<VertexId, VertexId>> result;
  for (VertexId u = 0; u < n_; ++u)
    for (auto v : out_[u]) result.emplace_back(u, v);
  return result;
}

DenseGraph DenseGraph::underlying_undirected() const {
  DenseGraph d(n_, false);
  for (VertexId u = 0; u < n_; ++u) {
    for (auto v : out_[u]) {
      d.add_arc(u, v);
      d.add_arc(v, u);
    }
  }
  return d;
}

Degeneracy exact_degeneracy(const DenseGraph& graph) {
  const auto g = graph.directed() ? graph.underlying_undirected() : graph;
  Degeneracy result;
  std::vector<std::uint64_t> degree(g.n());
  std::set<std::pair<std::uint64_t, VertexId>> queue;
  for (VertexId v = 0; v < g.n(); ++v) {
    degree[v] = g.out(v).size();
    queue.insert({degree[v], v});
  }
  std::vector<bool> removed(g.n(), false);
  while (!queue.empty()) {
    const auto [deg, v] = *queue.begin();
    queue.erase(queue.begin());
    result.d = std::max(result.d, deg);
    result.order.push_back(v);
    removed[v] = true;
    for (auto w : g.out(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      queue.insert({--degree[w], w});
    }
  }
  return result;
}

std::uint64_t forward_degree(const DenseGraph& graph, const std::vector<VertexId>& order) {
  const auto g = graph.directed() ? graph.underlying_undirected() : graph;
  std::vector<std::uint64_t> rank(g.n());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::uint64_t best = 0;
  for (VertexId v = 0; v < g.n(); ++v) {
    std::uint64_t later = 0;
    for (auto w : g.out(v))
      if (rank[w] > rank[v]) ++later;
    best = std::max(best, later);
  }
  return best;
}

namespace {

struct CycleDfs {
  const DenseGraph& g;
  std::uint64_t c;
  std::uint64_t limit;
  Path path;
  std::vector<bool> on_path;
  std::vector<Path>* out;

  // Extends cycles whose minimum vertex is path[0].
  void extend() {
    if (out->size() >= limit) return;
    const auto u = path.back();
    if (path.size() == c) {
      if (!g.has_arc(u, path[0])) return;
      if (!g.directed() && path[1] > path.back()) return;  // each undirected cycle in one direction
      out->push_back(path);
      return;
    }
    for (auto w : g.out(u)) {
      if (w <= path[0] || on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      extend();
      path.pop_back();
      on_path[w] = false;
    }
  }
};

}  // namespace

CycleSearch brute_cycles(const DenseGraph& g, std::uint64_t c, std::uint64_t limit) {
  CycleSearch result;
  if (c < (g.directed() ? 2u : 3u) || c > g.n()) return result;
  CycleDfs dfs{g, c, limit, {}, std::vector<bool>(g.n(), false), &result.witnesses};
  for (VertexId s = 0; s < g.n() && result.witnesses.size() < limit; ++s) {
    dfs.path = {s};
    dfs.on_path[s] = true;
    dfs.extend();
    dfs.on_path[s] = false;
  }
  result.exists = !result.witnesses.empty();
  return result;
}

std::optional<Path> cycle_through(const DenseGraph& g, std::uint64_t c, VertexId v) {
  if (c < (g.directed() ? 2u : 3u) || c > g.n()) return std::nullopt;
  Path path{v};
  std::vector<bool> on_path(g.n(), false);
  on_path[v] = true;
  std::optional<Path> found;
  auto go = [&](auto&& self) -> void {
    if (found) return;
    const auto u = path.back();
    if (path.size() == c) {
      if (g.has_arc(u, v)) found = path;
      return;
    }
    for (auto w : g.out(u)) {
      if (on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      self(self);
      path.pop_back();
      on_path[w] = false;
      if (found) return;
    }
  };
  go(go);
  return found;
}

std::vector<Path> all_paths(const DenseGraph& g, std::uint64_t len) {
  std::vector<Path> result;
  Path path;
  std::vector<bool> on_path(g.n(), false);
  auto go = [&](auto&& self) -> void {
    if (path.size() == len + 1) {
      result.push_back(path);
      return;
    }
    for (auto w : g.out(path.back())) {
      if (on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      self(self);
      path.pop_back();
      on_path[w] = false;
    }
  };
  for (VertexId s = 0; s < g.n(); ++s) {
    path = {s};
    on_path[s] = true;
    go(go);
    on_path[s] = false;
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool is_valid_cycle(const DenseGraph& g, const Path& cycle, std::uint64_t c) {
  if (cycle.size() != c || c < (g.directed() ? 2u : 3u)) return false;
  std::set<VertexId> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != c) return false;
  for (std::size_t i = 0; i < c; ++i) {
    const auto u = cycle[i];
    const auto v = cycle[(i + 1) % c];
    if (u >= g.n() || v >= g.n() || !g.has_arc(u, v)) return false;
  }
  return true;
}

std::vector<Clique> classic_bron_kerbosch(const DenseGraph& graph) {
  if (graph.directed()) throw PreconditionError("cliques need an undirected graph");
  const auto& g = graph;
  std::vector<Clique> cliques;
  Clique r;
  auto neighbors_in = [&](VertexId u, const std::vector<VertexId>& set) {
    std::vector<VertexId> out;
    for (auto x : set)
      if (g.has_arc(u, x)) out.push_back(x);
    return out;
  };
  auto go = [&](auto&& self, std::vector<VertexId> p, std::vector<VertexId> x) -> void {
    if (p.empty()) {
      if (x.empty() && !r.empty()) {
        auto c = r;
        std::sort(c.begin(), c.end());
        cliques.push_back(std::move(c));
      }
      return;
    }
    VertexId pivot = p[0];
    std::size_t best = 0;
    for (const auto* set : {&p, &x}) {
      for (auto u : *set) {
        const auto count = neighbors_in(u, p).size();
        if (count > best || (count == best && u < pivot)) {
          best = count;
          pivot = u;
        }
      }
    }
    std::vector<VertexId> branch;
    for (auto v : p)
      if (!g.has_arc(pivot, v)) branch.push_back(v);
    for (auto v : branch) {
      r.push_back(v);
      self(self, neighbors_in(v, p), neighbors_in(v, x));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  std::vector<VertexId> all(g.n());
  for (VertexId v = 0; v < g.n(); ++v) all[v] = v;
  go(go, all, {});
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

bool is_clique(const DenseGraph& g, const Clique& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j] || !g.has_arc(c[i], c[j])) return false;
  return true;
}

bool is_maximal_clique(const DenseGraph& g, const Clique& c) {
  if (!is_clique(g, c)) return false;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (std::find(c.begin(), c.end(), v) != c.end()) continue;
    bool all = true;
    for (auto x : c) all = all && g.has_arc(v, x);
    if (all) return false;
  }
  return true;
}

std::vector<HArc> h_subgraph(const DenseGraph& g, const std::vector<VertexId>& p, const std::vector<VertexId>& x) {
  std::set<VertexId> in_p(p.begin(), p.end());
  std::vector<VertexId> all(p);
  all.insert(all.end(), x.begin(), x.end());
  std::sort(all.begin(), all.end());
  std::vector<HArc> out;
  for (auto a : all) {
    for (auto b : all) {
      if (a == b || !g.has_arc(a, b)) continue;
      const std::uint8_t a_in = in_p.count(a), b_in = in_p.count(b);
      if (a_in || b_in) out.push_back({a, b, a_in, b_in});
    }
  }
  return out;
}

}  // namespace emg::oracle
