#include "emg/generators.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_set>

namespace emg::gen {

namespace {

void require_ids(std::uint64_t n) {
  if (n > std::uint64_t{kMaxVertexId} + 1) throw RangeError("vertex count exceeds the id range");
}

}  // namespace

EdgeList erdos_renyi(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed) {
  require_ids(n);
  const std::uint64_t pairs = directed ? n * (n == 0 ? 0 : n - 1) : n * (n == 0 ? 0 : n - 1) / 2;
  if (m > pairs) throw RangeError("edge count " + std::to_string(m) + " exceeds " + std::to_string(pairs));
  EdgeList out{n, directed, {}};
  out.edges.reserve(m);
  std::mt19937_64 rng(seed);
  auto decode = [&](std::uint64_t code) {
    auto u = static_cast<VertexId>(code / n);
    auto v = static_cast<VertexId>(code % n);
    return std::pair{u, v};
  };
  if (m <= pairs / 2) {
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::unordered_set<std::uint64_t> seen;
    while (out.edges.size() < m) {
      auto u = pick(rng);
      auto v = pick(rng);
      if (u == v) continue;
      if (!directed && u > v) std::swap(u, v);
      if (seen.insert(u * n + v).second) out.edges.push_back(decode(u * n + v));
    }
  } else {
    std::vector<std::uint64_t> all;
    all.reserve(pairs);
    for (std::uint64_t u = 0; u < n; ++u) {
      for (std::uint64_t v = directed ? 0 : u + 1; v < n; ++v) {
        if (u != v) all.push_back(u * n + v);
      }
    }
    for (std::uint64_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
      out.edges.push_back(decode(all[i]));
    }
  }
  return out;
}

EdgeList preferential(std::uint64_t n, std::uint64_t m0, std::uint64_t seed) {
  require_ids(n);
  if (m0 < 1 || n < m0 + 1) throw RangeError("preferential attachment needs m0 >= 1 and n > m0");
  EdgeList out = complete(m0 + 1);
  out.n = n;
  std::vector<VertexId> endpoints;
  for (const auto& [u, v] : out.edges) {
    endpoints.push_back(u);
    endpoints.push_back(v);
  }
  std::mt19937_64 rng(seed);
  std::vector<VertexId> chosen;
  for (std::uint64_t t = m0 + 1; t < n; ++t) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < m0) {
      const auto target = endpoints[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (const auto target : chosen) {
      out.edges.emplace_back(target, static_cast<VertexId>(t));
      endpoints.push_back(target);
      endpoints.push_back(static_cast<VertexId>(t));
    }
  }
  return out;
}

EdgeList random_tree(std::uint64_t n, std::uint64_t seed) {
  require_ids(n);
  EdgeList out{n, false, {}};
  if (n < 2) return out;
  if (n == 2) {
    out.edges.emplace_back(0, 1);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  std::vector<VertexId> code(n - 2);
  for (auto& x : code) x = pick(rng);
  std::vector<std::uint64_t> degree(n, 1);
  for (auto x : code) ++degree[x];
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  for (auto x : code) {
    const auto leaf = leaves.top();
    leaves.pop();
    out.edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.push(x);
  }
  const auto a = leaves.top();
  leaves.pop();
  out.edges.emplace_back(a, leaves.top());
  return out;
}

EdgeList petersen() {
  EdgeList out{10, false, {}};
  for (VertexId i = 0; i < 5; ++i) {
    out.edges.emplace_back(i, (i + 1) % 5);
    out.edges.emplace_back(i, i + 5);
    out.edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return out;
}

EdgeList cycle(std::uint64_t c, bool directed) {
  require_ids(c);
  if (c < (directed ? 2u : 3u)) throw RangeError("cycle too short");
  EdgeList out{c, directed, {}};
  for (std::uint64_t i = 0; i < c; ++i) out.edges.emplace_back(i, (i + 1) % c);
  return out;
}

EdgeList path(std::uint64_t n, bool directed) {
  require_ids(n);
  EdgeList out{n, directed, {}};
  for (std::uint64_t i = 1; i < n; ++i) out.edges.emplace_back(i - 1, i);
  return out;
}

EdgeList complete(std::uint64_t k) { return complete_multipartite(std::vector<std::uint64_t>(k, 1)); }

EdgeList complete_bipartite(std::uint64_t a, std::uint64_t b) { return complete_multipartite({a, b}); }

EdgeList complete_multipartite(const std::vector<std::uint64_t>& parts) {
  const auto n = std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
  require_ids(n);
  EdgeList out{n, false, {}};
  std::vector<std::uint64_t> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) part_of.insert(part_of.end(), parts[p], p);
  for (std::uint64_t u = 0; u < n; ++u)
    for (std::uint64_t v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) out.edges.emplace_back(u, v);
  return out;
}

EdgeList grid(std::uint64_t rows, std::uint64_t cols) {
  require_ids(rows * cols);
  EdgeList out{rows * cols, false, {}};
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::uint64_t c = 0; c < cols; ++c) {
      const auto v = r * cols + c;
      if (c + 1 < cols) out.edges.emplace_back(v, v + 1);
      if (r + 1 < rows) out.edges.emplace_back(v, v + cols);
    }
  }
  return out;
}

EdgeList star(std::uint64_t leaves) {
  require_ids(leaves + 1);
  EdgeList out{leaves + 1, false, {}};
  for (std::uint64_t i = 1; i <= leaves; ++i) out.edges.emplace_back(0, i);
  return out;
}

EdgeList empty(std::uint64_t n) {
  require_ids(n);
  return {n, false, {}};
}

ExternalGraph materialize(em::Storage& storage, const EdgeList& list) {
  return graph_from_edges(storage, list.n, list.directed, list.edges);
}

EdgeList by_name(const std::string& model, std::uint64_t a, std::uint64_t b, std::uint64_t seed, bool directed) {
  EdgeList out;
  if (model == "petersen") {
    out = petersen();
  } else if (model == "cycle") {
    return cycle(a, directed);
  } else if (model == "path") {
    return path(a, directed);
  } else if (model == "complete") {
    out = complete(a);
  } else if (model == "complete_bipartite") {
    out = complete_bipartite(a, b);
  } else if (model == "grid") {
    out = grid(a, b);
  } else if (model == "star") {
    out = star(a);
  } else if (model == "empty") {
    out = empty(a);
  } else if (model == "tree") {
    out = random_tree(a, seed);
  } else if (model == "erdos_renyi") {
    return erdos_renyi(a, b, seed, directed);
  } else if (model == "preferential") {
    out = preferential(a, b, seed);
  } else {
    throw ConfigError("unknown graph model '" + model + "'");
  }
  if (directed) throw ConfigError("model '" + model + "' is undirected only");
  return out;
}

}  // namespace emg::gen
