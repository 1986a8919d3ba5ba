#pragma once

// Synthetic graph models. Edges are staged in process memory as input and
// become an ExternalGraph through materialize().

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "emg/graph.hpp"

namespace emg::gen {

struct EdgeList {
  std::uint64_t n = 0;
  bool directed = false;
  std::vector<std::pair<VertexId, VertexId>> edges;
};

/// G(n, m): m distinct edges drawn uniformly. Directed when `directed`, in
/// which case m may reach n(n-1).
EdgeList erdos_renyi(std::uint64_t n, std::uint64_t m, std::uint64_t seed, bool directed = false);
/// Barabasi-Albert growth: a clique on m0 + 1 vertices, then every new vertex
/// attaches to m0 distinct earlier vertices chosen proportionally to degree.
EdgeList preferential(std::uint64_t n, std::uint64_t m0, std::uint64_t seed);
/// Uniform random labeled tree (Pruefer sequence).
EdgeList random_tree(std::uint64_t n, std::uint64_t seed);

EdgeList petersen();
EdgeList cycle(std::uint64_t c, bool directed = false);
EdgeList path(std::uint64_t n, bool directed = false);
EdgeList complete(std::uint64_t k);
EdgeList complete_bipartite(std::uint64_t a, std::uint64_t b);
EdgeList complete_multipartite(const std::vector<std::uint64_t>& parts);
EdgeList grid(std::uint64_t rows, std::uint64_t cols);
EdgeList star(std::uint64_t leaves);
EdgeList empty(std::uint64_t n);

ExternalGraph materialize(em::Storage& storage, const EdgeList& list);

/// Named model lookup for the command line: petersen, cycle, path, complete,
/// complete_bipartite, grid, star, empty, tree, erdos_renyi, preferential.
/// `a` and `b` are the model's size parameters.
EdgeList by_name(const std::string& model, std::uint64_t a, std::uint64_t b, std::uint64_t seed, bool directed);

}  // namespace emg::gen
