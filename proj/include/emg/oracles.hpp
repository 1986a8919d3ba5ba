#pragma once

// In-memory reference implementations for desk-scale inputs.

#include <cstdint>
#include <optional>
#include <vector>

#include "emg/cliques.hpp"
#include "emg/generators.hpp"
#include "emg/graph.hpp"

namespace emg::oracle {

using Path = std::vector<VertexId>;
using Clique = std::vector<VertexId>;

class DenseGraph {
 public:
  DenseGraph(std::uint64_t n, bool directed);
  static DenseGraph from(const ExternalGraph& g);
  static DenseGraph from(const gen::EdgeList& list);

  void add_arc(VertexId u, VertexId v);
  std::uint64_t n() const { return n_; }
  bool directed() const { return directed_; }
  bool has_arc(VertexId u, VertexId v) const { return matrix_[static_cast<std::size_t>(u) * n_ + v]; }
  const std::vector<VertexId>& out(VertexId u) const { return out_[u]; }
  std::uint64_t arc_count() const;
  std::vector<std::pair<VertexId, VertexId>> arcs() const;
  DenseGraph underlying_undirected() const;

 private:
  std::uint64_t n_;
  bool directed_;
  std::vector<std::vector<VertexId>> out_;  // sorted
  std::vector<bool> matrix_;
};

struct Degeneracy {
  std::uint64_t d = 0;
  std::vector<VertexId> order;
};

/// Greedy minimum-degree removal (smallest id on ties) on the underlying
/// undirected graph.
Degeneracy exact_degeneracy(const DenseGraph& g);

/// Max over v of the number of neighbors after v in `order`.
std::uint64_t forward_degree(const DenseGraph& g, const std::vector<VertexId>& order);

struct CycleSearch {
  bool exists = false;
  std::vector<Path> witnesses;  // each simple cycle once, rotated to start at its minimum
};

/// Exhaustive enumeration of simple cycles of length exactly c, stopping after
/// `limit` witnesses.
CycleSearch brute_cycles(const DenseGraph& g, std::uint64_t c, std::uint64_t limit = UINT64_MAX);

/// A simple cycle of length c through v, starting at v, if one exists.
std::optional<Path> cycle_through(const DenseGraph& g, std::uint64_t c, VertexId v);

/// Every simple directed path with exactly `len` arcs, lexicographically sorted.
std::vector<Path> all_paths(const DenseGraph& g, std::uint64_t len);

/// Checks distinct vertices, all consecutive arcs and the closing arc, and
/// length c (undirected cycles need c >= 3).
bool is_valid_cycle(const DenseGraph& g, const Path& cycle, std::uint64_t c);

/// Bron-Kerbosch with Tomita pivoting. Cliques sorted internally and as a list;
/// the empty graph has none.
std::vector<Clique> classic_bron_kerbosch(const DenseGraph& g);

bool is_clique(const DenseGraph& g, const Clique& c);
bool is_maximal_clique(const DenseGraph& g, const Clique& c);

/// H_{P,X} from its definition: every arc (a, b) of G with a, b in P u X and
/// one of them in P, sorted by (x, y).
std::vector<HArc> h_subgraph(const DenseGraph& g, const std::vector<VertexId>& p, const std::vector<VertexId>& x);

}  // namespace emg::oracle
