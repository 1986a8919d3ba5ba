#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <vector>

#include "emg/emio.hpp"
#include "emg/sort.hpp"

namespace emg {

struct Arc {
  VertexId from;
  VertexId to;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct ByDestination {
  bool operator()(const Arc& a, const Arc& b) const {
    return a.to != b.to ? a.to < b.to : a.from < b.from;
  }
};

/// Edge-list graph on simulated storage.
///
/// `vertices` holds the live vertex ids in increasing order; removed vertices
/// drop out of it while `n` keeps bounding the id space. `arcs` is sorted
/// lexicographically, free of duplicates and self-loops. Undirected graphs
/// store each edge as both arcs.
struct ExternalGraph {
  std::uint64_t n = 0;
  bool directed = false;
  em::Run<VertexId> vertices;
  em::Run<Arc> arcs;

  std::uint64_t vertex_count() const { return vertices.size(); }
  std::uint64_t arc_count() const { return arcs.size(); }
  // Each undirected edge once; arcs for directed graphs.
  std::uint64_t edge_count() const { return directed ? arcs.size() : arcs.size() / 2; }
};

/// Strictly increasing vertex ids.
using VertexSet = em::Run<VertexId>;

struct DegreeEntry {
  std::uint64_t degree;
  VertexId vertex;
  friend auto operator<=>(const DegreeEntry&, const DegreeEntry&) = default;
};

struct LoadResult {
  ExternalGraph graph;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
};

/// Parses whitespace-separated id pairs. '#' starts a comment line; a comment
/// of the form "# n=<count>" declares the vertex count.
LoadResult load_edge_list(std::istream& in, bool directed, em::Storage& storage);

/// Builds a graph from arcs in any order. Undirected input is symmetrized.
LoadResult build_graph(em::Storage& storage, std::uint64_t n, bool directed, const em::Run<Arc>& raw_arcs);
ExternalGraph graph_from_edges(em::Storage& storage, std::uint64_t n, bool directed,
                               const std::vector<std::pair<VertexId, VertexId>>& edges);

em::Run<VertexId> iota_run(em::Storage& storage, std::uint64_t n);

/// One (degree, vertex) pair per live vertex, in vertex order. Degree is the
/// out-degree, which for undirected graphs is the degree.
em::Run<DegreeEntry> compute_degrees(const ExternalGraph& g);

/// G minus S and every arc touching S, by tombstone sort.
ExternalGraph remove_vertices(const ExternalGraph& g, const VertexSet& s);

/// Renames every arc (L[i], L[j]) to (i, j). `order` lists vertex ids by rank.
ExternalGraph reorder_graph(const ExternalGraph& g, const em::Run<VertexId>& order);

/// Underlying undirected graph of a directed graph; identity on undirected input.
ExternalGraph underlying_undirected(const ExternalGraph& g);

/// Graph with every arc reversed.
ExternalGraph transpose(const ExternalGraph& g);

/// Checks that `order` is a permutation of 0..n-1; throws PreconditionError otherwise.
void require_permutation(const em::Run<VertexId>& order, std::uint64_t n);

/// Maximum of compute_degrees over live vertices.
std::uint64_t max_degree(const ExternalGraph& g);

}  // namespace emg
