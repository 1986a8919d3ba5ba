#pragma once

#include <cstdint>
#include <vector>

#include "emg/graph.hpp"

namespace emg {

struct DegeneracyOrdering {
  em::Run<VertexId> order;  // vertex ids by rank
  double epsilon = 1.0;
  std::uint64_t certified_bound = 0;  // max number of later neighbors
  std::vector<std::uint64_t> batches;  // vertices removed per iteration
};

/// max(1, floor(n * epsilon / (2 + epsilon))) for n > 0.
std::uint64_t batch_size(std::uint64_t n, double epsilon);

/// The batch_size(n, epsilon) live vertices that come first by (degree, id),
/// returned sorted by id.
VertexSet small_vertices(const ExternalGraph& g, double epsilon);

/// Repeatedly removes small_vertices and appends them to the ordering until
/// the graph is empty. Directed input is ordered by its underlying undirected
/// graph. The input is left untouched.
DegeneracyOrdering approx_degeneracy_order(const ExternalGraph& g, double epsilon = 1.0);

/// Max over v of the number of neighbors ranked after v, for the underlying
/// undirected graph.
std::uint64_t verify_ordering(const ExternalGraph& g, const em::Run<VertexId>& order);

}  // namespace emg
